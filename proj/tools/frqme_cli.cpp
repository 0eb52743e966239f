// Copyright 2026 The frqme-transport Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// frqme: simulate, gate-check, sweep and validate transport runs.

#include "frqme_transport.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using frqme::json;

enum Exit : int { kOk = 0, kValidation = 1, kPhysics = 2, kRuntime = 3 };

struct Options {
  std::string config_path;
  std::string preset;
  std::string out_dir = "out";
  unsigned workers = 0;  // 0: take from config
  bool corrupt_delay = false;
};

frqme::RunConfig load(const Options& o) {
  if (o.config_path.empty() == o.preset.empty())
    throw frqme::ConfigError("give exactly one of --config or --preset");
  json j;
  if (!o.preset.empty()) {
    j = frqme::preset_config(o.preset);
  } else {
    std::ifstream in(o.config_path);
    if (!in) throw frqme::ConfigError(o.config_path + ": cannot open");
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw frqme::ConfigError(o.config_path + ": " + e.what());
    }
  }
  auto rc = frqme::parse_config(j);
  if (o.workers > 0) rc.workers = o.workers;
  return rc;
}

std::filesystem::path out_path(const Options& o, const char* name) {
  std::filesystem::create_directories(o.out_dir);
  return std::filesystem::path(o.out_dir) / name;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << text;
}

std::string fmt(double x) { return frqme::format_number(x); }

json report_json(const frqme::TransferReport& r) {
  return {{"fidelity", r.fidelity},           {"concurrence_23", r.concurrence_23}, {"efficiency", r.efficiency},
          {"omega1_rad_s", r.omega1},         {"omegaD_rad_s", r.omegaD},           {"tau_c_s", r.tau_c},
          {"omega_se_rad_s", r.omega_se}};
}

int cmd_validate(const Options& o) {
  const auto rc = load(o);
  std::cout << frqme::resolved_config(rc).dump(2) << '\n';
  for (const auto& w : frqme::timescale_warnings(rc.settings.bath, rc.settings.hard_pulses ? 0.0 : rc.settings.omega1))
    std::cerr << "warning: " << w << '\n';
  std::cout << "config ok\n";
  return kOk;
}

int cmd_simulate(const Options& o) {
  const auto rc = load(o);
  std::filesystem::create_directories(o.out_dir);
  if (rc.grid) std::cerr << "note: grid section ignored by simulate\n";
  const json cfg = frqme::resolved_config(rc);
  frqme::TransportOptions opt;
  opt.record_trajectory = true;
  opt.sample_dt = rc.sample_dt;
  const auto res = frqme::run_transport(rc.settings, opt);
  for (const auto& w : res.warnings) std::cerr << "warning: " << w << '\n';

  std::ostringstream traj;
  traj << "# config " << cfg.dump() << '\n';
  frqme::write_trajectory(traj, *res.trajectory);
  write_file(out_path(o, "trajectory.tsv"), traj.str());

  json rep = report_json(res.report);
  rep["regime"] = frqme::to_string(res.program.regime);
  rep["total_duration_s"] = res.program.program.total_duration();
  rep["clipped_states"] = res.trajectory->clipped;
  rep["min_eigenvalue"] = res.trajectory->min_eigenvalue;
  rep["program"] = frqme::program_to_json(res.program.program);
  rep["config"] = cfg;
  write_file(out_path(o, "report.json"), rep.dump(2) + "\n");

  std::cout << "regime          " << frqme::to_string(res.program.regime) << '\n'
            << "duration_s      " << fmt(res.program.program.total_duration()) << '\n'
            << "fidelity        " << fmt(res.report.fidelity) << '\n'
            << "concurrence_23  " << fmt(res.report.concurrence_23) << '\n'
            << "efficiency      " << fmt(res.report.efficiency) << '\n'
            << "wrote " << out_path(o, "trajectory.tsv").string() << ", " << out_path(o, "report.json").string() << '\n';
  return kOk;
}

int cmd_gate_check(const Options& o) {
  const auto rc = load(o);
  const auto& s = rc.settings;
  const auto frame = s.frame();
  const auto regime = frame.modes.at({0, 2});
  const double J = s.chain.coupling_hz(0, 2);
  auto prog = frqme::swap_program(regime, 0, 1, J, s.hard_pulses ? frqme::HARD_PULSES : s.omega1);
  if (o.corrupt_delay) {
    for (auto& seg : prog.segments)
      if (auto* d = std::get_if<frqme::Delay>(&seg)) {
        d->duration *= 0.5;
        break;
      }
  }
  const auto gc = frqme::gate_check(prog, regime, J);
  auto line = [](bool ok, const std::string& what) { std::cout << (ok ? "PASS  " : "FAIL  ") << what << '\n'; };
  std::cout << "regime " << frqme::to_string(regime) << ", J = " << fmt(J) << " Hz\n";
  line(gc.match, "U = e^{i phase} U_swap, max-norm deviation " + fmt(gc.max_error) + " (limit 1e-10)");
  line(gc.phase_ok, "global phase " + fmt(gc.phase / frqme::PI) + " pi (expected " + fmt(gc.expected_phase / frqme::PI) +
                        " pi)");
  line(gc.budget_ok, "delay budget " + fmt(gc.delay_budget) + " s (expected 7/(2J) = " + fmt(gc.expected_budget) + " s)");
  std::cout << (gc.passed() ? "gate-check passed\n" : "gate-check FAILED\n");
  return gc.passed() ? kOk : kPhysics;
}

int cmd_sweep(const Options& o) {
  const auto rc = load(o);
  if (!rc.grid) throw frqme::ConfigError("grid: missing section (sweep needs one)");
  std::filesystem::create_directories(o.out_dir);
  const json cfg = frqme::resolved_config(rc);
  const auto recs = frqme::run_sweep(*rc.grid, rc.workers);

  std::ostringstream table;
  frqme::write_sweep_table(table, recs, cfg.dump());
  write_file(out_path(o, "table.csv"), table.str());

  json rows = json::array();
  std::size_t failed = 0;
  for (const auto& r : recs) {
    if (!r.ok()) ++failed;
    auto num = [](double x) { return std::isfinite(x) ? json(x) : json(nullptr); };
    rows.push_back({{"omega1_rad_s", r.omega1}, {"omegaD_rad_s", r.omegaD}, {"tauc_s", r.tauc},
                    {"fidelity", num(r.fidelity)}, {"concurrence_23", num(r.concurrence_23)},
                    {"efficiency", num(r.efficiency)}, {"status", r.status}});
  }
  json summary = {{"config", cfg}, {"points", recs.size()}, {"failed", failed}, {"records", rows}};
  int code = kOk;
  try {
    const auto& best = frqme::argmax_report(recs);
    summary["argmax"] = {{"omega1_rad_s", best.omega1},          {"omegaD_rad_s", best.omegaD},
                         {"tauc_s", best.tauc},                  {"omega1_over_omegaSE", best.omega1_scaled},
                         {"omegaD_over_omegaSE", best.omegaD_scaled}, {"tauc_times_omegaSE", best.tauc_scaled},
                         {"fidelity", best.fidelity},            {"concurrence_23", best.concurrence_23},
                         {"efficiency", best.efficiency}};
    std::cout << "argmax fidelity " << fmt(best.fidelity) << " at omega1 = " << fmt(best.omega1)
              << " rad/s (" << fmt(best.omega1_scaled) << " omega_SE), omegaD = " << fmt(best.omegaD) << " rad/s ("
              << fmt(best.omegaD_scaled) << " omega_SE), tau_c = " << fmt(best.tauc) << " s ("
              << fmt(best.tauc_scaled) << " / omega_SE)\n";
  } catch (const std::runtime_error& e) {
    summary["argmax"] = nullptr;
    std::cerr << "error: " << e.what() << '\n';
    code = kRuntime;
  }
  write_file(out_path(o, "summary.json"), summary.dump(2) + "\n");
  std::cout << recs.size() << " points, " << failed << " failed; wrote " << out_path(o, "table.csv").string() << ", "
            << out_path(o, "summary.json").string() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FRQME spin-chain transport simulator"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config_path, "JSON config file");
    sub->add_option("--preset", o.preset, "Built-in config")->check(CLI::IsMember({"fig2", "fig3"}));
  };
  auto* validate = app.add_subcommand("validate", "Check a config and print it resolved to SI units");
  add_common(validate);
  auto* simulate = app.add_subcommand("simulate", "Run one transport simulation");
  add_common(simulate);
  simulate->add_option("--out", o.out_dir, "Output directory");
  auto* gate = app.add_subcommand("gate-check", "Check the SWAP sequence against U_swap");
  add_common(gate);
  gate->add_flag("--corrupt-delay", o.corrupt_delay, "Halve the first delay (negative control)")->group("");
  auto* sweep = app.add_subcommand("sweep", "Run the parameter grid");
  add_common(sweep);
  sweep->add_option("--out", o.out_dir, "Output directory");
  sweep->add_option("--workers", o.workers, "Worker threads (default: config value)")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*validate) return cmd_validate(o);
    if (*simulate) return cmd_simulate(o);
    if (*gate) return cmd_gate_check(o);
    if (*sweep) return cmd_sweep(o);
  } catch (const frqme::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kValidation;
  } catch (const frqme::PropagationError& e) {
    std::cerr << "physics check failed: " << e.what() << '\n';
    return kPhysics;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return kRuntime;
}
