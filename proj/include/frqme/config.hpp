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

#pragma once

#include "frqme/pulse_program.hpp"
#include "frqme/sweep.hpp"
#include "frqme/transport.hpp"

#include <json.hpp>

#include <cctype>
#include <cstdint>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace frqme {

using json = nlohmann::json;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// unit expressions: "2*pi*150 kHz", "0.1/(2*pi*100e3) s"

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(std::string s) : s_(std::move(s)) {}

  double parse() {
    const double v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  std::string s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& m) const { throw ConfigError("bad expression '" + s_ + "': " + m); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  double expr() {
    double v = term();
    for (;;) {
      if (eat('+')) v += term();
      else if (eat('-')) v -= term();
      else return v;
    }
  }

  double term() {
    double v = power();
    for (;;) {
      if (eat('*')) v *= power();
      else if (eat('/')) v /= power();
      else return v;
    }
  }

  double power() {
    const double base = unary();
    if (eat('^')) return std::pow(base, power());
    return base;
  }

  double unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return primary();
  }

  double primary() {
    skip();
    if (eat('(')) {
      const double v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (s_.compare(pos_, 2, "pi") == 0) {
      pos_ += 2;
      return PI;
    }
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("expected a number");
    pos_ += static_cast<std::size_t>(end - begin);
    return v;
  }
};

enum class Dim { Frequency, Time, Angle, Hertz, Kappa };

inline const std::map<std::string, double>& unit_table(Dim d) {
  static const std::map<std::string, double> freq{{"rad/s", 1.0}, {"1/s", 1.0}, {"Hz", 1.0},
                                                  {"kHz", 1e3},   {"MHz", 1e6}, {"GHz", 1e9}};
  static const std::map<std::string, double> time{{"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}, {"ns", 1e-9}, {"ps", 1e-12}};
  static const std::map<std::string, double> angle{{"rad", 1.0}, {"deg", PI / 180.0}};
  static const std::map<std::string, double> hz{{"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}, {"GHz", 1e9}};
  static const std::map<std::string, double> kappa{{"s^-1/2", 1.0}, {"1/sqrt(s)", 1.0}};
  switch (d) {
    case Dim::Frequency: return freq;
    case Dim::Time: return time;
    case Dim::Angle: return angle;
    case Dim::Hertz: return hz;
    case Dim::Kappa: return kappa;
  }
  return freq;
}

inline std::string unit_list(Dim d) {
  std::string out;
  for (const auto& [k, v] : unit_table(d)) out += (out.empty() ? "" : ", ") + k;
  return out;
}

}  // namespace detail

/// Evaluate "<expression> <unit>" to SI. Angular frequencies carry their 2 pi explicitly,
/// so "2*pi*150 kHz" is 2 pi x 1.5e5 rad/s.
inline double parse_quantity(const json& value, detail::Dim dim, const std::string& field) {
  if (!value.is_string())
    throw ConfigError(field + ": expected a string with a unit (one of " + detail::unit_list(dim) + ")");
  std::string s = value.get<std::string>();
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  const auto cut = s.find_last_of(" \t");
  if (cut == std::string::npos)
    throw ConfigError(field + ": missing unit in '" + s + "' (expected one of " + detail::unit_list(dim) + ")");
  const std::string unit = s.substr(cut + 1);
  const auto& table = detail::unit_table(dim);
  const auto it = table.find(unit);
  if (it == table.end())
    throw ConfigError(field + ": unknown unit '" + unit + "' (expected one of " + detail::unit_list(dim) + ")");
  double v = 0.0;
  try {
    v = detail::ExprParser(s.substr(0, cut)).parse();
  } catch (const ConfigError& e) {
    throw ConfigError(field + ": " + e.what());
  }
  if (!std::isfinite(v)) throw ConfigError(field + ": value is not finite");
  return v * it->second;
}

inline double parse_frequency(const json& v, const std::string& f) { return parse_quantity(v, detail::Dim::Frequency, f); }
inline double parse_time(const json& v, const std::string& f) { return parse_quantity(v, detail::Dim::Time, f); }

// ---------------------------------------------------------------------------

struct RunConfig {
  std::string name = "run";
  TransportSettings settings;
  std::optional<double> sample_dt;
  std::optional<GridSpec> grid;
  unsigned workers = 1;
  std::uint64_t seed = 1;
  json raw;
};

namespace detail {

inline const json& require(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) throw ConfigError(path + "." + key + ": missing field");
  return obj.at(key);
}

inline std::vector<double> parse_axis(const json& ax, Dim dim, const std::string& path) {
  std::vector<double> out;
  if (ax.is_object() && ax.contains("values")) {
    const auto& vals = ax.at("values");
    if (!vals.is_array()) throw ConfigError(path + ".values: expected a list");
    for (std::size_t i = 0; i < vals.size(); ++i)
      out.push_back(parse_quantity(vals[i], dim, path + ".values[" + std::to_string(i) + "]"));
  } else if (ax.is_object() && ax.contains("from")) {
    const double lo = parse_quantity(ax.at("from"), dim, path + ".from");
    const double hi = parse_quantity(require(ax, "to", path), dim, path + ".to");
    const auto& np = require(ax, "points", path);
    if (!np.is_number_integer() || np.get<long long>() < 1) throw ConfigError(path + ".points: expected a positive integer");
    const std::string spacing = ax.value("spacing", std::string("log"));
    const auto n = static_cast<std::size_t>(np.get<long long>());
    if (!(lo > 0.0) || !(hi >= lo)) throw ConfigError(path + ": need 0 < from <= to");
    if (spacing == "log") {
      out = log_space(lo, hi, n);
    } else if (spacing == "linear") {
      for (std::size_t i = 0; i < n; ++i)
        out.push_back(n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
    } else {
      throw ConfigError(path + ".spacing: expected 'log' or 'linear'");
    }
  } else {
    out.push_back(parse_quantity(ax, dim, path));
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!(out[i] > 0.0)) throw ConfigError(path + ": grid values must be > 0");
    if (i > 0 && !(out[i] > out[i - 1])) throw ConfigError(path + ": grid values must be strictly increasing");
  }
  return out;
}

}  // namespace detail

inline RunConfig parse_config(const json& j) {
  using detail::Dim;
  using detail::require;
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  RunConfig rc;
  rc.raw = j;
  rc.name = j.value("name", std::string("run"));
  auto& s = rc.settings;

  const json& chain = require(j, "chain", "config");
  const json& larmor = require(chain, "larmor", "chain");
  if (!larmor.is_array() || larmor.empty()) throw ConfigError("chain.larmor: expected a nonempty list");
  for (std::size_t i = 0; i < larmor.size(); ++i)
    s.chain.larmor.push_back(parse_frequency(larmor[i], "chain.larmor[" + std::to_string(i) + "]"));
  if (chain.contains("couplings")) {
    const auto& cs = chain.at("couplings");
    if (!cs.is_array()) throw ConfigError("chain.couplings: expected a list");
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const std::string p = "chain.couplings[" + std::to_string(i) + "]";
      const auto& sites = require(cs[i], "sites", p);
      auto is_index = [](const json& x) { return x.is_number_integer() && x.get<long long>() >= 0; };
      if (!sites.is_array() || sites.size() != 2 || !is_index(sites[0]) || !is_index(sites[1]))
        throw ConfigError(p + ".sites: expected two site indices");
      Coupling c;
      c.a = sites[0].get<std::size_t>();
      c.b = sites[1].get<std::size_t>();
      c.J_hz = parse_quantity(require(cs[i], "J", p), Dim::Hertz, p + ".J");
      s.chain.couplings.push_back(c);
    }
  }
  s.chain.geometry = chain.value("geometry", std::string("z"));
  try {
    s.chain.validate();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }

  const json& bath = require(j, "bath", "config");
  s.bath.omega_se = parse_frequency(require(bath, "omega_se", "bath"), "bath.omega_se");
  const bool has_tau = bath.contains("tau_c"), has_kappa = bath.contains("kappa");
  if (!has_tau && !has_kappa) throw ConfigError("bath.tau_c: missing field (or give bath.kappa)");
  if (has_kappa) s.bath.kappa = parse_quantity(bath.at("kappa"), Dim::Kappa, "bath.kappa");
  if (has_tau) s.bath.tau_c = parse_time(bath.at("tau_c"), "bath.tau_c");
  else s.bath.tau_c = 2.0 / (*s.bath.kappa * *s.bath.kappa);
  if (!(s.bath.tau_c > 0.0)) throw ConfigError("bath.tau_c: must be > 0");
  try {
    s.bath.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("bath: ") + e.what());
  }

  const json& drive = require(j, "drive", "config");
  s.omega1 = parse_frequency(require(drive, "omega1", "drive"), "drive.omega1");
  if (!(s.omega1 > 0.0)) throw ConfigError("drive.omega1: must be > 0");
  s.hard_pulses = drive.value("hard_pulses", false);

  if (j.contains("regime")) {
    const auto& r = j.at("regime");
    try {
      s.regime = secular_kind_from_string(r.value("mode", std::string("Auto")));
    } catch (const std::exception& e) {
      throw ConfigError(std::string("regime.mode: ") + e.what());
    }
    if (r.contains("dt") && !r.at("dt").is_null()) {
      s.coarse_grain_dt = parse_time(r.at("dt"), "regime.dt");
      if (!(*s.coarse_grain_dt > 0.0)) throw ConfigError("regime.dt: must be > 0");
    }
  }
  if (j.contains("protocol")) {
    const auto& p = j.at("protocol");
    const std::string name = p.value("name", std::string("transport"));
    if (name != "transport") throw ConfigError("protocol.name: only 'transport' is supported");
    s.refocus = p.value("refocus", true);
  }
  if (j.contains("sample_dt")) rc.sample_dt = parse_time(j.at("sample_dt"), "sample_dt");
  if (j.contains("workers")) {
    if (!j.at("workers").is_number_integer() || j.at("workers").get<long long>() < 1)
      throw ConfigError("workers: expected a positive integer");
    rc.workers = j.at("workers").get<unsigned>();
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_integer() || j.at("seed").get<long long>() < 0) throw ConfigError("seed: expected a non-negative integer");
    rc.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("grid") && !j.at("grid").is_null()) {
    const auto& g = j.at("grid");
    GridSpec gs;
    gs.base = s;
    gs.omega1_values = g.contains("omega1") ? detail::parse_axis(g.at("omega1"), Dim::Frequency, "grid.omega1")
                                            : std::vector<double>{s.omega1};
    gs.omegaD_values = g.contains("omegaD")
                           ? detail::parse_axis(g.at("omegaD"), Dim::Frequency, "grid.omegaD")
                           : std::vector<double>{2.0 * PI * s.chain.coupling_hz(0, 2)};
    gs.tauc_values = g.contains("tau_c") ? detail::parse_axis(g.at("tau_c"), Dim::Time, "grid.tau_c")
                                         : std::vector<double>{s.bath.tau_c};
    gs.scaled = g.value("scaled", true);
    rc.grid = gs;
  }
  try {
    (void)s.frame();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("regime: ") + e.what());
  }
  return rc;
}

/// Resolved config in SI units, after defaulting. Worker count is left out on purpose.
inline json resolved_config(const RunConfig& rc) {
  const auto& s = rc.settings;
  json c;
  c["name"] = rc.name;
  json couplings = json::array();
  for (const auto& cp : s.chain.couplings) couplings.push_back({{"sites", {cp.a, cp.b}}, {"J_hz", cp.J_hz}});
  c["chain"] = {{"larmor_rad_s", s.chain.larmor}, {"couplings", couplings}, {"geometry", s.chain.geometry}};
  c["bath"] = {{"omega_se_rad_s", s.bath.omega_se}, {"tau_c_s", s.bath.tau_c}};
  c["drive"] = {{"omega1_rad_s", s.omega1}, {"hard_pulses", s.hard_pulses}};
  const FrameSettings fr = s.frame();
  json modes = json::array();
  for (const auto& [pair, kind] : fr.modes) modes.push_back({{"sites", {pair.first, pair.second}}, {"mode", to_string(kind)}});
  c["regime"] = {{"mode", to_string(s.regime)}, {"dt_s", s.resolved_dt()}, {"secular_cutoff_rad_s", fr.secular_cutoff},
                 {"resolved", modes}};
  c["protocol"] = {{"name", "transport"}, {"refocus", s.refocus}};
  if (rc.sample_dt) c["sample_dt_s"] = *rc.sample_dt;
  c["seed"] = rc.seed;
  if (rc.grid) {
    c["grid"] = {{"omega1_rad_s", rc.grid->omega1_values},
                 {"omegaD_rad_s", rc.grid->omegaD_values},
                 {"tau_c_s", rc.grid->tauc_values},
                 {"scaled", rc.grid->scaled}};
  }
  return c;
}

// ---------------------------------------------------------------------------
// presets matching the figure captions

inline json preset_config(const std::string& name) {
  json base = {
      {"bath", {{"omega_se", "2*pi*100 kHz"}, {"tau_c", "0.1/(2*pi*100) ms"}}},
      {"drive", {{"omega1", "2*pi*150 kHz"}, {"hard_pulses", false}}},
      {"regime", {{"mode", "Auto"}}},
      {"protocol", {{"name", "transport"}, {"refocus", true}}},
      {"seed", 1},
      {"grid",
       {{"omega1", {{"from", "2*pi*10 kHz"}, {"to", "2*pi*1e4 kHz"}, {"points", 12}, {"spacing", "log"}}},
        {"tau_c", {{"from", "0.001/(2*pi*100) ms"}, {"to", "0.3/(2*pi*100) ms"}, {"points", 8}, {"spacing", "log"}}}}},
  };
  json couplings = json::array({{{"sites", {0, 1}}, {"J", "150 kHz"}},
                                {{"sites", {1, 2}}, {"J", "150 kHz"}},
                                {{"sites", {0, 2}}, {"J", "150 kHz"}}});
  if (name == "fig2") {
    base["name"] = "paper_fig2";
    base["chain"] = {{"larmor", {"2*pi*1e4 kHz", "2*pi*1e3 kHz", "2*pi*5e2 kHz"}}, {"couplings", couplings}};
  } else if (name == "fig3") {
    base["name"] = "paper_fig3";
    base["chain"] = {{"larmor", {"2*pi*1e4 kHz", "2*pi*1e3 kHz", "2*pi*1e4 kHz"}}, {"couplings", couplings}};
  } else {
    throw ConfigError("unknown preset '" + name + "' (expected fig2 or fig3)");
  }
  return base;
}

// ---------------------------------------------------------------------------
// pulse program documents

inline json program_to_json(const PulseProgram& p) {
  json segs = json::array();
  for (const auto& s : p.segments) {
    if (const auto* q = std::get_if<SquarePulse>(&s)) {
      json o = {{"kind", "square_pulse"},
                {"amplitude_rad_s", q->amplitude},
                {"phase_rad", q->phase},
                {"targets", q->targets},
                {"duration_s", q->duration}};
      o["carrier_rad_s"] = q->carrier ? json(*q->carrier) : json(nullptr);
      segs.push_back(o);
    } else if (const auto* d = std::get_if<Delay>(&s)) {
      segs.push_back({{"kind", "delay"}, {"duration_s", d->duration}});
    } else if (const auto* v = std::get_if<VirtualZ>(&s)) {
      segs.push_back({{"kind", "virtual_z"}, {"angle_rad", v->angle}, {"target", v->target}});
    } else if (const auto* ip = std::get_if<IdealPi>(&s)) {
      segs.push_back({{"kind", "ideal_pi"}, {"axis", std::string(1, ip->axis)}, {"target", ip->target}});
    } else if (const auto* h = std::get_if<HardPulse>(&s)) {
      segs.push_back({{"kind", "hard_pulse"}, {"angle_rad", h->angle}, {"phase_rad", h->phase}, {"targets", h->targets}});
    }
  }
  return {{"segments", segs}, {"total_duration_s", p.total_duration()}};
}

inline PulseProgram program_from_json(const json& j) {
  PulseProgram p;
  const auto& segs = detail::require(j, "segments", "program");
  if (!segs.is_array()) throw ConfigError("program.segments: expected a list");
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const auto& o = segs[i];
    const std::string path = "program.segments[" + std::to_string(i) + "]";
    const std::string kind = detail::require(o, "kind", path).get<std::string>();
    try {
      if (kind == "square_pulse") {
        SquarePulse q;
        q.amplitude = o.at("amplitude_rad_s").get<double>();
        q.phase = o.at("phase_rad").get<double>();
        q.targets = o.at("targets").get<std::vector<std::size_t>>();
        q.duration = o.at("duration_s").get<double>();
        if (o.contains("carrier_rad_s") && !o.at("carrier_rad_s").is_null()) q.carrier = o.at("carrier_rad_s").get<double>();
        p.segments.emplace_back(q);
      } else if (kind == "delay") {
        p.segments.emplace_back(Delay{o.at("duration_s").get<double>()});
      } else if (kind == "virtual_z") {
        p.segments.emplace_back(VirtualZ{o.at("angle_rad").get<double>(), o.at("target").get<std::size_t>()});
      } else if (kind == "ideal_pi") {
        const std::string ax = o.at("axis").get<std::string>();
        if (ax.size() != 1) throw ConfigError(path + ".axis: expected x, y or z");
        p.segments.emplace_back(IdealPi{ax[0], o.at("target").get<std::size_t>()});
      } else if (kind == "hard_pulse") {
        p.segments.emplace_back(HardPulse{o.at("angle_rad").get<double>(), o.at("phase_rad").get<double>(),
                                          o.at("targets").get<std::vector<std::size_t>>()});
      } else {
        throw ConfigError(path + ".kind: unknown segment kind '" + kind + "'");
      }
    } catch (const json::exception& e) {
      throw ConfigError(path + ": " + e.what());
    }
  }
  return p;
}

}  // namespace frqme
