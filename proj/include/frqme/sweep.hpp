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

#include "frqme/transport.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace frqme {

struct GridSpec {
  std::vector<double> omega1_values;  // rad/s
  std::vector<double> omegaD_values;  // rad/s
  std::vector<double> tauc_values;    // s
  TransportSettings base;             // chain, bath, regime held fixed
  bool scaled = true;

  void validate() const {
    auto check = [](const std::vector<double>& v, const char* name) {
      if (v.empty()) throw std::invalid_argument(std::string("grid: ") + name + " is empty");
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(v[i] > 0.0) || !std::isfinite(v[i]))
          throw std::invalid_argument(std::string("grid: ") + name + " values must be positive and finite");
        if (i > 0 && !(v[i] > v[i - 1]))
          throw std::invalid_argument(std::string("grid: ") + name + " must be strictly increasing");
      }
    };
    check(omega1_values, "omega1");
    check(omegaD_values, "omegaD");
    check(tauc_values, "tau_c");
  }

  std::size_t size() const { return omega1_values.size() * omegaD_values.size() * tauc_values.size(); }
};

/// n log-spaced values from lo to hi inclusive.
inline std::vector<double> log_space(double lo, double hi, std::size_t n) {
  if (n == 0 || !(lo > 0.0) || !(hi >= lo)) throw std::invalid_argument("log_space: bad range");
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = lo;
    return v;
  }
  const double a = std::log10(lo), b = std::log10(hi);
  for (std::size_t i = 0; i < n; ++i) v[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  v.front() = lo;
  v.back() = hi;
  return v;
}

struct SweepRecord {
  double omega1 = 0.0, omegaD = 0.0, tauc = 0.0;
  double omega1_scaled = 0.0, omegaD_scaled = 0.0, tauc_scaled = 0.0;
  double fidelity = std::numeric_limits<double>::quiet_NaN();
  double concurrence_23 = std::numeric_limits<double>::quiet_NaN();
  double efficiency = std::numeric_limits<double>::quiet_NaN();
  std::string status = "ok";
  double wall_time = 0.0;  // s; never written to tables

  bool ok() const { return status == "ok"; }
};

/// Settings of grid point (i1, iD, it). Couplings are rescaled so that 2 pi J13 = omegaD.
inline TransportSettings point_settings(const GridSpec& g, std::size_t i1, std::size_t iD, std::size_t it) {
  TransportSettings s = g.base;
  s.omega1 = g.omega1_values[i1];
  s.bath.tau_c = g.tauc_values[it];
  s.bath.kappa.reset();
  const double j13 = g.base.chain.coupling_hz(0, 2);
  if (!(j13 > 0.0)) throw std::invalid_argument("grid: base chain needs a (1,3) coupling");
  const double scale = g.omegaD_values[iD] / (2.0 * PI * j13);
  for (auto& c : s.chain.couplings) c.J_hz *= scale;
  return s;
}

namespace detail {

inline std::string sanitize_status(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ';';
  return "error: " + s;
}

}  // namespace detail

inline SweepRecord evaluate_point(const GridSpec& g, const FrameSettings& frame, std::size_t i1, std::size_t iD,
                                  std::size_t it) {
  SweepRecord r;
  r.omega1 = g.omega1_values[i1];
  r.omegaD = g.omegaD_values[iD];
  r.tauc = g.tauc_values[it];
  const double wse = g.base.bath.omega_se;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  r.omega1_scaled = wse > 0 ? r.omega1 / wse : nan;
  r.omegaD_scaled = wse > 0 ? r.omegaD / wse : nan;
  r.tauc_scaled = r.tauc * wse;
  const auto start = std::chrono::steady_clock::now();
  try {
    TransportOptions opt;
    opt.frame = frame;
    const auto res = run_transport(point_settings(g, i1, iD, it), opt);
    r.fidelity = res.report.fidelity;
    r.concurrence_23 = res.report.concurrence_23;
    r.efficiency = res.report.efficiency;
    if (!std::isfinite(r.fidelity) || !std::isfinite(r.concurrence_23) || !std::isfinite(r.efficiency)) {
      r.fidelity = r.concurrence_23 = r.efficiency = nan;
      r.status = "error: non-finite metrics";
    }
  } catch (const std::exception& e) {
    r.status = detail::sanitize_status(e.what());
  }
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

/// Frame resolved once at the base settings and held fixed across the grid.
inline FrameSettings sweep_frame(const GridSpec& g) { return g.base.frame(); }

/// Row-major (omega1, omegaD, tau_c) order regardless of worker count.
inline std::vector<SweepRecord> run_sweep(const GridSpec& g, unsigned workers = 1) {
  g.validate();
  const FrameSettings frame = sweep_frame(g);
  const std::size_t nD = g.omegaD_values.size(), nT = g.tauc_values.size();
  std::vector<SweepRecord> out(g.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t idx = next++; idx < out.size(); idx = next++) {
      const std::size_t i1 = idx / (nD * nT), iD = (idx / nT) % nD, it = idx % nT;
      out[idx] = evaluate_point(g, frame, i1, iD, it);
    }
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(out.size())));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return out;
}

/// Best fidelity; ties go to the smaller omega1, then the smaller tau_c.
inline const SweepRecord& argmax_report(const std::vector<SweepRecord>& recs) {
  const SweepRecord* best = nullptr;
  for (const auto& r : recs) {
    if (!r.ok()) continue;
    if (!best || r.fidelity > best->fidelity ||
        (r.fidelity == best->fidelity &&
         (r.omega1 < best->omega1 || (r.omega1 == best->omega1 && r.tauc < best->tauc))))
      best = &r;
  }
  if (!best) throw std::runtime_error("argmax_report: every sweep point failed");
  return *best;
}

inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline constexpr const char* kSweepHeader =
    "omega1_rad_s,omegaD_rad_s,tauc_s,omega1_over_omegaSE,omegaD_over_omegaSE,tauc_times_omegaSE,"
    "fidelity,concurrence_23,efficiency,status";

/// Comma-separated table; an optional leading '#' line carries the resolved config.
inline void write_sweep_table(std::ostream& os, const std::vector<SweepRecord>& recs,
                              const std::string& config_line = {}) {
  if (!config_line.empty()) os << "# config " << config_line << '\n';
  os << kSweepHeader << '\n';
  for (const auto& r : recs) {
    os << format_number(r.omega1) << ',' << format_number(r.omegaD) << ',' << format_number(r.tauc) << ','
       << format_number(r.omega1_scaled) << ',' << format_number(r.omegaD_scaled) << ','
       << format_number(r.tauc_scaled) << ',' << format_number(r.fidelity) << ','
       << format_number(r.concurrence_23) << ',' << format_number(r.efficiency) << ',' << r.status << '\n';
  }
}

}  // namespace frqme
