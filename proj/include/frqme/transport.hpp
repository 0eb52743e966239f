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

#include "frqme/metrics.hpp"
#include "frqme/model.hpp"
#include "frqme/propagator.hpp"
#include "frqme/pulse_program.hpp"

#include <optional>
#include <string>
#include <vector>

namespace frqme {

/// Everything one compile -> propagate -> report run needs.
struct TransportSettings {
  ChainSpec chain;
  BathSpec bath;
  double omega1 = 0.0;        // rad/s
  bool hard_pulses = false;   // zero-duration pulses instead of square pulses of amplitude omega1
  SecularKind regime = SecularKind::Auto;
  std::optional<double> coarse_grain_dt;  // s; default sqrt(tau_c / max(w1, w_SE))
  bool refocus = true;

  double resolved_dt() const {
    if (coarse_grain_dt) return *coarse_grain_dt;
    return default_coarse_grain_dt(bath.tau_c, omega1, bath.omega_se);
  }

  FrameSettings frame() const { return resolve_frame(SecularMode{regime, resolved_dt()}, chain); }
};

struct TransportResult {
  TransferReport report;
  TransportProgram program;
  FrameSettings frame;
  Operator final_state;
  std::optional<Trajectory> trajectory;
  std::vector<std::string> warnings;
};

struct TransportOptions {
  bool record_trajectory = false;
  std::optional<double> sample_dt;
  std::optional<FrameSettings> frame;  // overrides per-run resolution (sweeps hold it fixed)
};

inline TransportResult run_transport(const TransportSettings& s, const TransportOptions& opt = {}) {
  s.chain.validate();
  s.bath.validate();
  TransportResult res;
  res.frame = opt.frame ? *opt.frame : s.frame();
  const auto key = std::make_pair(std::size_t{0}, std::size_t{2});
  const auto it = res.frame.modes.find(key);
  if (it == res.frame.modes.end()) throw std::invalid_argument("transport: chain has no (1,3) coupling");
  if (!s.hard_pulses && !(s.omega1 > 0.0)) throw std::invalid_argument("transport: omega1 must be > 0");
  res.program = transport_protocol(s.chain, it->second, s.hard_pulses ? HARD_PULSES : s.omega1, s.refocus);
  if (!s.hard_pulses) res.warnings = timescale_warnings(s.bath, s.omega1);
  else res.warnings = timescale_warnings(s.bath, 0.0);

  const auto windows = compile(res.program.program, s.chain, s.bath, res.frame);
  const Operator rho0 = projector(res.program.psi_initial);
  const Superoperator process = process_superop(windows, qubit_dim(3));
  if (opt.record_trajectory) {
    Trajectory tr = propagate(rho0, windows, opt.sample_dt);
    tr.target = res.program.psi_target;
    tr.initial_label = "(|100> - |010>)/sqrt2";
    tr.target_label = "(|001> - |010>)/sqrt2";
    res.trajectory = std::move(tr);
  }
  res.final_state = final_state(process, rho0, res.program.program.total_duration());
  res.report = report(res.final_state, process, res.program.psi_target, res.program.swap_a, res.program.swap_b);
  res.report.omega1 = s.hard_pulses ? HARD_PULSES : s.omega1;
  res.report.omegaD = 2.0 * PI * s.chain.coupling_hz(0, 2);
  res.report.tau_c = s.bath.tau_c;
  res.report.omega_se = s.bath.omega_se;
  return res;
}

}  // namespace frqme
