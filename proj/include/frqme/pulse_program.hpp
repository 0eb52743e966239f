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

#include "frqme/frqme.hpp"
#include "frqme/model.hpp"
#include "frqme/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace frqme {

/// Pass as drive amplitude to get zero-duration (hard) pulses.
inline constexpr double HARD_PULSES = std::numeric_limits<double>::infinity();

struct SquarePulse {
  double amplitude = 0.0;  // rad/s
  double phase = 0.0;      // rad
  std::optional<double> carrier;  // rad/s; empty = resonant with each target
  std::vector<std::size_t> targets;
  double duration = 0.0;  // s
};

struct Delay {
  double duration = 0.0;
};

/// exp(-i angle Iz) on one spin, zero duration.
struct VirtualZ {
  double angle = 0.0;
  std::size_t target = 0;
};

struct IdealPi {
  char axis = 'x';  // x, y or z
  std::size_t target = 0;
};

/// exp(-i angle (cos(phase) Ix + sin(phase) Iy)) on every target, zero duration.
struct HardPulse {
  double angle = 0.0;
  double phase = 0.0;
  std::vector<std::size_t> targets;
};

using Segment = std::variant<SquarePulse, Delay, VirtualZ, IdealPi, HardPulse>;

inline double duration_of(const Segment& s) {
  if (const auto* p = std::get_if<SquarePulse>(&s)) return p->duration;
  if (const auto* d = std::get_if<Delay>(&s)) return d->duration;
  return 0.0;
}

struct PulseProgram {
  std::vector<Segment> segments;

  double total_duration() const {
    double t = 0.0;
    for (const auto& s : segments) t += duration_of(s);
    return t;
  }

  /// free-evolution content only
  double delay_budget() const {
    double t = 0.0;
    for (const auto& s : segments)
      if (const auto* d = std::get_if<Delay>(&s)) t += d->duration;
    return t;
  }

  void validate(std::size_t nsites) const {
    auto site_ok = [&](std::size_t k) {
      if (k >= nsites) throw std::out_of_range("program: target site " + std::to_string(k) + " out of range");
    };
    for (const auto& s : segments) {
      if (!(duration_of(s) >= 0.0)) throw std::invalid_argument("program: negative duration");
      if (const auto* p = std::get_if<SquarePulse>(&s)) {
        if (!(p->amplitude >= 0.0)) throw std::invalid_argument("program: negative pulse amplitude");
        for (auto k : p->targets) site_ok(k);
      } else if (const auto* v = std::get_if<VirtualZ>(&s)) {
        site_ok(v->target);
      } else if (const auto* q = std::get_if<IdealPi>(&s)) {
        site_ok(q->target);
        if (q->axis != 'x' && q->axis != 'y' && q->axis != 'z')
          throw std::invalid_argument("program: IdealPi axis must be x, y or z");
      } else if (const auto* h = std::get_if<HardPulse>(&s)) {
        for (auto k : h->targets) site_ok(k);
      }
    }
  }
};

// ---------------------------------------------------------------------------
// sequence builders

namespace detail {

inline bool is_hard(double drive_amp) { return std::isinf(drive_amp) && drive_amp > 0.0; }

// rotation by `angle` (sign folds into the phase) about the axis at `phase`
inline void push_rotation(PulseProgram& prog, double angle, double phase, std::vector<std::size_t> targets,
                          double drive_amp) {
  if (angle < 0.0) {
    angle = -angle;
    phase += PI;
  }
  if (is_hard(drive_amp)) {
    prog.segments.emplace_back(HardPulse{angle, phase, std::move(targets)});
  } else {
    prog.segments.emplace_back(SquarePulse{drive_amp, phase, std::nullopt, std::move(targets), angle / drive_amp});
  }
}

inline void check_drive(double J, double drive_amp) {
  if (!(J > 0.0)) throw std::invalid_argument("swap: J must be > 0");
  if (!(drive_amp > 0.0)) throw std::invalid_argument("swap: drive amplitude must be > 0 (or HARD_PULSES)");
}

}  // namespace detail

/// J-coupling SWAP for distinct Larmor frequencies, bracketed by VirtualZ(pi/4) on both spins.
/// Ideal propagator: exp(-i pi/4) U_swap; delay budget 7/(2J).
inline PulseProgram swap_nonidentical(std::size_t a, std::size_t b, double J, double drive_amp) {
  detail::check_drive(J, drive_amp);
  const double u = 1.0 / (2.0 * J);
  PulseProgram p;
  const std::vector<std::size_t> both{a, b};
  p.segments.emplace_back(VirtualZ{PI / 4, a});
  p.segments.emplace_back(VirtualZ{PI / 4, b});
  p.segments.emplace_back(Delay{3 * u});
  detail::push_rotation(p, PI, 0.0, {a}, drive_amp);
  p.segments.emplace_back(Delay{2 * u});
  detail::push_rotation(p, -PI, 0.0, {a}, drive_amp);
  detail::push_rotation(p, PI / 2, 0.0, both, drive_amp);
  p.segments.emplace_back(Delay{u});
  detail::push_rotation(p, PI / 2, PI / 2, both, drive_amp);
  p.segments.emplace_back(Delay{u});
  detail::push_rotation(p, -PI / 2, 0.0, both, drive_amp);
  p.segments.emplace_back(VirtualZ{PI / 4, a});
  p.segments.emplace_back(VirtualZ{PI / 4, b});
  return p;
}

/// Zero-quantum SWAP for equal Larmor frequencies; only spin `a` is driven.
/// Ideal propagator: exp(-3i pi/4) U_swap; delay budget 7/(2J).
inline PulseProgram swap_identical(std::size_t a, std::size_t /*b*/, double J, double drive_amp) {
  detail::check_drive(J, drive_amp);
  const double u = 1.0 / (2.0 * J);
  PulseProgram p;
  p.segments.emplace_back(Delay{3.5 * u});
  detail::push_rotation(p, PI, 0.0, {a}, drive_amp);
  p.segments.emplace_back(Delay{u});
  detail::push_rotation(p, PI, PI / 2, {a}, drive_amp);
  p.segments.emplace_back(Delay{1.5 * u});
  detail::push_rotation(p, PI, 0.0, {a}, drive_amp);
  p.segments.emplace_back(Delay{u});
  detail::push_rotation(p, -PI, PI / 2, {a}, drive_amp);
  return p;
}

inline PulseProgram swap_program(SecularKind regime, std::size_t a, std::size_t b, double J, double drive_amp) {
  switch (regime) {
    case SecularKind::IsingOnly: return swap_nonidentical(a, b, J, drive_amp);
    case SecularKind::ZeroQuantum: return swap_identical(a, b, J, drive_amp);
    default: throw std::invalid_argument("swap_program: regime must be resolved");
  }
}

// ---------------------------------------------------------------------------
// refocusing

/// Insert zero-duration `seg` at time t, splitting a Delay or SquarePulse if t falls inside one.
inline void insert_at(PulseProgram& prog, double t, const Segment& seg) {
  double now = 0.0;
  const double eps = 1e-12 * std::max(1e-300, prog.total_duration());
  for (std::size_t i = 0; i < prog.segments.size(); ++i) {
    const double d = duration_of(prog.segments[i]);
    if (t <= now + eps && d > 0.0) {
      prog.segments.insert(prog.segments.begin() + static_cast<std::ptrdiff_t>(i), seg);
      return;
    }
    if (t < now + d - eps) {
      const double first = t - now;
      Segment tail = prog.segments[i];
      if (auto* dl = std::get_if<Delay>(&prog.segments[i])) {
        dl->duration = first;
        std::get<Delay>(tail).duration = d - first;
      } else if (auto* sp = std::get_if<SquarePulse>(&prog.segments[i])) {
        sp->duration = first;
        std::get<SquarePulse>(tail).duration = d - first;
      }
      const auto pos = prog.segments.begin() + static_cast<std::ptrdiff_t>(i + 1);
      prog.segments.insert(pos, {seg, tail});
      return;
    }
    now += d;
  }
  prog.segments.push_back(seg);
}

/// Flip times for the refocused spin: one at T/2, and extra flips so that every
/// delay interval carries zero net signed time; a closing flip keeps the count even.
inline std::vector<double> refocus_flip_times(const PulseProgram& prog) {
  const double T = prog.total_duration();
  const double mid = 0.5 * T;
  std::vector<double> flips{mid};
  double now = 0.0;
  for (const auto& s : prog.segments) {
    const double d = duration_of(s);
    if (std::holds_alternative<Delay>(s) && d > 0.0) {
      const double a = now, b = now + d;
      if (mid > a && mid < b) {
        const double p = mid - a, q = b - mid;
        if (std::abs(p - q) > 1e-12 * d) flips.push_back(p > q ? a + 0.5 * (p - q) : a + 0.5 * (3 * p + q));
      } else {
        flips.push_back(0.5 * (a + b));
      }
    }
    now += d;
  }
  if (flips.size() % 2 == 1) flips.push_back(T);
  std::sort(flips.begin(), flips.end());
  return flips;
}

struct TransportProgram {
  PulseProgram program;
  Vector psi_initial;  // (|10> - |01>)/sqrt2 (x) |0>
  Vector psi_target;   // |0> (x) (|01> - |10>)/sqrt2
  std::size_t swap_a = 0, swap_b = 2;
  SecularKind regime = SecularKind::IsingOnly;
  std::vector<double> flip_times;
};

inline Vector transport_initial_state() {
  return (basis_ket({1, 0, 0}) - basis_ket({0, 1, 0})) / std::sqrt(2.0);
}

inline Vector transport_target_state() {
  return (basis_ket({0, 0, 1}) - basis_ket({0, 1, 0})) / std::sqrt(2.0);
}

/// SWAP(1,3) on a 3-spin chain with IdealPi refocusing of spin 2.
inline TransportProgram transport_protocol(const ChainSpec& chain, SecularKind regime, double drive_amp,
                                           bool refocus = true) {
  if (chain.nsites() != 3) throw std::invalid_argument("transport_protocol: chain must have 3 spins");
  if (regime == SecularKind::Auto) throw std::invalid_argument("transport_protocol: regime must be resolved");
  TransportProgram tp;
  tp.regime = regime;
  tp.program = swap_program(regime, 0, 2, chain.coupling_hz(0, 2), drive_amp);
  tp.psi_initial = transport_initial_state();
  tp.psi_target = transport_target_state();
  if (refocus) {
    tp.flip_times = refocus_flip_times(tp.program);
    // insert latest first so earlier times stay valid
    for (auto it = tp.flip_times.rbegin(); it != tp.flip_times.rend(); ++it)
      insert_at(tp.program, *it, IdealPi{'x', 1});
  }
  return tp;
}

// ---------------------------------------------------------------------------
// ideal propagator and gate checks

inline Operator rotation(char axis, double angle, std::size_t site, std::size_t nsites) {
  const auto s = spin_half_ops();
  const Operator& op = axis == 'x' ? s.Ix : axis == 'y' ? s.Iy : s.Iz;
  return expm(-I_UNIT * angle * embed(op, site, nsites));
}

inline Operator phased_rotation(double angle, double phase, std::size_t site, std::size_t nsites) {
  const auto s = spin_half_ops();
  const Operator n = std::cos(phase) * s.Ix + std::sin(phase) * s.Iy;
  return expm(-I_UNIT * angle * embed(n, site, nsites));
}

/// Unitary of a zero-duration segment.
inline Operator instant_unitary(const Segment& seg, std::size_t nsites) {
  Operator u = identity(qubit_dim(nsites));
  if (const auto* v = std::get_if<VirtualZ>(&seg)) return rotation('z', v->angle, v->target, nsites);
  if (const auto* q = std::get_if<IdealPi>(&seg)) return rotation(q->axis, PI, q->target, nsites);
  if (const auto* h = std::get_if<HardPulse>(&seg)) {
    for (auto k : h->targets) u = phased_rotation(h->angle, h->phase, k, nsites) * u;
  }
  return u;
}

/// Closed-system propagator with pulses taken as instantaneous rotations (angle = amplitude x duration).
inline Operator ideal_propagator(const PulseProgram& prog, const Operator& h_free, std::size_t nsites) {
  Operator u = identity(qubit_dim(nsites));
  for (const auto& s : prog.segments) {
    if (const auto* d = std::get_if<Delay>(&s)) {
      u = expm(-I_UNIT * h_free, d->duration) * u;
    } else if (const auto* p = std::get_if<SquarePulse>(&s)) {
      for (auto k : p->targets) u = phased_rotation(p->amplitude * p->duration, p->phase, k, nsites) * u;
    } else {
      u = instant_unitary(s, nsites) * u;
    }
  }
  return u;
}

struct GateCheck {
  double phase = 0.0;          // arg of the global phase, rad
  double max_error = 0.0;      // max |U - e^{i phase} U_swap|
  double delay_budget = 0.0;   // s
  double expected_budget = 0.0;
  double expected_phase = 0.0;
  bool match = false, phase_ok = false, budget_ok = false;
  bool passed() const { return match && phase_ok && budget_ok; }
};

/// Ideal propagator of the 2-spin SWAP program against U_swap.
inline GateCheck gate_check(const PulseProgram& prog, SecularKind regime, double J) {
  GateCheck gc;
  const Operator h = dipolar_hamiltonian(0, 1, J, regime, 2);
  const Operator u = ideal_propagator(prog, h, 2);
  const Operator sw = swap_unitary();
  const cplx ov = (sw.adjoint() * u).trace() / 4.0;
  gc.phase = std::arg(ov);
  gc.max_error = max_norm(u - std::exp(I_UNIT * gc.phase) * sw);
  gc.delay_budget = prog.delay_budget();
  gc.expected_budget = 7.0 / (2.0 * J);
  gc.expected_phase = regime == SecularKind::IsingOnly ? -PI / 4 : -3 * PI / 4;
  gc.match = gc.max_error < 1e-10;
  gc.phase_ok = std::abs(std::remainder(gc.phase - gc.expected_phase, 2 * PI)) < 1e-9;
  gc.budget_ok = std::abs(gc.delay_budget - gc.expected_budget) <= 1e-12 * gc.expected_budget;
  return gc;
}

// ---------------------------------------------------------------------------
// compilation

struct FrameSettings {
  ResolvedModes modes;
  double secular_cutoff = 1e6;  // rad/s, 1/dt
};

inline FrameSettings resolve_frame(const SecularMode& mode, const ChainSpec& chain) {
  if (!(mode.coarse_grain_dt > 0.0)) throw std::invalid_argument("coarse_grain_dt must be > 0");
  return {resolve_all(mode, chain), 1.0 / mode.coarse_grain_dt};
}

struct Window {
  // duration > 0: evolve under spec; otherwise apply `unitary`
  GeneratorSpec spec;
  double duration = 0.0;
  Operator unitary;
  bool instant() const { return unitary.size() > 0; }
};

inline std::vector<Window> compile(const PulseProgram& prog, const ChainSpec& chain, const BathSpec& bath,
                                   const FrameSettings& frame) {
  chain.validate();
  prog.validate(chain.nsites());
  const std::size_t n = chain.nsites();
  const Operator hc = coupling_hamiltonian(chain, frame.modes);
  const auto se = system_env_coupling(chain, bath);
  std::vector<Window> out;
  for (const auto& s : prog.segments) {
    const double d = duration_of(s);
    if (std::holds_alternative<Delay>(s) || std::holds_alternative<SquarePulse>(s)) {
      if (d == 0.0) continue;
      Window w;
      w.duration = d;
      w.spec.static_h = hc;
      w.spec.bath = bath;
      w.spec.secular_cutoff = frame.secular_cutoff;
      w.spec.components = se;
      if (const auto* p = std::get_if<SquarePulse>(&s)) {
        const auto dc = drive_hamiltonian(DriveSpec{p->amplitude, p->carrier, p->phase, p->targets}, chain);
        w.spec.components.insert(w.spec.components.end(), dc.begin(), dc.end());
      }
      out.push_back(std::move(w));
    } else {
      Window w;
      w.unitary = instant_unitary(s, n);
      out.push_back(std::move(w));
    }
  }
  return out;
}

inline std::vector<Window> compile(const PulseProgram& prog, const ChainSpec& chain, const BathSpec& bath,
                                   const SecularMode& mode) {
  return compile(prog, chain, bath, resolve_frame(mode, chain));
}

}  // namespace frqme
