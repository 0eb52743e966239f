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
#include "frqme/operator_core.hpp"
#include "frqme/pulse_program.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace frqme {

class PropagationError : public std::runtime_error {
 public:
  PropagationError(const std::string& what, double time, double value)
      : std::runtime_error(what), time_(time), value_(value) {}
  double time() const { return time_; }
  double value() const { return value_; }

 private:
  double time_;
  double value_;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Operator> states;
  std::optional<Vector> target;
  std::string initial_label, target_label;
  std::size_t clipped = 0;       // states with tiny negative eigenvalues floored to 0
  double min_eigenvalue = 1.0;   // smallest raw eigenvalue seen

  const Operator& final_state() const { return states.back(); }
};

struct StateCheck {
  double trace_error = 0.0;
  double hermiticity_error = 0.0;
  double min_eigenvalue = 0.0;
};

inline StateCheck check_state(const Operator& rho) {
  StateCheck c;
  c.trace_error = std::abs(rho.trace() - cplx(1.0, 0.0));
  c.hermiticity_error = max_norm(rho - rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Operator> es(hermitian_part(rho), Eigen::EigenvaluesOnly);
  c.min_eigenvalue = es.eigenvalues().minCoeff();
  return c;
}

namespace detail {

inline constexpr double kClipFloor = -1e-13;  // below numerical noise nothing is touched

// Validates rho in place; floors small negative eigenvalues.
inline void enforce_state(Operator& rho, double t, Trajectory* traj) {
  const StateCheck c = check_state(rho);
  if (!(c.trace_error <= 1e-9)) throw PropagationError("trace drift at t = " + std::to_string(t), t, c.trace_error);
  if (!(c.hermiticity_error <= 1e-9))
    throw PropagationError("Hermiticity lost at t = " + std::to_string(t), t, c.hermiticity_error);
  if (traj) traj->min_eigenvalue = std::min(traj->min_eigenvalue, c.min_eigenvalue);
  if (c.min_eigenvalue < -1e-8) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "positivity violated at t = %.12g s (eigenvalue %.3e)", t, c.min_eigenvalue);
    throw PropagationError(buf, t, c.min_eigenvalue);
  }
  if (c.min_eigenvalue < kClipFloor) {
    Eigen::SelfAdjointEigenSolver<Operator> es(hermitian_part(rho));
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
    ev /= ev.sum();
    rho = es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
    if (traj) ++traj->clipped;
  }
}

}  // namespace detail

/// Window-by-window propagation. sample_dt empty means window duration / 50.
inline Trajectory propagate(const Operator& rho0, const std::vector<Window>& windows,
                            std::optional<double> sample_dt = std::nullopt) {
  if (sample_dt && !(*sample_dt > 0.0)) throw std::invalid_argument("propagate: sample_dt must be > 0");
  Trajectory tr;
  Operator rho = rho0;
  double t = 0.0;
  detail::enforce_state(rho, t, &tr);
  tr.times.push_back(t);
  tr.states.push_back(rho);
  for (const auto& w : windows) {
    if (w.instant()) {
      rho = w.unitary * rho * w.unitary.adjoint();
      detail::enforce_state(rho, t, &tr);
      tr.times.push_back(t);
      tr.states.push_back(rho);
      continue;
    }
    const Superoperator gen = assemble(w.spec, false).gen;
    const double step_target = sample_dt ? *sample_dt : w.duration / 50.0;
    const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(w.duration / step_target - 1e-9)));
    const double h = w.duration / static_cast<double>(steps);
    const Superoperator step = expm(gen, h);
    const double t0 = t;
    for (std::size_t i = 1; i <= steps; ++i) {
      rho = unvec(step * vec(rho));
      t = i == steps ? t0 + w.duration : t0 + h * static_cast<double>(i);
      detail::enforce_state(rho, t, &tr);
      tr.times.push_back(t);
      tr.states.push_back(rho);
    }
  }
  return tr;
}

/// Full process superoperator of the window list (column-stacking convention).
inline Superoperator process_superop(const std::vector<Window>& windows, std::size_t dim) {
  const auto d2 = static_cast<Eigen::Index>(dim * dim);
  Superoperator s = Superoperator::Identity(d2, d2);
  for (const auto& w : windows) {
    if (w.instant()) s = unitary_superop(w.unitary) * s;
    else s = expm(assemble(w.spec, false).gen, w.duration) * s;
  }
  return s;
}

/// Final state from a process superoperator, with the same state checks as propagate().
inline Operator final_state(const Superoperator& process, const Operator& rho0, double total_time) {
  Operator rho = unvec(process * vec(rho0));
  detail::enforce_state(rho, total_time, nullptr);
  return rho;
}

/// Columnar text: time, Re/Im of rho in row-major order, optional fidelity.
inline void write_trajectory(std::ostream& os, const Trajectory& tr) {
  const auto d = tr.states.empty() ? 0 : tr.states.front().rows();
  os << "time_s";
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) os << "\tre_" << i << '_' << j << "\tim_" << i << '_' << j;
  if (tr.target) os << "\tfidelity";
  os << '\n';
  char buf[64];
  for (std::size_t k = 0; k < tr.states.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.12g", tr.times[k]);
    os << buf;
    const Operator& r = tr.states[k];
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) {
        std::snprintf(buf, sizeof buf, "\t%.12g\t%.12g", r(i, j).real(), r(i, j).imag());
        os << buf;
      }
    if (tr.target) {
      const double f = (tr.target->adjoint() * r * *tr.target)(0, 0).real();
      std::snprintf(buf, sizeof buf, "\t%.12g", f);
      os << buf;
    }
    os << '\n';
  }
}

}  // namespace frqme
