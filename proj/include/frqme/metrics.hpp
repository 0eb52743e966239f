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

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace frqme {

/// <psi| rho |psi> for a pure target.
inline double state_fidelity(const Operator& rho, const Vector& target) {
  if (std::abs(target.norm() - 1.0) > 1e-9) throw std::invalid_argument("state_fidelity: target not normalized");
  if (rho.rows() != target.size()) throw std::invalid_argument("state_fidelity: dimension mismatch");
  return (target.adjoint() * rho * target)(0, 0).real();
}

/// Wootters concurrence of a two-qubit state.
inline double concurrence(const Operator& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) throw std::invalid_argument("concurrence: need a 4x4 density operator");
  Operator yy = Operator::Zero(4, 4);
  yy(0, 3) = yy(3, 0) = -1.0;
  yy(1, 2) = yy(2, 1) = 1.0;
  const Operator tilde = yy * rho.conjugate() * yy;
  Eigen::ComplexEigenSolver<Operator> es(rho * tilde, false);
  double top = 0.0;
  for (int i = 0; i < 4; ++i) top = std::max(top, es.eigenvalues()(i).real());
  // eigenvalues at the rounding floor would otherwise enter as sqrt(1e-16) ~ 1e-8
  const double floor = 1e-13 * top;
  std::vector<double> lam(4);
  for (int i = 0; i < 4; ++i) {
    const double ev = es.eigenvalues()(i).real();
    lam[static_cast<std::size_t>(i)] = ev > floor ? std::sqrt(ev) : 0.0;
  }
  std::sort(lam.begin(), lam.end(), std::greater<>());
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

/// Average gate fidelity of a channel (superoperator, column stacking) against unitary U.
inline double swap_efficiency(const Superoperator& channel, const Operator& ideal) {
  const Eigen::Index d = ideal.rows();
  if (channel.rows() != d * d) throw std::invalid_argument("swap_efficiency: dimension mismatch");
  std::size_t n = 0;
  while ((Eigen::Index{1} << n) < d) ++n;
  const auto basis = pauli_basis(n);
  cplx sum = 0.0;
  for (const auto& p : basis) {
    const Operator out = apply(channel, p);
    if (std::abs(out.trace() - p.trace()) > 1e-6) throw std::invalid_argument("swap_efficiency: channel not trace preserving");
    sum += (ideal * p.adjoint() * ideal.adjoint() * out).trace();
  }
  const double fe = sum.real() / static_cast<double>(d * d);
  const auto dd = static_cast<double>(d);
  return (dd * fe + 1.0) / (dd + 1.0);
}

/// Embed an operator on `sites` with every other spin in |0><0|.
inline Operator place_on_sites(const Operator& op, const std::vector<std::size_t>& sites, std::size_t nsites) {
  const auto dim = static_cast<Eigen::Index>(qubit_dim(nsites));
  Operator out = Operator::Zero(dim, dim);
  auto bit = [&](Eigen::Index idx, std::size_t site) { return (idx >> (nsites - 1 - site)) & 1; };
  std::vector<bool> in_pair(nsites, false);
  for (auto s : sites) in_pair[s] = true;
  auto sub = [&](Eigen::Index idx, bool& others_zero) {
    Eigen::Index r = 0;
    others_zero = true;
    for (std::size_t s = 0; s < nsites; ++s) {
      if (in_pair[s]) continue;
      if (bit(idx, s)) others_zero = false;
    }
    for (auto s : sites) r = (r << 1) | bit(idx, s);
    return r;
  };
  for (Eigen::Index i = 0; i < dim; ++i) {
    bool zi;
    const auto si = sub(i, zi);
    if (!zi) continue;
    for (Eigen::Index j = 0; j < dim; ++j) {
      bool zj;
      const auto sj = sub(j, zj);
      if (zj) out(i, j) = op(si, sj);
    }
  }
  return out;
}

/// Two-spin channel on `pair` from the full process, other spins starting in |0>.
inline Superoperator pair_channel(const Superoperator& process, std::size_t a, std::size_t b, std::size_t nsites) {
  if (a >= b) throw std::invalid_argument("pair_channel: need a < b");
  Superoperator ch(16, 16);
  for (Eigen::Index q = 0; q < 4; ++q)
    for (Eigen::Index p = 0; p < 4; ++p) {
      Operator e = Operator::Zero(4, 4);
      e(p, q) = 1.0;
      const Operator full = place_on_sites(e, {a, b}, nsites);
      const Operator out = partial_trace_qubits(apply(process, full), {a, b});
      ch.col(p + 4 * q) = vec(out);
    }
  return ch;
}

struct TransferReport {
  double fidelity = 0.0;
  double concurrence_23 = 0.0;
  double efficiency = 0.0;
  double omega1 = 0.0, omegaD = 0.0, tau_c = 0.0, omega_se = 0.0;
};

/// Metrics of a transport run from its final state and process superoperator.
inline TransferReport report(const Operator& final_rho, const Superoperator& process, const Vector& target,
                             std::size_t swap_a, std::size_t swap_b) {
  TransferReport r;
  r.fidelity = state_fidelity(final_rho, target);
  r.concurrence_23 = concurrence(partial_trace_qubits(final_rho, {1, 2}));
  r.efficiency = swap_efficiency(pair_channel(process, swap_a, swap_b, 3), swap_unitary());
  return r;
}

}  // namespace frqme
