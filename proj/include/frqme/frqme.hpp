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

#include "frqme/model.hpp"
#include "frqme/operator_core.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace frqme {

struct GeneratorSpec {
  std::vector<HarmonicComponent> components;
  Operator static_h;  // secular static Hamiltonian in the simulation frame
  BathSpec bath;
  double secular_cutoff = 1e6;  // rad/s
};

/// int_0^inf exp(i Omega tau) exp(-tau/tau_c) dtau = tau_c / (1 - i Omega tau_c)
inline cplx regulator_integral(double omega, double tau_c) {
  if (!(tau_c > 0.0)) throw std::invalid_argument("regulator_integral: tau_c must be > 0");
  return tau_c / cplx(1.0, -omega * tau_c);
}

namespace detail {

struct ClosedComponent {
  Operator op;
  double freq;
  EnvFactor env;
};

// every component together with its Hermitian conjugate
inline std::vector<ClosedComponent> close_set(const std::vector<HarmonicComponent>& comps) {
  std::vector<ClosedComponent> out;
  out.reserve(2 * comps.size());
  for (const auto& c : comps) {
    out.push_back({c.op, c.freq, c.env});
    out.push_back({c.op.adjoint(), -c.freq, c.env.adjoint()});
  }
  return out;
}

inline Eigen::Index spec_dim(const GeneratorSpec& spec) {
  if (spec.static_h.size() > 0) return spec.static_h.rows();
  if (!spec.components.empty()) return spec.components.front().op.rows();
  throw std::invalid_argument("generator spec has no operators");
}

inline double env_trace(const EnvFactor& e) { return e.kind == EnvFactor::Kind::Identity ? 1.0 : 0.0; }

// Single-linkage groups of component frequencies: sorted neighbours closer than the cutoff share a label.
// Pair (j, k) is secular when v_j and -v_k share a label. Where |v_j + v_k| < cutoff is already
// an equivalence this is the same set of pairs; otherwise the grouping keeps the pair mask positive.
inline std::vector<int> frequency_groups(const std::vector<ClosedComponent>& set, double cutoff) {
  std::vector<std::size_t> order(set.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return set[a].freq < set[b].freq; });
  std::vector<int> label(set.size(), 0);
  int current = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i > 0 && set[order[i]].freq - set[order[i - 1]].freq >= cutoff) ++current;
    label[order[i]] = current;
  }
  return label;
}

}  // namespace detail

/// Coherent secular Hamiltonian H-bar (environment traced, quasi-static components kept).
inline Operator secular_hamiltonian(const GeneratorSpec& spec) {
  const Eigen::Index d = detail::spec_dim(spec);
  Operator h = spec.static_h.size() > 0 ? spec.static_h : Operator::Zero(d, d);
  for (const auto& c : spec.components) {
    if (!std::isfinite(c.freq)) throw std::invalid_argument("component frequency is not finite");
    if (std::abs(c.freq) >= spec.secular_cutoff) continue;
    const double tr = detail::env_trace(c.env);
    if (tr != 0.0) h += tr * (c.op + c.op.adjoint());
  }
  return hermitian_part(h);
}

inline Superoperator first_order_generator(const GeneratorSpec& spec) {
  return commutator_superop(secular_hamiltonian(spec));
}

struct SecondOrderParts {
  Superoperator dissipator;  // rho -> -sum g w [A_j, [A_k, rho]]
  Operator lamb_shift;       // H_LS
};

inline SecondOrderParts second_order_parts(const GeneratorSpec& spec) {
  const Eigen::Index d = detail::spec_dim(spec);
  SecondOrderParts out{Superoperator::Zero(d * d, d * d), Operator::Zero(d, d)};
  const auto set = detail::close_set(spec.components);
  const double tc = spec.bath.tau_c;
  std::vector<cplx> reg(set.size());
  std::vector<Superoperator> ad(set.size());  // [A, .]
  for (std::size_t j = 0; j < set.size(); ++j) {
    reg[j] = regulator_integral(set[j].freq, tc);
    ad[j] = left_superop(set[j].op) - right_superop(set[j].op);
  }
  // close_set stores each component next to its conjugate, so set[k ^ 1] carries -v_k
  const auto group = detail::frequency_groups(set, spec.secular_cutoff);
  for (std::size_t j = 0; j < set.size(); ++j) {
    for (std::size_t k = 0; k < set.size(); ++k) {
      if (group[j] != group[k ^ 1]) continue;
      const double g = env_contraction(set[j].env, set[k].env);
      if (g == 0.0) continue;
      // both weights reduce to R(v_k) when v_j = -v_k
      const double wr = std::sqrt(reg[j].real() * reg[k].real());
      const double wi = 0.5 * (reg[k].imag() - reg[j].imag());
      out.dissipator.noalias() -= (g * wr) * (ad[j] * ad[k]);
      if (wi != 0.0) out.lamb_shift += (0.5 * g * wi) * commutator(set[j].op, set[k].op);
    }
  }
  out.lamb_shift = hermitian_part(out.lamb_shift);
  return out;
}

/// Second-order FRQME term, shift folded in as -i[H_LS, .].
inline Superoperator second_order_dissipator(const GeneratorSpec& spec) {
  auto parts = second_order_parts(spec);
  return parts.dissipator + commutator_superop(parts.lamb_shift);
}

/// Normalized Pauli strings on n qubits; index 0 is identity/sqrt(d).
inline std::vector<Operator> pauli_basis(std::size_t nqubits) {
  const auto s = spin_half_ops();
  const Operator p[4] = {identity(2), 2.0 * s.Ix, 2.0 * s.Iy, 2.0 * s.Iz};
  const std::size_t count = std::size_t{1} << (2 * nqubits);
  const double norm = 1.0 / std::sqrt(static_cast<double>(qubit_dim(nqubits)));
  std::vector<Operator> out;
  out.reserve(count);
  for (std::size_t idx = 0; idx < count; ++idx) {
    Operator m = Operator::Identity(1, 1);
    for (std::size_t q = 0; q < nqubits; ++q) {
      const std::size_t digit = (idx >> (2 * (nqubits - 1 - q))) & 3u;
      m = kron(m, p[digit]);
    }
    out.push_back(norm * m);
  }
  return out;
}

struct KossakowskiReport {
  Eigen::VectorXd eigenvalues;  // ascending
  double min_eig = 0.0;
  double max_eig = 0.0;
  bool valid = false;
};

/// Kossakowski matrix of a generator over the normalized Pauli basis (identity element removed).
inline Operator kossakowski_matrix(const Superoperator& gen) {
  const Eigen::Index d2 = gen.rows();
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(d2))));
  std::size_t n = 0;
  while ((Eigen::Index{1} << n) < d) ++n;
  if ((Eigen::Index{1} << n) != d) throw std::invalid_argument("kossakowski_matrix: not a qubit register");
  // Lambda[(r,p),(s,q)] = L[r + d s, p + d q]
  Operator lam(d2, d2);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index p = 0; p < d; ++p)
      for (Eigen::Index s = 0; s < d; ++s)
        for (Eigen::Index q = 0; q < d; ++q) lam(r + d * p, s + d * q) = gen(r + d * s, p + d * q);
  const auto basis = pauli_basis(n);
  Operator v(d2, d2);
  for (Eigen::Index a = 0; a < d2; ++a) v.col(a) = vec(basis[static_cast<std::size_t>(a)]);
  const Operator c = v.adjoint() * lam * v;
  return hermitian_part(c.bottomRightCorner(d2 - 1, d2 - 1));
}

inline KossakowskiReport kossakowski_check(const Superoperator& gen) {
  KossakowskiReport rep;
  const Operator k = kossakowski_matrix(gen);
  Eigen::SelfAdjointEigenSolver<Operator> es(k, Eigen::EigenvaluesOnly);
  rep.eigenvalues = es.eigenvalues();
  rep.min_eig = rep.eigenvalues.minCoeff();
  rep.max_eig = rep.eigenvalues.maxCoeff();
  rep.valid = rep.min_eig >= -1e-9 * std::max(rep.max_eig, 1.0);
  return rep;
}

struct Liouvillian {
  Superoperator gen;
  bool is_gkls_valid = false;
  double kossakowski_min_eig = 0.0;
  double kossakowski_max_eig = 0.0;
};

inline Liouvillian assemble(const GeneratorSpec& spec, bool check_gkls = true) {
  Liouvillian l;
  l.gen = first_order_generator(spec) + second_order_dissipator(spec);
  if (check_gkls) {
    const auto rep = kossakowski_check(l.gen);
    l.is_gkls_valid = rep.valid;
    l.kossakowski_min_eig = rep.min_eig;
    l.kossakowski_max_eig = rep.max_eig;
  }
  return l;
}

/// Largest |Tr(L rho)| over the matrix-unit basis, relative to ||L||.
inline double trace_annihilation_error(const Superoperator& gen) {
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(gen.rows()))));
  double worst = 0.0;
  for (Eigen::Index col = 0; col < gen.cols(); ++col) {
    cplx tr = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) tr += gen(i + d * i, col);
    worst = std::max(worst, std::abs(tr));
  }
  return worst / std::max(1.0, max_norm(gen));
}

}  // namespace frqme
