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

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace frqme {

using cplx = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using Superoperator = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr cplx I_UNIT{0.0, 1.0};
inline constexpr double PI = 3.14159265358979323846;

struct SpinHalfOps {
  Operator Ix, Iy, Iz, Iplus, Iminus;
};

/// Spin-1/2 operators. |0> is spin up, so Iz|0> = +1/2 |0>.
inline SpinHalfOps spin_half_ops() {
  SpinHalfOps s;
  s.Ix = Operator::Zero(2, 2);
  s.Iy = Operator::Zero(2, 2);
  s.Iz = Operator::Zero(2, 2);
  s.Ix(0, 1) = s.Ix(1, 0) = 0.5;
  s.Iy(0, 1) = cplx(0.0, -0.5);
  s.Iy(1, 0) = cplx(0.0, 0.5);
  s.Iz(0, 0) = 0.5;
  s.Iz(1, 1) = -0.5;
  s.Iplus = s.Ix + I_UNIT * s.Iy;
  s.Iminus = s.Ix - I_UNIT * s.Iy;
  return s;
}

inline Operator kron(const Operator& a, const Operator& b) {
  Operator r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

inline Operator identity(std::size_t dim) {
  return Operator::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
}

inline std::size_t qubit_dim(std::size_t nsites) { return std::size_t{1} << nsites; }

/// identity (x) ... (x) op (x) ... (x) identity, site 0 leftmost.
inline Operator embed(const Operator& op, std::size_t site, std::size_t nsites) {
  if (site >= nsites) throw std::out_of_range("embed: site " + std::to_string(site) + " out of range");
  if (op.rows() != 2 || op.cols() != 2) throw std::invalid_argument("embed: operator must be 2x2");
  Operator r = Operator::Identity(1, 1);
  for (std::size_t k = 0; k < nsites; ++k) r = kron(r, k == site ? op : identity(2));
  return r;
}

inline double max_norm(const Operator& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const Operator& a, double tol = 1e-12) {
  if (a.rows() != a.cols()) return false;
  const double scale = std::max(1.0, max_norm(a));
  return max_norm(a - a.adjoint()) <= tol * scale;
}

inline Operator hermitian_part(const Operator& a) { return 0.5 * (a + a.adjoint()); }

inline Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

/// Column stacking: vec(rho)[p + d q] = rho(p, q).
inline Vector vec(const Operator& rho) {
  return Eigen::Map<const Vector>(rho.data(), rho.size());
}

inline Operator unvec(const Vector& v) {
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  if (d * d != v.size()) throw std::invalid_argument("unvec: length is not a square");
  return Eigen::Map<const Operator>(v.data(), d, d);
}

// vec(A X B) = (B^T (x) A) vec X
inline Superoperator left_superop(const Operator& a) { return kron(identity(a.rows()), a); }
inline Superoperator right_superop(const Operator& b) { return kron(b.transpose(), identity(b.rows())); }

/// rho -> -i [H, rho]
inline Superoperator commutator_superop(const Operator& h) {
  if (!is_hermitian(h, 1e-10)) throw std::invalid_argument("commutator_superop: H is not Hermitian");
  return -I_UNIT * (left_superop(h) - right_superop(h));
}

/// rho -> U rho U^dagger
inline Superoperator unitary_superop(const Operator& u) { return kron(u.conjugate(), u); }

/// rho -> [A, [B, rho]]
inline Superoperator double_commutator_superop(const Operator& a, const Operator& b) {
  const Superoperator la = left_superop(a) - right_superop(a);
  const Superoperator lb = left_superop(b) - right_superop(b);
  return la * lb;
}

inline Operator apply(const Superoperator& s, const Operator& rho) { return unvec(s * vec(rho)); }

/// exp(A t). Pade scaling-and-squaring (Eigen MatrixFunctions).
inline Operator expm(const Operator& a, double t = 1.0) {
  if (!a.allFinite() || !std::isfinite(t)) throw std::invalid_argument("expm: non-finite input");
  if (a.rows() != a.cols()) throw std::invalid_argument("expm: matrix is not square");
  const Operator m = a * t;
  return m.exp();
}

/// Reduced state on `keep` (ascending or not; output ordering follows ascending site order).
inline Operator partial_trace(const Operator& rho, std::vector<std::size_t> keep,
                              const std::vector<std::size_t>& dims) {
  const std::size_t n = dims.size();
  const std::size_t total = std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
  if (static_cast<std::size_t>(rho.rows()) != total || rho.rows() != rho.cols())
    throw std::invalid_argument("partial_trace: dimension mismatch");
  if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  std::vector<bool> kept(n, false);
  for (auto k : keep) {
    if (k >= n) throw std::out_of_range("partial_trace: site out of range");
    kept[k] = true;
  }
  std::vector<std::size_t> stride(n);
  std::size_t s = 1;
  for (std::size_t k = n; k-- > 0;) {
    stride[k] = s;
    s *= dims[k];
  }
  std::size_t dk = 1, dt = 1;
  for (std::size_t k = 0; k < n; ++k) (kept[k] ? dk : dt) *= dims[k];

  // full index from (kept digits, traced digits)
  auto compose = [&](std::size_t ik, std::size_t it) {
    std::size_t idx = 0;
    for (std::size_t k = n; k-- > 0;) {
      if (kept[k]) {
        idx += (ik % dims[k]) * stride[k];
        ik /= dims[k];
      } else {
        idx += (it % dims[k]) * stride[k];
        it /= dims[k];
      }
    }
    return idx;
  };
  Operator out = Operator::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
  for (std::size_t a = 0; a < dk; ++a)
    for (std::size_t b = 0; b < dk; ++b) {
      cplx acc = 0.0;
      for (std::size_t t = 0; t < dt; ++t)
        acc += rho(static_cast<Eigen::Index>(compose(a, t)), static_cast<Eigen::Index>(compose(b, t)));
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = acc;
    }
  return out;
}

inline Operator partial_trace_qubits(const Operator& rho, const std::vector<std::size_t>& keep) {
  std::size_t n = 0;
  while ((std::size_t{1} << n) < static_cast<std::size_t>(rho.rows())) ++n;
  return partial_trace(rho, keep, std::vector<std::size_t>(n, 2));
}

/// Exchanges |01> and |10>.
inline Operator swap_unitary() {
  Operator u = Operator::Zero(4, 4);
  u(0, 0) = u(3, 3) = 1.0;
  u(1, 2) = u(2, 1) = 1.0;
  return u;
}

inline Operator projector(const Vector& psi) { return psi * psi.adjoint(); }

/// Computational basis ket on n qubits; bits[0] is site 0.
inline Vector basis_ket(const std::vector<int>& bits) {
  std::size_t idx = 0;
  for (int b : bits) idx = (idx << 1) | static_cast<std::size_t>(b & 1);
  Vector v = Vector::Zero(static_cast<Eigen::Index>(qubit_dim(bits.size())));
  v(static_cast<Eigen::Index>(idx)) = 1.0;
  return v;
}

}  // namespace frqme
