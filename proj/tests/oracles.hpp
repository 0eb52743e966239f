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

// Reference implementations used only by the tests. Each one takes a different
// route from the library code it checks.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

constexpr double kPi = 3.14159265358979323846;

inline Mat kron2(const Mat& a, const Mat& b) {
  Mat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return r;
}

/// Partial trace by explicit bit loops over an n-qubit register.
inline Mat partial_trace_bits(const Mat& rho, const std::vector<int>& keep, int n) {
  const int dk = 1 << keep.size();
  Mat out = Mat::Zero(dk, dk);
  const int dim = 1 << n;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      bool same_traced = true;
      for (int s = 0; s < n; ++s) {
        if (std::find(keep.begin(), keep.end(), s) != keep.end()) continue;
        const int bi = (i >> (n - 1 - s)) & 1, bj = (j >> (n - 1 - s)) & 1;
        if (bi != bj) same_traced = false;
      }
      if (!same_traced) continue;
      int a = 0, b = 0;
      for (int s : keep) {
        a = (a << 1) | ((i >> (n - 1 - s)) & 1);
        b = (b << 1) | ((j >> (n - 1 - s)) & 1);
      }
      out(a, b) += rho(i, j);
    }
  return out;
}

/// exp(-i H t) for Hermitian H by diagonalization.
inline Mat unitary_by_eig(const Mat& h, double t) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Vec ph(h.rows());
  for (int i = 0; i < h.rows(); ++i) ph(i) = std::exp(cplx(0, -es.eigenvalues()(i) * t));
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

/// Wootters concurrence via the Hermitian route: eigenvalues of sqrt(sqrt(rho) rho~ sqrt(rho)).
inline double concurrence_hermitian(const Mat& rho) {
  Mat yy = Mat::Zero(4, 4);
  yy(0, 3) = yy(3, 0) = -1.0;
  yy(1, 2) = yy(2, 1) = 1.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(rho);
  Vec sq(4);
  for (int i = 0; i < 4; ++i) sq(i) = std::sqrt(std::max(0.0, es.eigenvalues()(i)));
  const Mat sr = es.eigenvectors() * sq.asDiagonal() * es.eigenvectors().adjoint();
  const Mat m = sr * (yy * rho.conjugate() * yy) * sr;
  Eigen::SelfAdjointEigenSolver<Mat> es2(0.5 * (m + m.adjoint()));
  std::vector<double> l(4);
  for (int i = 0; i < 4; ++i) l[i] = std::sqrt(std::max(0.0, es2.eigenvalues()(i)));
  std::sort(l.begin(), l.end(), std::greater<>());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

/// Average gate fidelity of unitary channel V against U: (|Tr U^dag V|^2 + d) / (d (d + 1)).
inline double unitary_average_fidelity(const Mat& u, const Mat& v) {
  const double d = static_cast<double>(u.rows());
  return (std::norm((u.adjoint() * v).trace()) + d) / (d * (d + 1.0));
}

/// Explicit single-qubit system + one two-level environment for the second-order term.
struct Term {
  Mat a;      // 2x2 system operator
  double nu;  // frequency, term carries exp(-i nu t)
  Mat b;      // 2x2 environment operator
};

/// Terms of H(t) = sum op (x) env e^{-i nu t} + h.c., with h.c. listed explicitly.
inline std::vector<Term> close_terms(const std::vector<Term>& half) {
  std::vector<Term> out;
  for (const auto& t : half) {
    out.push_back(t);
    out.push_back({t.a.adjoint(), -t.nu, t.b.adjoint()});
  }
  return out;
}

/// Brute-force second-order FRQME map on one qubit, as a 4x4 superoperator (column stacking).
/// -int_0^{20 tau_c} dtau e^{-tau/tau_c} Tr_E [H_j, [H_k(-tau), rho (x) 1/2]] over secular pairs,
/// trapezoid rule with step tau_c / 200.
inline Mat brute_force_second_order(const std::vector<Term>& half, double tau_c, double cutoff) {
  const auto terms = close_terms(half);
  const Mat rho_e = 0.5 * Mat::Identity(2, 2);
  const int steps = 4000;
  const double h = 20.0 * tau_c / steps;
  Mat out = Mat::Zero(4, 4);
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q) {
      Mat rho = Mat::Zero(2, 2);
      rho(p, q) = 1.0;
      const Mat big = kron2(rho, rho_e);
      Mat acc = Mat::Zero(2, 2);
      for (const auto& tj : terms)
        for (const auto& tk : terms) {
          if (std::abs(tj.nu + tk.nu) >= cutoff) continue;
          const Mat hj = kron2(tj.a, tj.b);
          const Mat hk = kron2(tk.a, tk.b);
          const Mat inner = hk * big - big * hk;
          const Mat dc = hj * inner - inner * hj;
          // Tr_E of the double commutator
          Mat tr = Mat::Zero(2, 2);
          for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) tr(i, j) = dc(2 * i, 2 * j) + dc(2 * i + 1, 2 * j + 1);
          cplx integral = 0.0;
          for (int s = 0; s <= steps; ++s) {
            const double tau = s * h;
            const double w = (s == 0 || s == steps) ? 0.5 : 1.0;
            integral += w * std::exp(cplx(-tau / tau_c, tk.nu * tau));
          }
          integral *= h;
          acc -= integral * tr;
        }
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out(i + 2 * j, p + 2 * q) = acc(i, j);
    }
  return out;
}

inline Mat random_density(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Mat g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = cplx(nd(rng), nd(rng));
  Mat r = g * g.adjoint();
  return r / r.trace();
}

inline Mat random_hermitian(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Mat g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = cplx(nd(rng), nd(rng));
  return 0.5 * (g + g.adjoint());
}

inline Mat random_unitary(int dim, std::mt19937_64& rng) {
  return unitary_by_eig(random_hermitian(dim, rng), 1.0);
}

}  // namespace oracle
