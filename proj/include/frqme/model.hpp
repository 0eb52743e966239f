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

#include "frqme/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace frqme {

struct Coupling {
  std::size_t a = 0;
  std::size_t b = 1;
  double J_hz = 0.0;  // omega_D = 2 pi J
};

struct ChainSpec {
  std::vector<double> larmor;  // rad/s, per spin
  std::vector<Coupling> couplings;
  std::string geometry = "z";  // informational

  std::size_t nsites() const { return larmor.size(); }

  void validate() const {
    if (larmor.empty()) throw std::invalid_argument("chain: larmor list is empty");
    for (const auto& c : couplings) {
      if (c.a >= nsites() || c.b >= nsites() || c.a == c.b)
        throw std::invalid_argument("chain: coupling references invalid site pair");
      if (!(c.J_hz >= 0.0)) throw std::invalid_argument("chain: coupling J must be >= 0");
    }
  }

  /// J of the pair (a, b) in Hz, 0 when absent.
  double coupling_hz(std::size_t a, std::size_t b) const {
    for (const auto& c : couplings)
      if ((c.a == a && c.b == b) || (c.a == b && c.b == a)) return c.J_hz;
    return 0.0;
  }
};

struct BathSpec {
  double omega_se = 0.0;  // rad/s
  double tau_c = 1e-9;    // s
  std::optional<double> kappa;  // s^-1/2; tau_c = 2 / kappa^2

  void validate() const {
    if (!(tau_c > 0.0) || !std::isfinite(tau_c)) throw std::invalid_argument("bath: tau_c must be > 0");
    if (!(omega_se >= 0.0) || !std::isfinite(omega_se)) throw std::invalid_argument("bath: omega_se must be >= 0");
    if (kappa) {
      const double from_kappa = 2.0 / (*kappa * *kappa);
      if (std::abs(from_kappa - tau_c) > 1e-9 * tau_c)
        throw std::invalid_argument("bath: tau_c and kappa disagree (tau_c = 2/kappa^2)");
    }
  }

  static BathSpec from_kappa(double omega_se, double kappa) {
    BathSpec b;
    b.omega_se = omega_se;
    b.kappa = kappa;
    b.tau_c = 2.0 / (kappa * kappa);
    return b;
  }
};

/// Timescale-separation warnings (w1 tau_c, w_SE tau_c should be << 1).
inline std::vector<std::string> timescale_warnings(const BathSpec& bath, double omega1) {
  std::vector<std::string> w;
  if (omega1 * bath.tau_c >= 1.0)
    w.push_back("omega1*tau_c = " + std::to_string(omega1 * bath.tau_c) + " >= 1");
  if (bath.omega_se * bath.tau_c >= 1.0)
    w.push_back("omega_se*tau_c = " + std::to_string(bath.omega_se * bath.tau_c) + " >= 1");
  return w;
}

struct DriveSpec {
  double amplitude = 0.0;           // omega1, rad/s
  std::optional<double> carrier;    // rad/s; empty = resonant with each target
  double phase = 0.0;               // rad
  std::vector<std::size_t> targets;
};

/// Environment factor B of a component A (x) B.
struct EnvFactor {
  enum class Kind { Identity, SPlus, SMinus };
  Kind kind = Kind::Identity;
  std::size_t site = 0;  // local environment index, unused for Identity

  EnvFactor adjoint() const {
    EnvFactor e = *this;
    if (kind == Kind::SPlus) e.kind = Kind::SMinus;
    else if (kind == Kind::SMinus) e.kind = Kind::SPlus;
    return e;
  }
};

/// Tr(B_j B_k rho_E), rho_E = identity/2 on every local environment.
inline double env_contraction(const EnvFactor& x, const EnvFactor& y) {
  using K = EnvFactor::Kind;
  if (x.kind == K::Identity && y.kind == K::Identity) return 1.0;
  if (x.kind == K::Identity || y.kind == K::Identity) return 0.0;
  if (x.site != y.site) return 0.0;
  if ((x.kind == K::SPlus && y.kind == K::SMinus) || (x.kind == K::SMinus && y.kind == K::SPlus)) return 0.5;
  return 0.0;
}

/// Interaction-frame term op (x) env * exp(-i freq t); the Hermitian conjugate is implied.
struct HarmonicComponent {
  Operator op;
  double freq = 0.0;  // rad/s
  EnvFactor env;
  std::string label;
};

enum class SecularKind { Auto, IsingOnly, ZeroQuantum };

struct SecularMode {
  SecularKind kind = SecularKind::Auto;
  double coarse_grain_dt = 1e-6;  // s
};

inline std::string to_string(SecularKind k) {
  switch (k) {
    case SecularKind::Auto: return "Auto";
    case SecularKind::IsingOnly: return "IsingOnly";
    case SecularKind::ZeroQuantum: return "ZeroQuantum";
  }
  return "?";
}

inline SecularKind secular_kind_from_string(const std::string& s) {
  if (s == "Auto" || s == "auto") return SecularKind::Auto;
  if (s == "IsingOnly" || s == "ising") return SecularKind::IsingOnly;
  if (s == "ZeroQuantum" || s == "zero_quantum") return SecularKind::ZeroQuantum;
  throw std::invalid_argument("unknown regime '" + s + "'");
}

// sqrt(tau_c / max(w1, w_SE))
inline double default_coarse_grain_dt(double tau_c, double omega1, double omega_se) {
  const double w = std::max(omega1, omega_se);
  if (!(w > 0.0)) throw std::invalid_argument("default dt needs omega1 or omega_se > 0");
  return std::sqrt(tau_c / w);
}

inline SecularKind resolve_secular_mode(const SecularMode& mode, std::size_t a, std::size_t b,
                                        const ChainSpec& chain) {
  if (mode.kind != SecularKind::Auto) return mode.kind;
  if (a >= chain.nsites() || b >= chain.nsites()) throw std::out_of_range("resolve_secular_mode: bad pair");
  const double x = std::abs(chain.larmor[a] - chain.larmor[b]) * mode.coarse_grain_dt;
  return x < 1.0 ? SecularKind::ZeroQuantum : SecularKind::IsingOnly;
}

/// Sum_k w0_k Iz_k (lab frame; the simulation frame removes it).
inline Operator zeeman_hamiltonian(const ChainSpec& chain) {
  const auto s = spin_half_ops();
  const std::size_t n = chain.nsites();
  Operator h = Operator::Zero(static_cast<Eigen::Index>(qubit_dim(n)), static_cast<Eigen::Index>(qubit_dim(n)));
  for (std::size_t k = 0; k < n; ++k) h += chain.larmor[k] * embed(s.Iz, k, n);
  return h;
}

/// 2 pi J Iz Iz, plus -1/4 (I+I- + I-I+) in the zero-quantum regime. Double-quantum terms are dropped.
inline Operator dipolar_hamiltonian(std::size_t a, std::size_t b, double J_hz, SecularKind mode,
                                    std::size_t nsites) {
  if (a >= nsites || b >= nsites || a == b) throw std::invalid_argument("dipolar_hamiltonian: invalid pair");
  if (!(J_hz >= 0.0)) throw std::invalid_argument("dipolar_hamiltonian: J must be >= 0");
  if (mode == SecularKind::Auto) throw std::invalid_argument("dipolar_hamiltonian: mode must be resolved");
  const auto s = spin_half_ops();
  const double wd = 2.0 * PI * J_hz;
  Operator h = wd * embed(s.Iz, a, nsites) * embed(s.Iz, b, nsites);
  if (mode == SecularKind::ZeroQuantum) {
    h -= 0.25 * wd *
         (embed(s.Iplus, a, nsites) * embed(s.Iminus, b, nsites) +
          embed(s.Iminus, a, nsites) * embed(s.Iplus, b, nsites));
  }
  return h;
}

/// Per-pair resolved regimes of a chain.
using ResolvedModes = std::map<std::pair<std::size_t, std::size_t>, SecularKind>;

inline ResolvedModes resolve_all(const SecularMode& mode, const ChainSpec& chain) {
  ResolvedModes out;
  for (const auto& c : chain.couplings) {
    const auto key = std::minmax(c.a, c.b);
    out[{key.first, key.second}] = resolve_secular_mode(mode, c.a, c.b, chain);
  }
  return out;
}

/// Static secular coupling Hamiltonian of the whole chain.
inline Operator coupling_hamiltonian(const ChainSpec& chain, const ResolvedModes& modes) {
  const std::size_t n = chain.nsites();
  const auto d = static_cast<Eigen::Index>(qubit_dim(n));
  Operator h = Operator::Zero(d, d);
  for (const auto& c : chain.couplings) {
    const auto key = std::minmax(c.a, c.b);
    const auto it = modes.find({key.first, key.second});
    if (it == modes.end()) throw std::invalid_argument("coupling_hamiltonian: unresolved pair");
    h += dipolar_hamiltonian(c.a, c.b, c.J_hz, it->second, n);
  }
  return h;
}

/// RWA drive in each spin's Larmor frame: (w1/2) e^{i phi} I-_k at Omega = w0_k - carrier.
inline std::vector<HarmonicComponent> drive_hamiltonian(const DriveSpec& drive, const ChainSpec& chain) {
  std::vector<HarmonicComponent> out;
  if (drive.amplitude == 0.0) return out;
  if (!(drive.amplitude > 0.0)) throw std::invalid_argument("drive: amplitude must be >= 0");
  const auto s = spin_half_ops();
  const std::size_t n = chain.nsites();
  for (auto k : drive.targets) {
    if (k >= n) throw std::out_of_range("drive: target site out of range");
    HarmonicComponent c;
    c.op = 0.5 * drive.amplitude * std::exp(I_UNIT * drive.phase) * embed(s.Iminus, k, n);
    c.freq = drive.carrier ? chain.larmor[k] - *drive.carrier : 0.0;
    c.label = "drive" + std::to_string(k);
    out.push_back(std::move(c));
  }
  return out;
}

/// (w_SE/2)(I+_k S-_k + I-_k S+_k) per spin, resonant local two-level environments.
inline std::vector<HarmonicComponent> system_env_coupling(const ChainSpec& chain, const BathSpec& bath) {
  std::vector<HarmonicComponent> out;
  if (bath.omega_se == 0.0) return out;
  const auto s = spin_half_ops();
  const std::size_t n = chain.nsites();
  for (std::size_t k = 0; k < n; ++k) {
    HarmonicComponent c;
    c.op = 0.5 * bath.omega_se * embed(s.Iplus, k, n);
    c.freq = 0.0;
    c.env = {EnvFactor::Kind::SMinus, k};
    c.label = "se" + std::to_string(k);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace frqme
