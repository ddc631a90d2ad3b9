#pragma once

// Dense reference computations used only by the tests. Independent of the tableau,
// exponential-sum and transfer-matrix code paths.

#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include "isingc/branch.hpp"
#include "isingc/models.hpp"
#include "isingc/overlap.hpp"

namespace oracle {

using isingc::complex;

/// Graph state amplitudes 2^{-n/2} (-1)^{#edges inside z}; qubit q is bit q.
inline std::vector<complex> graph_state(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<complex> psi(std::size_t{1} << n);
  const double amp = std::pow(2.0, -0.5 * n);
  for (std::uint64_t z = 0; z < psi.size(); ++z) {
    int parity = 0;
    for (int a = 0; a < n; ++a)
      for (int b : adj[a])
        if (b > a) parity ^= static_cast<int>(((z >> a) & (z >> b)) & 1U);
    psi[z] = parity ? -amp : amp;
  }
  return psi;
}

/// (I_out (x) <beta|) |C> for a certificate, indexed by target qubits (bit q = output of qubit q).
inline std::vector<complex> branch_vector(const isingc::BranchCertificate& cert) {
  const auto& L = cert.layout;
  auto cluster = graph_state(isingc::grid_adjacency(L.width, L.height));
  const int n = L.num_outputs();
  std::vector<complex> out(std::size_t{1} << n, 0.0);
  for (std::uint64_t z = 0; z < cluster.size(); ++z) {
    complex w = cluster[z];
    std::uint64_t idx = 0;
    for (int s = 0; s < L.num_sites(); ++s) {
      int bit = static_cast<int>((z >> s) & 1U);
      if (L.roles[s].output) {
        if (bit) idx |= std::uint64_t{1} << L.roles[s].qubit;
      } else {
        w *= cert.beta_bras[s][bit];
      }
    }
    out[idx] += w;
  }
  return out;
}

inline double max_abs_diff(const std::vector<complex>& a, const std::vector<complex>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

/// Dense check of sigma |target> = scalar (I (x) <beta|) |C>; returns the max amplitude error.
inline double branch_identity_error(const isingc::BranchCertificate& cert, const std::vector<complex>& target) {
  auto lhs = cert.sigma.apply(target);
  auto rhs = branch_vector(cert);
  complex c = cert.scalar.to_complex();
  for (auto& v : rhs) v *= c;
  return max_abs_diff(lhs, rhs);
}

/// Dense state vector of a circuit applied to |+>^n (qubit q = bit q).
inline std::vector<complex> run_circuit(const isingc::CliffordCircuit& circ) {
  const int n = circ.num_wires();
  std::vector<complex> psi(std::size_t{1} << n, std::pow(2.0, -0.5 * n));
  const double r = std::sqrt(0.5);
  for (const auto& g : circ.gates()) {
    std::uint64_t ma = std::uint64_t{1} << g.a;
    std::uint64_t mb = g.b >= 0 ? std::uint64_t{1} << g.b : 0;
    switch (g.kind) {
      case isingc::GateKind::H:
        for (std::uint64_t z = 0; z < psi.size(); ++z)
          if (!(z & ma)) {
            complex a0 = psi[z], a1 = psi[z | ma];
            psi[z] = r * (a0 + a1);
            psi[z | ma] = r * (a0 - a1);
          }
        break;
      case isingc::GateKind::S:
        for (std::uint64_t z = 0; z < psi.size(); ++z)
          if (z & ma) psi[z] *= complex(0, 1);
        break;
      case isingc::GateKind::CZ:
        for (std::uint64_t z = 0; z < psi.size(); ++z)
          if ((z & ma) && (z & mb)) psi[z] = -psi[z];
        break;
      case isingc::GateKind::SWAP:
        for (std::uint64_t z = 0; z < psi.size(); ++z)
          if ((z & ma) && !(z & mb)) std::swap(psi[z], psi[(z ^ ma) | mb]);
        break;
    }
  }
  return psi;
}

/// Rotates a vector so its first nonzero amplitude is real positive.
inline std::vector<complex> canonical_phase(std::vector<complex> v) {
  for (auto a : v)
    if (std::abs(a) > 1e-9) {
      complex ph = std::abs(a) / a;
      for (auto& b : v) b *= ph;
      break;
    }
  return v;
}

}  // namespace oracle
