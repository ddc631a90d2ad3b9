#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "isingc/circuit.hpp"
#include "isingc/errors.hpp"
#include "isingc/exp_sum.hpp"
#include "isingc/layout.hpp"
#include "isingc/models.hpp"
#include "isingc/overlap.hpp"
#include "isingc/tableau.hpp"

namespace isingc {

/// Bilinear bra of a Pauli eigenstate: X+- (1, +-1)/sqrt2, Y+- (1, -+i)/sqrt2, Z+ (1, 0), Z- (0, 1).
inline LocalBra pauli_bra(PauliBasis basis, int outcome) {
  const double r = std::sqrt(0.5);
  switch (basis) {
    case PauliBasis::X: return {r, outcome * r};
    case PauliBasis::Y: return {r, complex(0.0, -outcome * r)};
    case PauliBasis::Z: break;
  }
  return outcome > 0 ? LocalBra(1.0, 0.0) : LocalBra(0.0, 1.0);
}

struct BranchOptions {
  /// Preferred outcome per cluster site (+1 or -1); empty means +1 everywhere.
  std::vector<int> preferred;
};

/// One measurement branch of a layout, with the data making
///   sigma |target> = scalar * (I (x) <beta|) |C>
/// an exact identity, |scalar| = 2^{r/2}. Output site of target qubit q is layout.output_site[q].
struct BranchCertificate {
  ClusterLayout layout;
  std::vector<int> outcomes;      // per site; 0 on outputs
  std::vector<char> was_random;   // per site
  int r = 0;
  PauliOperator sigma;            // Hermitian, on target qubits
  std::vector<LocalBra> beta_bras;  // per site; outputs hold a placeholder (1, 0)
  ScaledComplex scalar;

  /// scalar / 2^{r/2}, a unit complex number that is a power of exp(i pi / 4).
  complex phase() const { return (scalar * ScaledComplex::sqrt2_pow(-r)).to_complex(); }
};

inline std::vector<std::vector<int>> grid_adjacency(int width, int height) { return Graph::grid(width, height).adjacency(); }

/// Simulates the layout on the W x H cluster state, measures row-major with the preferred
/// outcomes, and solves the Pauli correction against `target`.
inline BranchCertificate execute_branch(const ClusterLayout& layout, const StabilizerTableau& target, const BranchOptions& options = {}) {
  layout.validate();
  const int n = target.num_qubits();
  if (layout.num_outputs() != n) throw std::invalid_argument("execute_branch: layout has " + std::to_string(layout.num_outputs()) + " outputs, target has " + std::to_string(n) + " qubits");
  const int m = layout.num_sites();
  if (!options.preferred.empty() && static_cast<int>(options.preferred.size()) != m) throw std::invalid_argument("execute_branch: preferred outcome list size != site count");

  auto adj = grid_adjacency(layout.width, layout.height);
  StabilizerTableau cluster = graph_state_tableau(adj);
  BranchCertificate cert;
  cert.layout = layout;
  cert.outcomes.assign(static_cast<std::size_t>(m), 0);
  cert.was_random.assign(static_cast<std::size_t>(m), 0);
  cert.beta_bras.assign(static_cast<std::size_t>(m), LocalBra(1.0, 0.0));
  std::vector<PauliBra> bras(static_cast<std::size_t>(m));
  for (int s : layout.measurement_order) {
    int pref = options.preferred.empty() ? 1 : options.preferred[s];
    auto res = cluster.measure(s, layout.roles[s].basis, pref);
    cert.outcomes[s] = res.outcome;
    cert.was_random[s] = res.was_random;
    cert.r += res.was_random;
    cert.beta_bras[s] = pauli_bra(layout.roles[s].basis, res.outcome);
    bras[s] = PauliBra{layout.roles[s].basis, res.outcome};
  }

  try {
    cert.sigma = find_pauli_correction_on(cluster, layout.output_site, target);
  } catch (const NotEquivalentError& e) {
    throw CompileError(std::string("execute_branch: pattern does not prepare target: ") + e.what());
  }

  // Phase convention: the target's first nonzero amplitude (lowest index, qubit q = bit q)
  // is real positive. Greedy Z measurements from the top qubit down find that index x*,
  // and the random-outcome count gives its magnitude. With sigma = i^p X^sx Z^sz,
  // <x* ^ sx| sigma |target> = i^p (-1)^{sz.x*} |<x*|target>|.
  std::vector<int> reference(static_cast<std::size_t>(n), 0);
  int random = 0;
  {
    StabilizerTableau t = target;
    for (int q = n - 1; q >= 0; --q) {
      auto res = t.measure(q, PauliBasis::Z, 1);
      reference[q] = res.outcome < 0;
      random += res.was_random;
    }
  }
  int sign_flips = 0;
  for (int q = 0; q < n; ++q) {
    sign_flips += cert.sigma.z(q) && reference[q];
    bras[layout.output_site[q]] = PauliBra{PauliBasis::Z, (reference[q] ^ cert.sigma.x(q)) ? -1 : 1};
  }
  ExactSum rhs = graph_state_pauli_overlap(adj, bras);
  if (rhs.zero) throw CompileError("execute_branch: branch vector vanishes at the reference amplitude");
  static const complex ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  cert.scalar = ScaledComplex::sqrt2_pow(-random) * ScaledComplex(ipow[(cert.sigma.phase() + 2 * sign_flips) & 3]) / rhs.to_scaled();
  double mag2 = cert.scalar.log2_abs() * 2.0;
  if (std::abs(mag2 - cert.r) > 1e-9) throw CompileError("execute_branch: branch norm is not 2^{-r/2}");
  return cert;
}

/// Convenience: the target is the decorated-graph state and the layout comes from its prep circuit.
inline BranchCertificate execute_branch(const ClusterLayout& layout, const DecoratedGraph& dg, const BranchOptions& options = {}) {
  return execute_branch(layout, decorated_tableau(dg), options);
}

}  // namespace isingc
