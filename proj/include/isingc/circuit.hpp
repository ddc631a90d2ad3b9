#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "isingc/overlap.hpp"
#include "isingc/tableau.hpp"

namespace isingc {

enum class GateKind { H, S, CZ, SWAP };

struct Gate {
  GateKind kind = GateKind::H;
  int a = 0;
  int b = -1;  // second wire for CZ and SWAP

  bool two_qubit() const { return kind == GateKind::CZ || kind == GateKind::SWAP; }
  friend bool operator==(const Gate&, const Gate&) = default;
};

/// Gate list acting on |+>^n.
class CliffordCircuit {
 public:
  CliffordCircuit() = default;
  explicit CliffordCircuit(int wires) : n_(wires) {
    if (wires < 0) throw std::invalid_argument("CliffordCircuit: negative wire count");
  }

  int num_wires() const { return n_; }
  const std::vector<Gate>& gates() const { return gates_; }

  CliffordCircuit& h(int q) { return add({GateKind::H, q, -1}); }
  CliffordCircuit& s(int q) { return add({GateKind::S, q, -1}); }
  CliffordCircuit& cz(int a, int b) { return add({GateKind::CZ, a, b}); }
  CliffordCircuit& swap(int a, int b) { return add({GateKind::SWAP, a, b}); }

  CliffordCircuit& add(Gate g) {
    auto check = [&](int q) {
      if (q < 0 || q >= n_) throw std::out_of_range("CliffordCircuit: wire " + std::to_string(q) + " out of range");
    };
    check(g.a);
    if (g.two_qubit()) {
      check(g.b);
      if (g.a == g.b) throw std::invalid_argument("CliffordCircuit: two-qubit gate on a single wire");
    }
    gates_.push_back(g);
    return *this;
  }

  int count(GateKind k) const {
    int c = 0;
    for (const auto& g : gates_) c += g.kind == k;
    return c;
  }

  /// Stabilizer tableau of C|+>^n.
  StabilizerTableau run() const {
    StabilizerTableau t = StabilizerTableau::all_plus(n_);
    for (const auto& g : gates_) {
      switch (g.kind) {
        case GateKind::H: t.apply_h(g.a); break;
        case GateKind::S: t.apply_s(g.a); break;
        case GateKind::CZ: t.apply_cz(g.a, g.b); break;
        case GateKind::SWAP: t.apply_swap(g.a, g.b); break;
      }
    }
    return t;
  }

 private:
  int n_ = 0;
  std::vector<Gate> gates_;
};

/// CZ onto each edge qubit from both endpoints, then H on every edge qubit. 3|E| gates.
inline CliffordCircuit synthesize_prep_circuit(const DecoratedGraph& dg) {
  CliffordCircuit c(dg.num_qubits());
  for (int e = 0; e < dg.num_edge_qubits(); ++e) {
    auto [a, b] = dg.source().edge(e);
    c.cz(a, dg.edge_qubit(e));
    c.cz(b, dg.edge_qubit(e));
  }
  for (int q : dg.edge_qubits()) c.h(q);
  return c;
}

/// Tableau of the decorated-graph state: graph state of G~ with H on the edge qubits.
inline StabilizerTableau decorated_tableau(const DecoratedGraph& dg) {
  auto hs = dg.edge_qubits();
  return graph_state_tableau(dg.adjacency(), hs);
}

}  // namespace isingc
