#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "isingc/errors.hpp"
#include "isingc/models.hpp"
#include "isingc/scaled_complex.hpp"

namespace isingc {

/// The graph with one extra vertex placed on every edge.
///
/// Qubits 0..|V|-1 are the original vertices; qubit |V|+e sits on edge e and
/// is adjacent to exactly that edge's two endpoints.
class DecoratedGraph {
 public:
  explicit DecoratedGraph(Graph source) : source_(std::move(source)) {}

  const Graph& source() const { return source_; }
  int num_vertex_qubits() const { return source_.num_vertices(); }
  int num_edge_qubits() const { return source_.num_edges(); }
  int num_qubits() const { return num_vertex_qubits() + num_edge_qubits(); }
  int edge_qubit(int edge_index) const { return num_vertex_qubits() + edge_index; }
  bool is_edge_qubit(int q) const { return q >= num_vertex_qubits(); }

  /// Adjacency of the decorated graph.
  std::vector<std::vector<int>> adjacency() const {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(num_qubits()));
    for (int e = 0; e < num_edge_qubits(); ++e) {
      auto [a, b] = source_.edge(e);
      int q = edge_qubit(e);
      adj[a].push_back(q);
      adj[b].push_back(q);
      adj[q] = {a, b};
    }
    return adj;
  }

  /// Decorated-graph edge list, (vertex, edge-qubit) pairs in edge order.
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int e = 0; e < num_edge_qubits(); ++e) {
      auto [a, b] = source_.edge(e);
      out.emplace_back(a, edge_qubit(e));
      out.emplace_back(b, edge_qubit(e));
    }
    return out;
  }

  std::vector<int> edge_qubits() const {
    std::vector<int> out;
    for (int e = 0; e < num_edge_qubits(); ++e) out.push_back(edge_qubit(e));
    return out;
  }

 private:
  Graph source_;
};

inline DecoratedGraph decorate(const Graph& graph) { return DecoratedGraph(graph); }

/// Row coefficients (w0, w1) applied to |0>, |1> with no conjugation.
struct LocalBra {
  complex w0{1.0, 0.0};
  complex w1{1.0, 0.0};

  LocalBra() = default;
  LocalBra(complex a, complex b) : w0(a), w1(b) {
    if (a == complex(0.0, 0.0) && b == complex(0.0, 0.0)) throw std::invalid_argument("LocalBra: (0, 0) is not a bra");
  }
  complex operator[](int bit) const { return bit ? w1 : w0; }
  friend bool operator==(const LocalBra&, const LocalBra&) = default;
};

/// One LocalBra per qubit plus an overall scale.
struct ProductBra {
  std::vector<LocalBra> factors;
  ScaledComplex scale{1.0};

  ProductBra() = default;
  explicit ProductBra(std::vector<LocalBra> f, ScaledComplex s = ScaledComplex(1.0)) : factors(std::move(f)), scale(s) {}
  int num_qubits() const { return static_cast<int>(factors.size()); }
};

/// Edge qubit ab gets (e^K, e^-K); vertex qubit a gets (e^g, e^-g).
inline ProductBra alpha_from_model(const IsingModel& model) {
  DecoratedGraph dg(model.graph);
  std::vector<LocalBra> f(static_cast<std::size_t>(dg.num_qubits()));
  for (int v = 0; v < dg.num_vertex_qubits(); ++v) f[v] = LocalBra(std::exp(model.fields[v]), std::exp(-model.fields[v]));
  for (int e = 0; e < dg.num_edge_qubits(); ++e) {
    f[dg.edge_qubit(e)] = LocalBra(std::exp(model.couplings[e]), std::exp(-model.couplings[e]));
  }
  return ProductBra(std::move(f));
}

/// <bra|phi> where |phi> = 2^{-|V|/2} sum_t |t>|B^T t> is the decorated graph state
/// (Hadamard-twisted on edge qubits). Bilinear: bra entries are not conjugated.
inline ScaledComplex overlap_decorated(const DecoratedGraph& dg, const ProductBra& bra, int max_bits = kDefaultEnumerationBits) {
  if (bra.num_qubits() != dg.num_qubits()) {
    throw std::invalid_argument("overlap_decorated: bra covers " + std::to_string(bra.num_qubits()) + " qubits, graph has " + std::to_string(dg.num_qubits()));
  }
  const int nv = dg.num_vertex_qubits();
  if (nv > max_bits) throw SizeBoundError("overlap_decorated: |V|", nv, max_bits);
  const auto& edges = dg.source().edges();
  ScaledComplex sum;
  const std::uint64_t count = std::uint64_t{1} << nv;
  for (std::uint64_t t = 0; t < count; ++t) {
    auto bit = [&](int v) { return static_cast<int>((t >> v) & 1U); };
    ScaledComplex term(1.0);
    complex run{1.0, 0.0};
    int since = 0;
    auto mul = [&](complex w) {
      run *= w;
      if (++since == 16) {
        term *= run;
        run = 1.0;
        since = 0;
      }
    };
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) mul(bra.factors[dg.edge_qubit(e)][bit(edges[e].first) ^ bit(edges[e].second)]);
    for (int v = 0; v < nv; ++v) mul(bra.factors[v][bit(v)]);
    term *= run;
    sum += term;
  }
  return sum * ScaledComplex::sqrt2_pow(-nv) * bra.scale;
}

/// Z = 2^{|V|/2} <alpha|phi_decorated>.
inline ScaledComplex z_via_overlap(const IsingModel& model, int max_bits = kDefaultEnumerationBits) {
  DecoratedGraph dg = decorate(model.graph);
  return ScaledComplex::sqrt2_pow(dg.num_vertex_qubits()) * overlap_decorated(dg, alpha_from_model(model), max_bits);
}

/// Dense amplitude vector of the decorated graph state; qubit q is bit q of the index.
inline std::vector<complex> decorated_state_vector(const DecoratedGraph& dg) {
  const int n = dg.num_qubits();
  if (n > 24) throw SizeBoundError("decorated_state_vector: qubits", n, 24);
  const int nv = dg.num_vertex_qubits();
  std::vector<complex> psi(std::size_t{1} << n, 0.0);
  const double amp = std::pow(2.0, -0.5 * nv);
  for (std::uint64_t t = 0; t < (std::uint64_t{1} << nv); ++t) {
    std::uint64_t index = t;
    for (int e = 0; e < dg.num_edge_qubits(); ++e) {
      auto [a, b] = dg.source().edge(e);
      if (((t >> a) ^ (t >> b)) & 1U) index |= std::uint64_t{1} << dg.edge_qubit(e);
    }
    psi[index] = amp;
  }
  return psi;
}

/// Bilinear overlap of a product of q-dimensional bras with the qudit decorated state
/// |phi^q> = q^{-|V|/2} sum_t |t>_V |(t_a - t_b) mod q>_E.
inline ScaledComplex qudit_overlap_decorated(const Graph& graph, int q, const std::vector<std::vector<complex>>& vertex_bras,
                                             const std::vector<std::vector<complex>>& edge_bras, int max_bits = kDefaultEnumerationBits) {
  const int nv = graph.num_vertices();
  const double bits = nv * std::log2(static_cast<double>(q));
  if (bits > max_bits + 1e-9) throw SizeBoundError("qudit_overlap_decorated: log2(q^|V|)", static_cast<long long>(std::ceil(bits)), max_bits);
  std::vector<int> t(static_cast<std::size_t>(nv), 0);
  std::vector<int> diff(static_cast<std::size_t>(graph.num_edges()));
  ScaledComplex sum;
  while (true) {
    for (int e = 0; e < graph.num_edges(); ++e) {
      auto [a, b] = graph.edge(e);
      diff[e] = ((t[a] - t[b]) % q + q) % q;
    }
    ScaledComplex term(1.0);
    for (int e = 0; e < graph.num_edges(); ++e) term *= edge_bras[e][diff[e]];
    for (int v = 0; v < nv; ++v) term *= vertex_bras[v][t[v]];
    sum += term;
    int pos = 0;  // vertex 0 is the fastest digit here
    while (pos < nv && ++t[pos] == q) t[pos++] = 0;
    if (pos == nv) break;
  }
  ScaledComplex norm = ScaledComplex::exp(complex(-0.5 * nv * std::log(static_cast<double>(q)), 0.0));
  return sum * norm;
}

/// Z = q^{|V|/2} <chi|phi^q>, with chi built from the clock model's weight tables.
inline ScaledComplex z_clock_via_overlap(const ClockModel& model, int max_bits = kDefaultEnumerationBits) {
  ScaledComplex ov = qudit_overlap_decorated(model.graph, model.q, model.vertex_tables, model.edge_tables, max_bits);
  return ov * ScaledComplex::exp(complex(0.5 * model.graph.num_vertices() * std::log(static_cast<double>(model.q)), 0.0));
}

}  // namespace isingc
