#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "isingc/errors.hpp"
#include "isingc/scaled_complex.hpp"

namespace isingc {

/// Simple undirected graph with stable edge indices. Each edge keeps the
/// endpoint order it was given; clock models read that order as orientation.
class Graph {
 public:
  using Edge = std::pair<int, int>;

  Graph() = default;
  Graph(int num_vertices, std::vector<Edge> edges) : n_(num_vertices), edges_(std::move(edges)) { validate(); }

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int index) const { return edges_.at(static_cast<std::size_t>(index)); }

  std::vector<std::vector<int>> adjacency() const {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n_));
    for (auto [a, b] : edges_) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    return adj;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

  static Graph path(int n) {
    std::vector<Edge> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph(n, e);
  }
  static Graph cycle(int n) {
    Graph g = path(n);
    if (n >= 3) g.edges_.emplace_back(n - 1, 0);
    return g;
  }
  static Graph complete(int n) {
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return Graph(n, e);
  }
  /// W x H square grid, sites row-major (index y*W + x).
  static Graph grid(int width, int height) {
    std::vector<Edge> e;
    for (int y = 0; y < height; ++y)
      for (int x = 0; x < width; ++x) {
        int s = y * width + x;
        if (x + 1 < width) e.emplace_back(s, s + 1);
        if (y + 1 < height) e.emplace_back(s, s + width);
      }
    return Graph(width * height, e);
  }

 private:
  void validate() const {
    if (n_ < 0) throw std::invalid_argument("Graph: negative vertex count");
    std::set<std::pair<int, int>> seen;
    for (auto [a, b] : edges_) {
      if (a < 0 || b < 0 || a >= n_ || b >= n_) {
        throw std::invalid_argument("Graph: edge endpoint out of range (" + std::to_string(a) + "," + std::to_string(b) + ")");
      }
      if (a == b) throw std::invalid_argument("Graph: self-loop at vertex " + std::to_string(a));
      if (!seen.insert({std::min(a, b), std::max(a, b)}).second) {
        throw std::invalid_argument("Graph: duplicate edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
      }
    }
  }

  int n_ = 0;
  std::vector<Edge> edges_;
};

namespace detail {
inline void require_finite(const complex& v, const char* what) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw std::invalid_argument(std::string(what) + ": non-finite value");
}
}  // namespace detail

/// Inhomogeneous Ising model in dimensionless form: K_e = beta*J_e, g_v = beta*h_v,
/// with energy convention H = -sum J s_a s_b - sum h s_a.
struct IsingModel {
  Graph graph;
  std::vector<complex> couplings;  // per edge
  std::vector<complex> fields;     // per vertex

  IsingModel() = default;
  IsingModel(Graph g, std::vector<complex> k, std::vector<complex> h)
      : graph(std::move(g)), couplings(std::move(k)), fields(std::move(h)) {
    validate();
  }

  /// Uniform coupling, uniform field.
  static IsingModel uniform(Graph g, complex k, complex h = {0.0, 0.0}) {
    auto ne = static_cast<std::size_t>(g.num_edges());
    auto nv = static_cast<std::size_t>(g.num_vertices());
    return IsingModel(std::move(g), std::vector<complex>(ne, k), std::vector<complex>(nv, h));
  }

  void validate() const {
    if (couplings.size() != static_cast<std::size_t>(graph.num_edges())) throw std::invalid_argument("IsingModel: coupling count != edge count");
    if (fields.size() != static_cast<std::size_t>(graph.num_vertices())) throw std::invalid_argument("IsingModel: field count != vertex count");
    for (auto& k : couplings) detail::require_finite(k, "IsingModel coupling");
    for (auto& h : fields) detail::require_finite(h, "IsingModel field");
  }

  friend bool operator==(const IsingModel&, const IsingModel&) = default;
};

/// q-state model whose edge weights depend on (t_a - t_b) mod q along the stored edge orientation.
struct ClockModel {
  Graph graph;
  int q = 2;
  std::vector<std::vector<complex>> edge_tables;    // [edge][difference]
  std::vector<std::vector<complex>> vertex_tables;  // [vertex][state]

  ClockModel() = default;
  ClockModel(Graph g, int q_states, std::vector<std::vector<complex>> edges, std::vector<std::vector<complex>> vertices)
      : graph(std::move(g)), q(q_states), edge_tables(std::move(edges)), vertex_tables(std::move(vertices)) {
    validate();
  }

  /// Potts model: edge table [e^K, 1, ..., 1]; vertex table [e^g, 1, ..., 1] (field on state 0).
  static ClockModel potts(Graph g, int q_states, const std::vector<complex>& couplings, const std::vector<complex>& fields = {}) {
    std::vector<std::vector<complex>> et, vt;
    for (auto k : couplings) {
      std::vector<complex> row(static_cast<std::size_t>(q_states), 1.0);
      row[0] = std::exp(k);
      et.push_back(row);
    }
    for (int v = 0; v < g.num_vertices(); ++v) {
      std::vector<complex> row(static_cast<std::size_t>(q_states), 1.0);
      if (!fields.empty()) row[0] = std::exp(fields.at(static_cast<std::size_t>(v)));
      vt.push_back(row);
    }
    return ClockModel(std::move(g), q_states, std::move(et), std::move(vt));
  }

  /// The q = 2 clock encoding of an Ising model: difference 0 is "agree".
  static ClockModel from_ising(const IsingModel& m) {
    std::vector<std::vector<complex>> et, vt;
    for (auto k : m.couplings) et.push_back({std::exp(k), std::exp(-k)});
    for (auto h : m.fields) vt.push_back({std::exp(h), std::exp(-h)});
    return ClockModel(m.graph, 2, std::move(et), std::move(vt));
  }

  void validate() const {
    if (q < 2) throw std::invalid_argument("ClockModel: q must be >= 2");
    if (edge_tables.size() != static_cast<std::size_t>(graph.num_edges())) throw std::invalid_argument("ClockModel: edge table count != edge count");
    if (vertex_tables.size() != static_cast<std::size_t>(graph.num_vertices())) throw std::invalid_argument("ClockModel: vertex table count != vertex count");
    for (auto& t : edge_tables) {
      if (t.size() != static_cast<std::size_t>(q)) throw std::invalid_argument("ClockModel: edge table length != q");
      for (auto& v : t) detail::require_finite(v, "ClockModel edge weight");
    }
    for (auto& t : vertex_tables) {
      if (t.size() != static_cast<std::size_t>(q)) throw std::invalid_argument("ClockModel: vertex table length != q");
      for (auto& v : t) detail::require_finite(v, "ClockModel vertex weight");
    }
  }

  friend bool operator==(const ClockModel&, const ClockModel&) = default;
};

inline constexpr int kDefaultEnumerationBits = 26;

/// Z = sum_s exp(sum_e K_e s_a s_b + sum_v g_v s_v) by exhaustive enumeration.
/// Configuration index bit (N-1-v) is vertex v (vertex 0 most significant); bit 0 means s = +1.
inline ScaledComplex brute_force_z_ising(const IsingModel& model, int max_bits = kDefaultEnumerationBits) {
  const int n = model.graph.num_vertices();
  if (n > max_bits) throw SizeBoundError("brute_force_z_ising: too large for enumeration, |V|", n, max_bits);
  const auto& edges = model.graph.edges();
  ScaledComplex total;
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<int> spin(static_cast<std::size_t>(n));
  for (std::uint64_t cfg = 0; cfg < count; ++cfg) {
    for (int v = 0; v < n; ++v) spin[v] = ((cfg >> (n - 1 - v)) & 1U) ? -1 : 1;
    complex exponent{0.0, 0.0};
    for (std::size_t e = 0; e < edges.size(); ++e) exponent += model.couplings[e] * double(spin[edges[e].first] * spin[edges[e].second]);
    for (int v = 0; v < n; ++v) exponent += model.fields[v] * double(spin[v]);
    total += ScaledComplex::exp(exponent);
  }
  return total;
}

/// Z = sum_t prod_e table_e[(t_a - t_b) mod q] prod_v table_v[t_v], vertex 0 most significant digit.
inline ScaledComplex brute_force_z_clock(const ClockModel& model, int max_bits = kDefaultEnumerationBits) {
  const int n = model.graph.num_vertices();
  const double bits = n * std::log2(static_cast<double>(model.q));
  if (bits > max_bits + 1e-9) throw SizeBoundError("brute_force_z_clock: too large for enumeration, log2(q^|V|)", static_cast<long long>(std::ceil(bits)), max_bits);
  const auto& edges = model.graph.edges();
  std::vector<int> t(static_cast<std::size_t>(n), 0);
  ScaledComplex total;
  while (true) {
    ScaledComplex term(1.0);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      int d = ((t[edges[e].first] - t[edges[e].second]) % model.q + model.q) % model.q;
      term *= model.edge_tables[e][d];
    }
    for (int v = 0; v < n; ++v) term *= model.vertex_tables[v][t[v]];
    total += term;
    int pos = n - 1;  // increment the least significant digit (last vertex)
    while (pos >= 0 && ++t[pos] == model.q) t[pos--] = 0;
    if (pos < 0) break;
  }
  return total;
}

struct RandomModelShape {
  int max_vertices = 4;
  int max_edges = 6;
  double bound = 2.0;  // |Re|, |Im| of every coupling and field
  int min_vertices = 1;
};

/// Deterministic pseudo-random complex Ising model; identical seeds give identical models.
inline IsingModel random_model(std::uint64_t seed, const RandomModelShape& shape = {}) {
  if (shape.max_vertices < 1 || shape.max_edges < 0 || shape.min_vertices > shape.max_vertices || shape.min_vertices < 1) {
    throw std::invalid_argument("random_model: invalid shape bounds");
  }
  std::mt19937_64 rng(seed);
  auto uniform_int = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  std::uniform_real_distribution<double> value(-shape.bound, shape.bound);

  int n = uniform_int(shape.min_vertices, shape.max_vertices);
  std::vector<Graph::Edge> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  std::shuffle(pairs.begin(), pairs.end(), rng);
  int m = uniform_int(0, std::min<int>(shape.max_edges, static_cast<int>(pairs.size())));
  pairs.resize(static_cast<std::size_t>(m));
  std::sort(pairs.begin(), pairs.end());

  std::vector<complex> k, h;
  for (int e = 0; e < m; ++e) k.emplace_back(value(rng), value(rng));
  for (int v = 0; v < n; ++v) h.emplace_back(value(rng), value(rng));
  return IsingModel(Graph(n, pairs), std::move(k), std::move(h));
}

}  // namespace isingc
