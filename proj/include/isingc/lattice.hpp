#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "isingc/errors.hpp"
#include "isingc/models.hpp"
#include "isingc/scaled_complex.hpp"

namespace isingc {

/// Edge weights: u0 when the endpoint spins agree, u1 when they differ.
struct EdgeWeight {
  int a = 0;
  int b = 0;
  complex u0{1.0, 0.0};
  complex u1{1.0, 0.0};
  friend bool operator==(const EdgeWeight&, const EdgeWeight&) = default;
};

/// Site weights for spin up (bit 0) and down (bit 1). A zero entry pins the spin.
struct SiteWeight {
  complex w0{1.0, 0.0};
  complex w1{1.0, 0.0};

  /// +1 / -1 for a pinned spin, nullopt for a free one.
  std::optional<int> fixed_spin() const {
    if (w1 == complex(0.0, 0.0)) return 1;
    if (w0 == complex(0.0, 0.0)) return -1;
    return std::nullopt;
  }
  friend bool operator==(const SiteWeight&, const SiteWeight&) = default;
};

/// Square-lattice instance; sites row-major (y * W + x), edges in Graph::grid order.
///
/// Z2D = global_scale * sum_t prod_edges u^{(t_a xor t_b)} prod_sites w^{(t_v)}.
struct Ising2DInstance {
  int width = 0;
  int height = 0;
  std::vector<EdgeWeight> edges;
  std::vector<SiteWeight> sites;
  ScaledComplex global_scale{1.0};

  int num_sites() const { return width * height; }

  /// All edges (u0, u1), all sites (w0, w1).
  static Ising2DInstance uniform(int width, int height, complex u0, complex u1, complex w0 = 1.0, complex w1 = 1.0) {
    Ising2DInstance inst;
    inst.width = width;
    inst.height = height;
    const Graph grid = Graph::grid(width, height);
    for (auto [a, b] : grid.edges()) inst.edges.push_back({a, b, u0, u1});
    inst.sites.assign(static_cast<std::size_t>(width) * height, SiteWeight{w0, w1});
    inst.validate();
    return inst;
  }

  void validate() const {
    if (width <= 0 || height <= 0) throw std::invalid_argument("Ising2DInstance: dimensions must be positive");
    if (static_cast<int>(sites.size()) != num_sites()) throw std::invalid_argument("Ising2DInstance: site count != W*H");
    const auto expected = Graph::grid(width, height).edges();
    if (edges.size() != expected.size()) throw std::invalid_argument("Ising2DInstance: edge count != W(H-1) + H(W-1)");
    const complex zero{0.0, 0.0};
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (edges[e].a != expected[e].first || edges[e].b != expected[e].second) {
        throw std::invalid_argument("Ising2DInstance: edge " + std::to_string(e) + " is not the lattice edge (" + std::to_string(expected[e].first) + "," + std::to_string(expected[e].second) + ")");
      }
      if (edges[e].u0 == zero && edges[e].u1 == zero) throw std::invalid_argument("Ising2DInstance: edge weight pair (0, 0)");
    }
    for (const auto& s : sites)
      if (s.w0 == zero && s.w1 == zero) throw std::invalid_argument("Ising2DInstance: site weight pair (0, 0)");
  }

  /// Derived parameters: beta J' = Log(u0/u1) / 2 and beta h' = Log(w0/w1) / 2, principal branch.
  /// Undefined (nullopt) where a weight vanishes. The branch choice is not observable in Z.
  struct CouplingsView {
    std::vector<std::optional<complex>> couplings;
    std::vector<std::optional<complex>> fields;
  };
  CouplingsView couplings_view() const {
    CouplingsView v;
    const complex zero{0.0, 0.0};
    for (const auto& e : edges) v.couplings.push_back(e.u0 == zero || e.u1 == zero ? std::nullopt : std::optional<complex>(0.5 * std::log(e.u0 / e.u1)));
    for (const auto& s : sites) v.fields.push_back(s.w0 == zero || s.w1 == zero ? std::nullopt : std::optional<complex>(0.5 * std::log(s.w0 / s.w1)));
    return v;
  }

  /// Same instance with rows and columns exchanged.
  Ising2DInstance transpose() const {
    Ising2DInstance t;
    t.width = height;
    t.height = width;
    t.global_scale = global_scale;
    auto map = [&](int s) { return (s % width) * height + s / width; };
    t.sites.resize(sites.size());
    for (int s = 0; s < num_sites(); ++s) t.sites[map(s)] = sites[s];
    std::map<std::pair<int, int>, const EdgeWeight*> by_pair;
    for (const auto& e : edges) {
      int a = map(e.a), b = map(e.b);
      by_pair[{std::min(a, b), std::max(a, b)}] = &e;
    }
    const Graph grid = Graph::grid(t.width, t.height);
    for (auto [a, b] : grid.edges()) {
      const EdgeWeight* src = by_pair.at({a, b});
      t.edges.push_back({a, b, src->u0, src->u1});
    }
    return t;
  }

  friend bool operator==(const Ising2DInstance& x, const Ising2DInstance& y) {
    return x.width == y.width && x.height == y.height && x.edges == y.edges && x.sites == y.sites && x.global_scale == y.global_scale;
  }
};

struct EvalReport {
  ScaledComplex value;
  std::string method;
  long long states = 0;  // frontier states (transfer matrix) or configurations (enumeration)
  int columns = 0;       // lattice rows swept
  double seconds = 0.0;
};

inline constexpr int kBruteMaxSites = 24;
inline constexpr int kTransferMaxWidth = 22;

namespace detail {

/// Weight pairs divided by their larger entry; the divisors are collected in `scale`.
struct NormalizedWeights {
  std::vector<std::array<complex, 2>> edge, site;
  ScaledComplex scale{1.0};

  explicit NormalizedWeights(const Ising2DInstance& inst) : scale(inst.global_scale) {
    auto norm = [&](complex a, complex b) {
      complex d = std::abs(a) >= std::abs(b) ? a : b;
      scale *= d;
      return std::array<complex, 2>{a / d, b / d};
    };
    for (const auto& e : inst.edges) edge.push_back(norm(e.u0, e.u1));
    for (const auto& s : inst.sites) site.push_back(norm(s.w0, s.w1));
  }
};

}  // namespace detail

/// Exhaustive sum over all 2^{W H} configurations; bit v of the index is site v.
inline ScaledComplex eval_brute(const Ising2DInstance& inst) {
  inst.validate();
  const int n = inst.num_sites();
  if (n > kBruteMaxSites) throw SizeBoundError("eval_brute: sites", n, kBruteMaxSites);
  detail::NormalizedWeights nw(inst);
  complex total{0.0, 0.0};
  for (std::uint64_t t = 0; t < (std::uint64_t{1} << n); ++t) {
    complex term{1.0, 0.0};
    for (std::size_t e = 0; e < inst.edges.size(); ++e) term *= nw.edge[e][((t >> inst.edges[e].a) ^ (t >> inst.edges[e].b)) & 1U];
    for (int v = 0; v < n; ++v) term *= nw.site[v][(t >> v) & 1U];
    total += term;
  }
  return ScaledComplex(total) * nw.scale;
}

/// Row-by-row sweep with a 2^{min(W,H)} frontier, one site at a time, renormalized each row.
inline EvalReport eval_transfer_matrix(const Ising2DInstance& input) {
  input.validate();
  auto t0 = std::chrono::steady_clock::now();
  const Ising2DInstance inst = input.width <= input.height ? input : input.transpose();
  const int w = inst.width;
  if (w > kTransferMaxWidth) throw SizeBoundError("eval_transfer_matrix: min(W, H)", w, kTransferMaxWidth);
  detail::NormalizedWeights nw(inst);
  std::vector<int> left(static_cast<std::size_t>(inst.num_sites()), -1), up(static_cast<std::size_t>(inst.num_sites()), -1);
  for (std::size_t e = 0; e < inst.edges.size(); ++e) {
    const auto& ed = inst.edges[e];
    (ed.b == ed.a + 1 && ed.b % w != 0 ? left : up)[ed.b] = static_cast<int>(e);
  }

  const std::size_t states = std::size_t{1} << w;
  std::vector<complex> vec(states, 0.0), next(states);
  vec[0] = 1.0;
  long long exponent = 0;
  for (int y = 0; y < inst.height; ++y) {
    for (int x = 0; x < w; ++x) {
      const int v = y * w + x;
      const std::size_t bx = std::size_t{1} << x;
      const std::size_t bl = x > 0 ? std::size_t{1} << (x - 1) : 0;
      const auto& sw = nw.site[v];
      const std::array<complex, 2> ul = left[v] >= 0 ? nw.edge[left[v]] : std::array<complex, 2>{1.0, 1.0};
      const std::array<complex, 2> uu = up[v] >= 0 ? nw.edge[up[v]] : std::array<complex, 2>{1.0, 1.0};
      std::fill(next.begin(), next.end(), complex(0.0, 0.0));
      for (std::size_t s = 0; s < states; ++s) {
        const complex a = vec[s];
        if (a == complex(0.0, 0.0)) continue;
        const int old = (s & bx) ? 1 : 0;
        const int lft = (s & bl) ? 1 : 0;
        const std::size_t base = s & ~bx;
        for (int t = 0; t < 2; ++t) {
          complex wgt = sw[t] * uu[t ^ old];
          if (x > 0) wgt *= ul[t ^ lft];
          next[base | (t ? bx : 0)] += a * wgt;
        }
      }
      vec.swap(next);
    }
    double peak = 0.0;
    for (const auto& a : vec) peak = std::max(peak, std::max(std::abs(a.real()), std::abs(a.imag())));
    if (peak == 0.0) break;
    int e = 0;
    std::frexp(peak, &e);
    for (auto& a : vec) a = complex(std::ldexp(a.real(), -e), std::ldexp(a.imag(), -e));
    exponent += e;
  }
  complex total{0.0, 0.0};
  for (const auto& a : vec) total += a;
  EvalReport rep;
  rep.value = ScaledComplex(total) * ScaledComplex::pow2(exponent) * nw.scale;
  rep.method = "transfer-matrix";
  rep.states = static_cast<long long>(states);
  rep.columns = inst.height;
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

/// True iff every edge pair is (1, +i) or (1, -i) to within tol.
inline bool edge_ratios_homogeneous(const Ising2DInstance& inst, double tol = 1e-12) {
  for (const auto& e : inst.edges) {
    if (std::abs(e.u0 - complex(1.0, 0.0)) > tol) return false;
    if (std::abs(e.u1 - complex(0.0, 1.0)) > tol && std::abs(e.u1 - complex(0.0, -1.0)) > tol) return false;
  }
  return true;
}

}  // namespace isingc
