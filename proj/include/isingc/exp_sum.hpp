#pragma once

#include <bit>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "isingc/pauli.hpp"
#include "isingc/scaled_complex.hpp"

namespace isingc {

/// Q(z) = constant + sum_j linear[j] z_j + 2 sum_{(i,j) in quadratic} z_i z_j, read mod 4.
struct QuadraticForm {
  int num_vars = 0;
  std::vector<int> linear;
  std::vector<std::pair<int, int>> quadratic;
  int constant = 0;

  explicit QuadraticForm(int n = 0) : num_vars(n), linear(static_cast<std::size_t>(n), 0) {}

  /// Direct evaluation at one assignment (bit j of z is z_j), for testing.
  int evaluate(std::uint64_t z) const {
    int q = constant;
    for (int j = 0; j < num_vars; ++j)
      if ((z >> j) & 1U) q += linear[j];
    for (auto [a, b] : quadratic)
      if (((z >> a) & (z >> b)) & 1U) q += 2;
    return ((q % 4) + 4) % 4;
  }
};

/// Exact value 0 or sqrt(2)^sqrt2_power * exp(i pi phase8 / 4).
struct ExactSum {
  bool zero = false;
  long long sqrt2_power = 0;
  int phase8 = 0;

  ScaledComplex to_scaled() const {
    if (zero) return ScaledComplex();
    double angle = std::numbers::pi * phase8 / 4.0;
    return ScaledComplex::sqrt2_pow(sqrt2_power) * ScaledComplex(complex(std::cos(angle), std::sin(angle)));
  }
  complex to_complex() const { return to_scaled().to_complex(); }
};

namespace detail {

class BitMatrix {
 public:
  explicit BitMatrix(int n) : n_(n), w_((n + 63) / 64), bits_(static_cast<std::size_t>(n) * w_, 0) {}
  std::uint64_t* row(int i) { return bits_.data() + static_cast<std::size_t>(i) * w_; }
  bool get(int i, int j) const { return (bits_[static_cast<std::size_t>(i) * w_ + (j >> 6)] >> (j & 63)) & 1U; }
  void flip(int i, int j) { row(i)[j >> 6] ^= std::uint64_t{1} << (j & 63); }
  int words() const { return w_; }
  std::vector<int> members(int i) {
    std::vector<int> out;
    auto* r = row(i);
    for (int w = 0; w < w_; ++w)
      for (std::uint64_t m = r[w]; m; m &= m - 1) out.push_back(w * 64 + std::countr_zero(m));
    return out;
  }
  std::vector<std::uint64_t> mask(const std::vector<int>& set) const {
    std::vector<std::uint64_t> m(static_cast<std::size_t>(w_), 0);
    for (int i : set) m[i >> 6] |= std::uint64_t{1} << (i & 63);
    return m;
  }
  void xor_row(int i, const std::vector<std::uint64_t>& m) {
    auto* r = row(i);
    for (int w = 0; w < w_; ++w) r[w] ^= m[w];
  }
  void remove(int v) {
    for (int j : members(v)) flip(j, v);
    auto* r = row(v);
    for (int w = 0; w < w_; ++w) r[w] = 0;
  }

 private:
  int n_;
  int w_;
  std::vector<std::uint64_t> bits_;
};

}  // namespace detail

/// sum_{z in {0,1}^n} i^{Q(z)} in closed form by eliminating one variable at a time.
/// Cost O(n^3 / 64) worst case.
inline ExactSum exact_quadratic_sum(const QuadraticForm& form) {
  const int n = form.num_vars;
  if (static_cast<int>(form.linear.size()) != n) throw std::invalid_argument("exact_quadratic_sum: linear size != num_vars");
  detail::BitMatrix adj(n);
  std::vector<int> c(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) c[j] = form.linear[j] & 3;
  int constant = form.constant & 3;
  for (auto [a, b] : form.quadratic) {
    if (a < 0 || b < 0 || a >= n || b >= n) throw std::out_of_range("exact_quadratic_sum: variable index");
    if (a == b) {
      c[a] = (c[a] + 2) & 3;  // z^2 = z
    } else {
      adj.flip(a, b);
      adj.flip(b, a);
    }
  }

  ExactSum out;
  std::vector<char> alive(static_cast<std::size_t>(n), 1);
  auto toggle_pairs = [&](const std::vector<int>& set) {
    auto m = adj.mask(set);
    for (int i : set) {
      adj.xor_row(i, m);
      adj.flip(i, i);
    }
  };

  for (int k = 0; k < n; ++k) {
    if (!alive[k]) continue;
    std::vector<int> nk = adj.members(k);
    const int ck = c[k];
    if (ck & 1) {
      // sum_{z_k} i^{z_k (c_k + 2y)} = (1 + i^{c_k}) i^{-c_k parity(y)}
      out.sqrt2_power += 1;
      out.phase8 += ck == 1 ? 1 : 7;
      for (int j : nk) c[j] = (c[j] - ck + 4) & 3;
      toggle_pairs(nk);
      adj.remove(k);
      alive[k] = 0;
      continue;
    }
    const int beta0 = ck >> 1;
    if (nk.empty()) {
      if (beta0) {
        out.zero = true;
        return out;
      }
      out.sqrt2_power += 2;
      alive[k] = 0;
      continue;
    }
    // Factor 2 and the constraint z_m = beta0 xor (xor of z_i, i in R).
    out.sqrt2_power += 2;
    const int m = nk.front();
    std::vector<int> r(nk.begin() + 1, nk.end());
    adj.remove(k);
    alive[k] = 0;
    std::vector<int> nm = adj.members(m);
    const int cm = c[m];
    constant = (constant + beta0 * cm) & 3;
    const int s = beta0 ? -1 : 1;
    for (int i : r) c[i] = (c[i] + s * cm + 4) & 3;
    if (cm & 1) toggle_pairs(r);
    for (int j : nm) c[j] = (c[j] + 2 * beta0) & 3;
    auto mr = adj.mask(r), mn = adj.mask(nm);
    for (int i : r) adj.xor_row(i, mn);
    for (int j : nm) adj.xor_row(j, mr);
    for (int i : r)
      if (adj.get(i, i)) adj.flip(i, i);
    for (int j : nm)
      if (adj.get(j, j)) adj.flip(j, j);
    for (int i : r)
      for (int j : nm)
        if (i == j) c[i] = (c[i] + 2) & 3;
    adj.remove(m);
    alive[m] = 0;
  }
  out.phase8 = (out.phase8 + 2 * constant) & 7;
  return out;
}

/// One-qubit Pauli eigen-bra; sign +1 is the bra of the +1 eigenvector (conjugated, bilinear form).
struct PauliBra {
  PauliBasis basis = PauliBasis::Z;
  int sign = 1;
};

/// Bilinear overlap (tensor_q <b_q|) |G> with the graph state |G> = prod CZ |+>^n, exact.
inline ExactSum graph_state_pauli_overlap(const std::vector<std::vector<int>>& adjacency, const std::vector<PauliBra>& bras) {
  const int n = static_cast<int>(adjacency.size());
  if (static_cast<int>(bras.size()) != n) throw std::invalid_argument("graph_state_pauli_overlap: bra count mismatch");
  std::vector<int> var(static_cast<std::size_t>(n), -1);
  std::vector<int> fixed(static_cast<std::size_t>(n), 0);
  int nv = 0, xy = 0;
  for (int q = 0; q < n; ++q) {
    if (bras[q].sign != 1 && bras[q].sign != -1) throw std::invalid_argument("graph_state_pauli_overlap: sign must be +1 or -1");
    if (bras[q].basis == PauliBasis::Z) {
      fixed[q] = bras[q].sign < 0 ? 1 : 0;
    } else {
      var[q] = nv++;
      ++xy;
    }
  }
  QuadraticForm f(nv);
  for (int q = 0; q < n; ++q) {
    if (var[q] < 0) continue;
    // w1/w0 = i^l: X+ -> 1, X- -> -1, Y+ (1,-i) -> -i, Y- (1,+i) -> +i
    int l = bras[q].basis == PauliBasis::X ? (bras[q].sign > 0 ? 0 : 2) : (bras[q].sign > 0 ? 3 : 1);
    f.linear[var[q]] = l;
  }
  for (int a = 0; a < n; ++a)
    for (int b : adjacency[a]) {
      if (b <= a) continue;
      if (var[a] >= 0 && var[b] >= 0) {
        f.quadratic.emplace_back(var[a], var[b]);
      } else if (var[a] >= 0) {
        if (fixed[b]) f.linear[var[a]] = (f.linear[var[a]] + 2) & 3;
      } else if (var[b] >= 0) {
        if (fixed[a]) f.linear[var[b]] = (f.linear[var[b]] + 2) & 3;
      } else if (fixed[a] && fixed[b]) {
        f.constant += 2;
      }
    }
  ExactSum s = exact_quadratic_sum(f);
  s.sqrt2_power -= n + xy;
  return s;
}

}  // namespace isingc
