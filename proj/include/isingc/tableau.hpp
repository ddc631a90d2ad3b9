#pragma once

#include <cmath>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "isingc/errors.hpp"
#include "isingc/pauli.hpp"

namespace isingc {

struct MeasureResult {
  int outcome = 1;  // +1 or -1
  bool was_random = false;
};

/// Stabilizer state on n qubits, stored as n stabilizer generators together with
/// n destabilizers (rows 0..n-1 destabilizers, n..2n-1 stabilizers).
///
/// Destabilizer i anticommutes with stabilizer i and commutes with every other
/// stabilizer. That pairing makes group membership and deterministic
/// measurement a product over a known subset of rows, no elimination needed.
class StabilizerTableau {
 public:
  StabilizerTableau() = default;

  /// |0...0>.
  explicit StabilizerTableau(int n) : n_(n) {
    rows_.reserve(2 * static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) rows_.push_back(PauliOperator::single(n, q, PauliBasis::X));
    for (int q = 0; q < n; ++q) rows_.push_back(PauliOperator::single(n, q, PauliBasis::Z));
  }

  static StabilizerTableau all_plus(int n) {
    StabilizerTableau t(n);
    for (int q = 0; q < n; ++q) t.apply_h(q);
    return t;
  }

  int num_qubits() const { return n_; }
  const PauliOperator& stabilizer(int i) const { return rows_[n_ + i]; }
  const PauliOperator& destabilizer(int i) const { return rows_[i]; }
  std::vector<PauliOperator> stabilizers() const { return {rows_.begin() + n_, rows_.end()}; }

  void apply_h(int q) {
    check(q);
    for (auto& r : rows_) r.conjugate_h(q);
  }
  void apply_s(int q) {
    check(q);
    for (auto& r : rows_) r.conjugate_s(q);
  }
  void apply_s_dag(int q) {
    check(q);
    for (auto& r : rows_) r.conjugate_s_dag(q);
  }
  void apply_cz(int a, int b) {
    check(a);
    check(b);
    if (a == b) throw std::invalid_argument("apply_cz: identical qubits");
    for (auto& r : rows_) r.conjugate_cz(a, b);
  }
  void apply_swap(int a, int b) {
    check(a);
    check(b);
    for (auto& r : rows_) r.conjugate_swap(a, b);
  }
  /// |psi> -> P|psi>; only stabilizer signs change.
  void apply_pauli(const PauliOperator& p) {
    if (p.num_qubits() != n_) throw std::invalid_argument("apply_pauli: qubit count mismatch");
    for (auto& r : rows_)
      if (!r.commutes_with(p)) r.add_phase(2);
  }
  void apply_local_clifford(const LocalCliffordOp& op) {
    if (op.num_qubits() != n_) throw std::invalid_argument("apply_local_clifford: qubit count mismatch");
    for (auto& r : rows_) op.conjugate(r);
  }

  /// Projective measurement of X, Y or Z on one qubit. A random outcome takes
  /// `preferred`; a deterministic one is reported as forced by the state.
  MeasureResult measure(int q, PauliBasis basis, int preferred = +1) {
    check(q);
    if (preferred != 1 && preferred != -1) throw std::invalid_argument("measure: preferred outcome must be +1 or -1");
    const bool px = basis != PauliBasis::Z;
    const bool pz = basis != PauliBasis::X;
    auto anticommutes = [&](const PauliOperator& r) { return (px && r.z(q)) != (pz && r.x(q)); };

    int pivot = -1;
    for (int i = n_; i < 2 * n_; ++i)
      if (anticommutes(rows_[i])) {
        pivot = i;
        break;
      }

    PauliOperator observable = PauliOperator::single(n_, q, basis);
    if (pivot >= 0) {
      for (int i = 0; i < 2 * n_; ++i)
        if (i != pivot && anticommutes(rows_[i])) rows_[i] *= rows_[pivot];
      rows_[pivot - n_] = rows_[pivot];
      if (preferred < 0) observable.add_phase(2);
      rows_[pivot] = observable;
      return {preferred, true};
    }

    PauliOperator acc(n_);
    for (int i = 0; i < n_; ++i)
      if (anticommutes(rows_[i])) acc *= rows_[n_ + i];
    return {acc.hermitian_sign() * observable.hermitian_sign(), false};
  }

  /// +1 / -1 if (+/-)p is in the stabilizer group, nullopt otherwise.
  std::optional<int> sign_in_group(const PauliOperator& p) const {
    if (p.num_qubits() != n_) throw std::invalid_argument("sign_in_group: qubit count mismatch");
    std::vector<int> support;
    for (int q = 0; q < n_; ++q)
      if (p.x(q) || p.z(q)) support.push_back(q);
    auto anticommutes = [&](const PauliOperator& r) {
      bool acc = false;
      for (int q : support) acc ^= (p.x(q) && r.z(q)) != (p.z(q) && r.x(q));
      return acc;
    };
    PauliOperator acc(n_);
    for (int i = 0; i < n_; ++i) {
      if (anticommutes(rows_[n_ + i])) return std::nullopt;
      if (anticommutes(rows_[i])) acc *= rows_[n_ + i];
    }
    if (acc.x_words() != p.x_words() || acc.z_words() != p.z_words()) return std::nullopt;
    int rel = (acc.phase() - p.phase()) & 3;
    if (rel == 0) return 1;
    if (rel == 2) return -1;
    return std::nullopt;
  }

  /// Structural invariants: Hermitian commuting stabilizers, symplectic pairing with destabilizers.
  bool is_valid() const {
    for (int i = 0; i < n_; ++i) {
      const auto& s = rows_[n_ + i];
      if (!s.is_hermitian() || s.is_identity_up_to_phase()) return false;
      for (int j = 0; j < n_; ++j) {
        if (j > i && !s.commutes_with(rows_[n_ + j])) return false;
        bool should_anticommute = i == j;
        if (rows_[j].commutes_with(s) == should_anticommute) return false;
      }
    }
    return true;
  }

 private:
  void check(int q) const {
    if (q < 0 || q >= n_) throw std::out_of_range("StabilizerTableau: qubit " + std::to_string(q) + " out of range");
  }

  int n_ = 0;
  std::vector<PauliOperator> rows_;
};

/// Graph state generators X_v prod_{w in N(v)} Z_w, then conjugated by H on every qubit in hadamard_set.
inline StabilizerTableau graph_state_tableau(const std::vector<std::vector<int>>& adjacency, std::span<const int> hadamard_set = {}) {
  const int n = static_cast<int>(adjacency.size());
  StabilizerTableau t = StabilizerTableau::all_plus(n);
  for (int v = 0; v < n; ++v)
    for (int w : adjacency[v]) {
      if (w == v) throw std::invalid_argument("graph_state_tableau: self-loop");
      if (w > v) t.apply_cz(v, w);
    }
  for (int q : hadamard_set) t.apply_h(q);
  return t;
}

enum class CliffordGate { H, S, S_DAG, CZ, SWAP };

inline void apply_clifford(StabilizerTableau& t, CliffordGate g, std::span<const int> qubits) {
  auto need = [&](std::size_t k) {
    if (qubits.size() != k) throw std::invalid_argument("apply_clifford: wrong number of qubits");
  };
  switch (g) {
    case CliffordGate::H: need(1); t.apply_h(qubits[0]); break;
    case CliffordGate::S: need(1); t.apply_s(qubits[0]); break;
    case CliffordGate::S_DAG: need(1); t.apply_s_dag(qubits[0]); break;
    case CliffordGate::CZ: need(2); t.apply_cz(qubits[0], qubits[1]); break;
    case CliffordGate::SWAP: need(2); t.apply_swap(qubits[0], qubits[1]); break;
  }
}

inline void apply_clifford(StabilizerTableau& t, const LocalCliffordOp& op) { t.apply_local_clifford(op); }

namespace detail {
inline PauliOperator embed(const PauliOperator& p, std::span<const int> sites, int n) {
  PauliOperator out(n);
  for (int j = 0; j < p.num_qubits(); ++j) {
    out.set_x(sites[j], p.x(j));
    out.set_z(sites[j], p.z(j));
  }
  out.set_phase(p.phase());
  return out;
}
}  // namespace detail

/// True iff the state of `got` restricted to `sites` (target qubit j lives on got qubit sites[j])
/// is stabilized by every generator of `target`. The remaining got qubits must be in a product
/// with the mapped ones, which is the situation after measuring them.
inline bool states_equal_on(const StabilizerTableau& got, std::span<const int> sites, const StabilizerTableau& target) {
  if (static_cast<int>(sites.size()) != target.num_qubits()) throw std::invalid_argument("states_equal_on: site map size mismatch");
  for (int i = 0; i < target.num_qubits(); ++i) {
    auto s = got.sign_in_group(detail::embed(target.stabilizer(i), sites, got.num_qubits()));
    if (!s || *s != 1) return false;
  }
  return true;
}

inline bool states_equal(const StabilizerTableau& a, const StabilizerTableau& b) {
  if (a.num_qubits() != b.num_qubits()) throw std::invalid_argument("states_equal: qubit count mismatch");
  std::vector<int> id(static_cast<std::size_t>(a.num_qubits()));
  for (int q = 0; q < a.num_qubits(); ++q) id[q] = q;
  return states_equal_on(b, id, a);
}

/// Pauli P (on target qubits, Hermitian with + sign) such that P applied to the mapped part of
/// `got` gives `target`. Throws NotEquivalentError if no Pauli does it.
inline PauliOperator find_pauli_correction_on(const StabilizerTableau& got, std::span<const int> sites, const StabilizerTableau& target) {
  const int n = target.num_qubits();
  if (static_cast<int>(sites.size()) != n) throw std::invalid_argument("find_pauli_correction: site map size mismatch");
  PauliOperator correction(n);
  for (int i = 0; i < n; ++i) {
    auto s = got.sign_in_group(detail::embed(target.stabilizer(i), sites, got.num_qubits()));
    if (!s) throw NotEquivalentError("find_pauli_correction: target generator " + target.stabilizer(i).to_string() + " is not stabilized up to sign");
    if (*s < 0) correction *= target.destabilizer(i);
  }
  correction.set_phase(correction.y_count());  // Hermitian, + sign
  // Each destabilizer flips exactly its own generator's sign, so this cannot fail; checked anyway.
  for (int i = 0; i < n; ++i) {
    PauliOperator g = target.stabilizer(i);
    if (!g.commutes_with(correction)) g.add_phase(2);
    auto s = got.sign_in_group(detail::embed(g, sites, got.num_qubits()));
    if (!s || *s != 1) throw NotEquivalentError("find_pauli_correction: correction does not reproduce target");
  }
  return correction;
}

inline PauliOperator find_pauli_correction(const StabilizerTableau& got, const StabilizerTableau& target) {
  if (got.num_qubits() != target.num_qubits()) throw std::invalid_argument("find_pauli_correction: qubit count mismatch");
  std::vector<int> id(static_cast<std::size_t>(got.num_qubits()));
  for (int q = 0; q < got.num_qubits(); ++q) id[q] = q;
  return find_pauli_correction_on(got, id, target);
}

inline constexpr int kDenseVectorMaxQubits = 20;

/// The unique joint +1 eigenvector, normalized, first nonzero amplitude real positive.
inline std::vector<complex> dense_vector(const StabilizerTableau& t) {
  const int n = t.num_qubits();
  if (n > kDenseVectorMaxQubits) throw SizeBoundError("dense_vector: qubits", n, kDenseVectorMaxQubits);
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> nd;
  std::vector<complex> v(std::size_t{1} << n);
  for (auto& a : v) a = {nd(rng), nd(rng)};
  for (int i = 0; i < n; ++i) {
    auto sv = t.stabilizer(i).apply(v);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = 0.5 * (v[k] + sv[k]);
  }
  double norm = 0.0, peak = 0.0;
  for (auto& a : v) {
    norm += std::norm(a);
    peak = std::max(peak, std::abs(a));
  }
  norm = std::sqrt(norm);
  complex phase{1.0, 0.0};
  for (auto& a : v)
    if (std::abs(a) > 1e-6 * peak) {
      phase = std::abs(a) / a;
      break;
    }
  for (auto& a : v) a *= phase / norm;
  return v;
}

}  // namespace isingc
