#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "isingc/scaled_complex.hpp"

namespace isingc {

enum class PauliBasis : std::uint8_t { X, Y, Z };

inline char basis_char(PauliBasis b) { return b == PauliBasis::X ? 'X' : b == PauliBasis::Y ? 'Y' : 'Z'; }

/// n-qubit Pauli operator i^phase * prod_q X_q^{x_q} Z_q^{z_q}, X written left of Z on each qubit.
///
/// With this convention Y = i X Z (equivalently X Z = -i Y): x = z = 1 with phase 1.
/// Hermitian operators have phase parity equal to the number of Y-type qubits.
class PauliOperator {
 public:
  PauliOperator() = default;
  explicit PauliOperator(int n) : n_(n), x_(words(n), 0), z_(words(n), 0) {}

  /// Parses e.g. "+XIZ", "-iYY", "XZ". Character k acts on qubit k.
  static PauliOperator from_string(const std::string& s) {
    std::size_t pos = 0;
    int phase = 0;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) phase = s[pos++] == '-' ? 2 : 0;
    if (pos < s.size() && s[pos] == 'i') {
      phase += 1;
      ++pos;
    }
    PauliOperator p(static_cast<int>(s.size() - pos));
    for (int q = 0; pos < s.size(); ++pos, ++q) {
      switch (s[pos]) {
        case 'I': case '_': break;
        case 'X': p.set_x(q, true); break;
        case 'Z': p.set_z(q, true); break;
        case 'Y': p.set_x(q, true); p.set_z(q, true); phase += 1; break;
        default: throw std::invalid_argument("PauliOperator: bad character in '" + s + "'");
      }
    }
    p.phase_ = static_cast<std::uint8_t>(phase & 3);
    return p;
  }

  static PauliOperator single(int n, int qubit, PauliBasis b) {
    PauliOperator p(n);
    if (b != PauliBasis::Z) p.set_x(qubit, true);
    if (b != PauliBasis::X) p.set_z(qubit, true);
    if (b == PauliBasis::Y) p.phase_ = 1;
    return p;
  }

  int num_qubits() const { return n_; }
  int phase() const { return phase_; }
  void set_phase(int p) { phase_ = static_cast<std::uint8_t>(p & 3); }
  void add_phase(int p) { phase_ = static_cast<std::uint8_t>((phase_ + p) & 3); }

  bool x(int q) const { return (x_[q >> 6] >> (q & 63)) & 1U; }
  bool z(int q) const { return (z_[q >> 6] >> (q & 63)) & 1U; }
  void set_x(int q, bool v) { set(x_, q, v); }
  void set_z(int q, bool v) { set(z_, q, v); }

  const std::vector<std::uint64_t>& x_words() const { return x_; }
  const std::vector<std::uint64_t>& z_words() const { return z_; }

  bool is_identity_up_to_phase() const {
    for (std::size_t w = 0; w < x_.size(); ++w)
      if (x_[w] | z_[w]) return false;
    return true;
  }

  int weight() const {
    int c = 0;
    for (std::size_t w = 0; w < x_.size(); ++w) c += std::popcount(x_[w] | z_[w]);
    return c;
  }

  /// Number of qubits carrying both X and Z (Y-type factors).
  int y_count() const {
    int c = 0;
    for (std::size_t w = 0; w < x_.size(); ++w) c += std::popcount(x_[w] & z_[w]);
    return c;
  }

  bool is_hermitian() const { return ((phase_ - y_count()) & 1) == 0; }

  /// Sign (+1/-1) of a Hermitian operator relative to the product of standard X, Y, Z factors.
  int hermitian_sign() const {
    int rel = (phase_ - y_count()) & 3;
    if (rel & 1) throw std::logic_error("PauliOperator::hermitian_sign: operator is not Hermitian");
    return rel == 0 ? 1 : -1;
  }

  bool commutes_with(const PauliOperator& o) const {
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < x_.size(); ++w) acc ^= (x_[w] & o.z_[w]) ^ (z_[w] & o.x_[w]);
    return (std::popcount(acc) & 1) == 0;
  }

  /// this <- this * o.
  PauliOperator& operator*=(const PauliOperator& o) {
    if (o.n_ != n_) throw std::invalid_argument("PauliOperator: qubit count mismatch");
    int extra = 0;
    for (std::size_t w = 0; w < x_.size(); ++w) {
      extra += std::popcount(z_[w] & o.x_[w]);
      x_[w] ^= o.x_[w];
      z_[w] ^= o.z_[w];
    }
    phase_ = static_cast<std::uint8_t>((phase_ + o.phase_ + 2 * extra) & 3);
    return *this;
  }
  friend PauliOperator operator*(PauliOperator a, const PauliOperator& b) { return a *= b; }

  /// Inverse (equal to the adjoint for Pauli operators).
  PauliOperator inverse() const {
    // (i^p X^x Z^z)^-1 = i^-p Z^z X^x = i^-p (-1)^{x.z} X^x Z^z
    PauliOperator r = *this;
    r.phase_ = static_cast<std::uint8_t>((-phase_ + 2 * y_count()) & 3);
    return r;
  }

  /// Restriction to qubit q as (phase contribution ignored) x/z bits.
  PauliBasis basis_at(int q) const {
    if (x(q) && z(q)) return PauliBasis::Y;
    return x(q) ? PauliBasis::X : PauliBasis::Z;
  }

  // Conjugation P -> U P U^dagger for the standard gates.
  void conjugate_h(int q) {
    bool xb = x(q), zb = z(q);
    set_x(q, zb);
    set_z(q, xb);
    if (xb && zb) add_phase(2);
  }
  void conjugate_s(int q) {
    bool xb = x(q);
    if (xb) {
      set_z(q, z(q) ^ true);
      add_phase(1);
    }
  }
  void conjugate_s_dag(int q) {
    conjugate_s(q);
    conjugate_s(q);
    conjugate_s(q);
  }
  void conjugate_cz(int a, int b) {
    bool xa = x(a), xb = x(b);
    if (xb) set_z(a, z(a) ^ true);
    if (xa) set_z(b, z(b) ^ true);
    if (xa && xb) add_phase(2);
  }
  void conjugate_swap(int a, int b) {
    bool xa = x(a), za = z(a);
    set_x(a, x(b));
    set_z(a, z(b));
    set_x(b, xa);
    set_z(b, za);
  }

  /// Apply to a dense vector (qubit q is bit q of the index).
  std::vector<complex> apply(const std::vector<complex>& psi) const {
    std::uint64_t xm = 0, zm = 0;
    for (int q = 0; q < n_; ++q) {
      if (x(q)) xm |= std::uint64_t{1} << q;
      if (z(q)) zm |= std::uint64_t{1} << q;
    }
    static const complex ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    std::vector<complex> out(psi.size());
    for (std::uint64_t y = 0; y < psi.size(); ++y) {
      double sign = (std::popcount(zm & y) & 1) ? -1.0 : 1.0;
      out[y ^ xm] = ipow[phase_] * sign * psi[y];
    }
    return out;
  }

  std::string to_string() const {
    static const char* prefix[4] = {"+", "+i", "-", "-i"};
    int rel = (phase_ - y_count()) & 3;  // phase relative to standard Y factors
    std::string s = prefix[rel];
    for (int q = 0; q < n_; ++q) s += x(q) ? (z(q) ? 'Y' : 'X') : (z(q) ? 'Z' : 'I');
    return s;
  }

  friend bool operator==(const PauliOperator&, const PauliOperator&) = default;

 private:
  static std::size_t words(int n) { return static_cast<std::size_t>((n + 63) / 64); }
  static void set(std::vector<std::uint64_t>& v, int q, bool b) {
    std::uint64_t m = std::uint64_t{1} << (q & 63);
    if (b) v[q >> 6] |= m;
    else v[q >> 6] &= ~m;
  }

  int n_ = 0;
  std::uint8_t phase_ = 0;
  std::vector<std::uint64_t> x_, z_;
};

/// Single-qubit Clifford as the images of X and Z under conjugation (U X U^dag, U Z U^dag).
/// Determines U only up to a global phase; 24 elements.
struct SingleCliffordImage {
  PauliOperator x_image = PauliOperator::from_string("X");
  PauliOperator z_image = PauliOperator::from_string("Z");

  static SingleCliffordImage identity() { return {}; }
  static SingleCliffordImage hadamard() { return {PauliOperator::from_string("Z"), PauliOperator::from_string("X")}; }
  /// S^k with S = diag(1, i).
  static SingleCliffordImage s_power(int k) {
    SingleCliffordImage c;
    for (int i = 0; i < (k & 3); ++i) c.x_image.conjugate_s(0);
    return c;
  }
  bool valid() const {
    return x_image.num_qubits() == 1 && z_image.num_qubits() == 1 && x_image.is_hermitian() && z_image.is_hermitian() &&
           !x_image.commutes_with(z_image) && !x_image.is_identity_up_to_phase() && !z_image.is_identity_up_to_phase();
  }
  friend bool operator==(const SingleCliffordImage&, const SingleCliffordImage&) = default;
};

/// Tensor product of single-qubit Cliffords.
struct LocalCliffordOp {
  std::vector<SingleCliffordImage> factors;

  LocalCliffordOp() = default;
  explicit LocalCliffordOp(int n) : factors(static_cast<std::size_t>(n)) {}
  int num_qubits() const { return static_cast<int>(factors.size()); }

  /// P -> U P U^dag.
  void conjugate(PauliOperator& p) const {
    for (int q = 0; q < num_qubits(); ++q) {
      bool xb = p.x(q), zb = p.z(q);
      if (!xb && !zb) continue;
      PauliOperator local(1);
      if (xb) local *= factors[q].x_image;
      if (zb) local *= factors[q].z_image;
      p.set_x(q, local.x(0));
      p.set_z(q, local.z(0));
      p.add_phase(local.phase());
    }
  }
};

}  // namespace isingc
