#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace isingc {

using complex = std::complex<double>;

/// A complex number carried as `mantissa * 2^exponent2`.
///
/// The mantissa is either exactly zero (and then exponent2 == 0) or has
/// modulus in [1, 2). Products and sums renormalize after every operation, so
/// values like 2^(-5000) or 2^(+5000) survive arithmetic that would over- or
/// underflow plain doubles.
class ScaledComplex {
 public:
  ScaledComplex() = default;
  ScaledComplex(complex value) : mantissa_(value) { normalize(); }  // NOLINT
  ScaledComplex(double value) : mantissa_(value, 0.0) { normalize(); }  // NOLINT
  ScaledComplex(complex mantissa, std::int64_t exponent2) : mantissa_(mantissa), exponent2_(exponent2) {
    normalize();
  }

  static ScaledComplex pow2(std::int64_t e) { return ScaledComplex(complex(1.0, 0.0), e); }

  /// 2^(k/2), exact up to the rounding of sqrt(2) for odd k.
  static ScaledComplex sqrt2_pow(std::int64_t k) {
    std::int64_t half = k >= 0 ? k / 2 : -((-k + 1) / 2);
    bool odd = (k - 2 * half) != 0;
    return ScaledComplex(complex(odd ? std::numbers::sqrt2 : 1.0, 0.0), half);
  }

  /// exp(z) without overflow for any finite z.
  static ScaledComplex exp(complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::domain_error("ScaledComplex::exp: non-finite argument");
    }
    double k = std::floor(z.real() / std::numbers::ln2);
    double rest = z.real() - k * std::numbers::ln2;
    return ScaledComplex(std::polar(std::exp(rest), z.imag()), static_cast<std::int64_t>(k));
  }

  const complex& mantissa() const { return mantissa_; }
  std::int64_t exponent2() const { return exponent2_; }
  bool is_zero() const { return mantissa_ == complex(0.0, 0.0); }

  /// Converts to a plain complex; overflows to inf / underflows to 0 as doubles would.
  complex to_complex() const {
    if (is_zero()) return {0.0, 0.0};
    if (exponent2_ > 4096) return {std::copysign(INFINITY, mantissa_.real()), std::copysign(INFINITY, mantissa_.imag())};
    if (exponent2_ < -4096) return {0.0, 0.0};
    int e = static_cast<int>(exponent2_);
    return {std::ldexp(mantissa_.real(), e), std::ldexp(mantissa_.imag(), e)};
  }

  /// log2 |value|; -inf for zero.
  double log2_abs() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    return std::log2(std::abs(mantissa_)) + static_cast<double>(exponent2_);
  }

  ScaledComplex& operator*=(const ScaledComplex& o) {
    mantissa_ *= o.mantissa_;
    exponent2_ += o.exponent2_;
    normalize();
    return *this;
  }

  ScaledComplex& operator/=(const ScaledComplex& o) {
    if (o.is_zero()) throw std::domain_error("ScaledComplex: division by zero");
    mantissa_ /= o.mantissa_;
    exponent2_ -= o.exponent2_;
    normalize();
    return *this;
  }

  ScaledComplex& operator+=(const ScaledComplex& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    std::int64_t d = exponent2_ - o.exponent2_;
    if (d > 120) return *this;
    if (d < -120) return *this = o;
    if (d >= 0) {
      mantissa_ += scale(o.mantissa_, -d);
    } else {
      mantissa_ = scale(mantissa_, d) + o.mantissa_;
      exponent2_ = o.exponent2_;
    }
    normalize();
    return *this;
  }

  ScaledComplex& operator-=(const ScaledComplex& o) { return *this += -o; }

  ScaledComplex operator-() const {
    ScaledComplex r = *this;
    r.mantissa_ = -r.mantissa_;
    return r;
  }

  friend ScaledComplex operator*(ScaledComplex a, const ScaledComplex& b) { return a *= b; }
  friend ScaledComplex operator/(ScaledComplex a, const ScaledComplex& b) { return a /= b; }
  friend ScaledComplex operator+(ScaledComplex a, const ScaledComplex& b) { return a += b; }
  friend ScaledComplex operator-(ScaledComplex a, const ScaledComplex& b) { return a -= b; }

  friend bool operator==(const ScaledComplex& a, const ScaledComplex& b) {
    return a.mantissa_ == b.mantissa_ && a.exponent2_ == b.exponent2_;
  }

  ScaledComplex conj() const {
    ScaledComplex r = *this;
    r.mantissa_ = std::conj(r.mantissa_);
    return r;
  }

  friend std::ostream& operator<<(std::ostream& os, const ScaledComplex& v) {
    return os << v.mantissa_ << "*2^" << v.exponent2_;
  }

 private:
  static complex scale(complex v, std::int64_t e) {
    int ei = static_cast<int>(e);
    return {std::ldexp(v.real(), ei), std::ldexp(v.imag(), ei)};
  }

  void normalize() {
    if (!std::isfinite(mantissa_.real()) || !std::isfinite(mantissa_.imag())) {
      throw std::overflow_error("ScaledComplex: non-finite mantissa");
    }
    double mag = std::abs(mantissa_);
    if (mag == 0.0) {
      mantissa_ = {0.0, 0.0};
      exponent2_ = 0;
      return;
    }
    int e = 0;
    std::frexp(mag, &e);  // mag = f * 2^e, f in [0.5, 1)
    mantissa_ = scale(mantissa_, -(e - 1));
    exponent2_ += e - 1;
    // Rounding in abs() can leave the modulus a hair outside [1, 2).
    double m2 = std::abs(mantissa_);
    if (m2 >= 2.0) {
      mantissa_ *= 0.5;
      ++exponent2_;
    } else if (m2 < 1.0) {
      mantissa_ *= 2.0;
      --exponent2_;
    }
  }

  complex mantissa_{0.0, 0.0};
  std::int64_t exponent2_ = 0;
};

/// |a - b| / max(|a|, |b|), computed without leaving the scaled domain.
/// Two zeros compare equal (0); zero against nonzero gives 1.
inline double relative_error(const ScaledComplex& a, const ScaledComplex& b) {
  if (a.is_zero() && b.is_zero()) return 0.0;
  ScaledComplex diff = a - b;
  if (diff.is_zero()) return 0.0;
  double ref = std::max(a.log2_abs(), b.log2_abs());
  return std::exp2(diff.log2_abs() - ref);
}

/// Relative error against an absolute floor: |a-b| / max(|a|, |b|, floor).
/// Used where an exact zero is a legitimate expected value.
inline double relative_error_floor(const ScaledComplex& a, const ScaledComplex& b, double floor) {
  ScaledComplex diff = a - b;
  if (diff.is_zero()) return 0.0;
  double ref = std::max({a.log2_abs(), b.log2_abs(), std::log2(floor)});
  return std::exp2(diff.log2_abs() - ref);
}

}  // namespace isingc
