#pragma once

#include <stdexcept>
#include <string>

namespace isingc {

/// Input exceeds an exhaustive-evaluation bound (enumeration, dense vector, transfer-matrix width).
class SizeBoundError : public std::length_error {
 public:
  SizeBoundError(const std::string& what, long long value, long long bound)
      : std::length_error(what + ": " + std::to_string(value) + " exceeds bound " + std::to_string(bound)),
        value_(value),
        bound_(bound) {}
  long long value() const { return value_; }
  long long bound() const { return bound_; }

 private:
  long long value_;
  long long bound_;
};

/// A compiler stage produced something that fails its own certificate. Always a bug.
class CompileError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Two stabilizer states are not related by a Pauli (or the requested correction class).
class NotEquivalentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace isingc
