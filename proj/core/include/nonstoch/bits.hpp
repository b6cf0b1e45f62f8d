#pragma once

#include <optional>

#include "nonstoch/value.hpp"

namespace nonstoch {

/// A quantity in bits (log base 2), with +inf and -inf permitted. Values
/// derived from exact cardinalities or measures keep the exact magnitude
/// alongside the double, so equality between exact quantities compares
/// rationals, never floats. Quantities from the estimation side (eigenvalue
/// arithmetic) are plain doubles.
class Bits {
 public:
  /// log2 of an exact nonnegative magnitude; magnitude 0 gives -inf.
  static Bits from_magnitude(const Rational& magnitude);
  static Bits from_count(unsigned long long count);
  static Bits inexact(double bits);
  static Bits positive_infinity();

  double value() const { return value_; }
  bool is_exact() const { return magnitude_.has_value(); }
  const std::optional<Rational>& magnitude() const { return magnitude_; }

  /// Exact when both sides carry magnitudes, double comparison otherwise.
  friend bool operator==(const Bits& a, const Bits& b) {
    if (a.magnitude_ && b.magnitude_) return *a.magnitude_ == *b.magnitude_;
    return a.value_ == b.value_;
  }
  friend bool operator!=(const Bits& a, const Bits& b) { return !(a == b); }
  friend bool operator<(const Bits& a, const Bits& b) {
    if (a.magnitude_ && b.magnitude_) return *a.magnitude_ < *b.magnitude_;
    return a.value_ < b.value_;
  }
  friend bool operator<=(const Bits& a, const Bits& b) {
    return a < b || a == b;
  }

 private:
  Bits(std::optional<Rational> magnitude, double value)
      : magnitude_(std::move(magnitude)), value_(value) {}

  std::optional<Rational> magnitude_;
  double value_;
};

}  // namespace nonstoch
