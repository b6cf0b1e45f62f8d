#pragma once

#include <vector>

#include "nonstoch/value.hpp"

namespace nonstoch {

/// Closed interval [lo, hi] with exact rational endpoints, lo <= hi.
struct Interval {
  Rational lo;
  Rational hi;

  friend bool operator==(const Interval& a, const Interval& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }
};

/// A finite union of closed intervals, stored normalized: sorted, pairwise
/// disjoint, with overlapping or touching pieces merged. Intervals are
/// closed, so [0,1] and [1,2] intersect (and normalize to [0,2]).
class IntervalUnion {
 public:
  IntervalUnion() = default;
  explicit IntervalUnion(std::vector<Interval> parts);

  const std::vector<Interval>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }

  /// Total length, an exact rational >= 0. Degenerate points contribute 0.
  Rational measure() const;

  bool intersects(const IntervalUnion& other) const;
  bool contains(const Rational& x) const;

  friend IntervalUnion unite(const IntervalUnion& a, const IntervalUnion& b);

  friend bool operator==(const IntervalUnion& a, const IntervalUnion& b) {
    return a.parts_ == b.parts_;
  }
  friend bool operator!=(const IntervalUnion& a, const IntervalUnion& b) {
    return !(a == b);
  }

 private:
  std::vector<Interval> parts_;
};

}  // namespace nonstoch
