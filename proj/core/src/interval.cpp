#include "nonstoch/interval.hpp"

#include <algorithm>

#include "nonstoch/errors.hpp"

namespace nonstoch {

IntervalUnion::IntervalUnion(std::vector<Interval> parts)
    : parts_(std::move(parts)) {
  for (const Interval& p : parts_) {
    if (p.hi < p.lo)
      throw InvalidArgument("interval endpoints out of order: [" +
                            to_string(p.lo) + "," + to_string(p.hi) + "]");
  }
  std::sort(parts_.begin(), parts_.end(), [](const Interval& a, const Interval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  std::vector<Interval> merged;
  for (const Interval& p : parts_) {
    if (!merged.empty() && p.lo <= merged.back().hi) {
      merged.back().hi = std::max(merged.back().hi, p.hi);
    } else {
      merged.push_back(p);
    }
  }
  parts_ = std::move(merged);
}

Rational IntervalUnion::measure() const {
  Rational total(0);
  for (const Interval& p : parts_) total += p.hi - p.lo;
  return total;
}

bool IntervalUnion::intersects(const IntervalUnion& other) const {
  std::size_t i = 0, j = 0;
  while (i < parts_.size() && j < other.parts_.size()) {
    const Interval& a = parts_[i];
    const Interval& b = other.parts_[j];
    if (a.lo <= b.hi && b.lo <= a.hi) return true;
    if (a.hi < b.hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

bool IntervalUnion::contains(const Rational& x) const {
  for (const Interval& p : parts_) {
    if (p.lo <= x && x <= p.hi) return true;
    if (x < p.lo) break;
  }
  return false;
}

IntervalUnion unite(const IntervalUnion& a, const IntervalUnion& b) {
  std::vector<Interval> parts = a.parts_;
  parts.insert(parts.end(), b.parts_.begin(), b.parts_.end());
  return IntervalUnion(std::move(parts));
}

}  // namespace nonstoch
