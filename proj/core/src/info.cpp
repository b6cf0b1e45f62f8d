#include "nonstoch/info.hpp"

#include <cmath>
#include <limits>

#include "nonstoch/errors.hpp"

namespace nonstoch {

namespace {

Rational set_size(const AbstractSet& s) {
  if (const auto* values = std::get_if<ValueSet>(&s))
    return Rational(static_cast<long long>(values->size()));
  return std::get<IntervalUnion>(s).measure();
}

}  // namespace

Bits Bits::from_magnitude(const Rational& magnitude) {
  if (magnitude < Rational(0))
    throw InternalError("negative magnitude in Bits");
  if (magnitude == Rational(0))
    return Bits(magnitude, -std::numeric_limits<double>::infinity());
  const double value = std::log2(static_cast<double>(magnitude.numerator())) -
                       std::log2(static_cast<double>(magnitude.denominator()));
  return Bits(magnitude, value);
}

Bits Bits::from_count(unsigned long long count) {
  return from_magnitude(Rational(static_cast<long long>(count)));
}

Bits Bits::inexact(double bits) { return Bits(std::nullopt, bits); }

Bits Bits::positive_infinity() {
  return Bits(std::nullopt, std::numeric_limits<double>::infinity());
}

Bits hartley(const ValueSet& range) {
  if (range.empty()) throw InvalidArgument("Hartley entropy of an empty range");
  return Bits::from_count(range.size());
}

Bits renyi0(const IntervalUnion& range) {
  return Bits::from_magnitude(range.measure());
}

Bits conditional_entropy0(const RangeFamily& family) {
  if (family.members.empty())
    throw InvalidArgument("conditional entropy of an empty family");
  Rational worst = set_size(family.members.front().set);
  for (std::size_t i = 1; i < family.members.size(); ++i)
    worst = std::max(worst, set_size(family.members[i].set));
  return Bits::from_magnitude(worst);
}

Bits zero_info(const AbstractSet& marginal, const RangeFamily& family) {
  if (family.members.empty())
    throw InvalidArgument("zero-information needs a nonempty family");
  AbstractSet covered = family.members.front().set;
  for (std::size_t i = 1; i < family.members.size(); ++i)
    covered = set_union(covered, family.members[i].set);
  if (!(covered == marginal))
    throw InvalidArgument("family does not cover the marginal range");

  const Rational prior = set_size(marginal);
  if (prior == Rational(0))
    throw InvalidArgument("zero-information of a zero-measure marginal");
  Rational worst = set_size(family.members.front().set);
  for (std::size_t i = 1; i < family.members.size(); ++i)
    worst = std::max(worst, set_size(family.members[i].set));
  if (worst == Rational(0)) {
    // Zero-measure posteriors: the log-ratio is unbounded.
    return Bits::positive_infinity();
  }
  return Bits::from_magnitude(prior / worst);
}

Bits klir_transmission(const Ensemble& e, const std::string& x,
                       const std::string& y) {
  const auto nx = static_cast<long long>(marginal_range(e, x).size());
  const auto ny = static_cast<long long>(marginal_range(e, y).size());
  const auto nxy = static_cast<long long>(joint_range(e, {x, y}).size());
  return Bits::from_magnitude(Rational(nx * ny, nxy));
}

Bits maximin_info(const Ensemble& e, const std::string& x,
                  const std::string& y) {
  const Partition overlap =
      overlap_partition(RangeFamily::from(conditional_family(e, x, {y})));
  const Partition taxicab = taxicab_partition(joint_range(e, {x, y}));
  if (overlap.blocks.size() != taxicab.blocks.size())
    throw InternalError(
        "overlap and taxicab partitions disagree on block count");
  return Bits::from_count(overlap.blocks.size());
}

}  // namespace nonstoch
