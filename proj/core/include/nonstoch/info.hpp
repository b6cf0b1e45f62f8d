#pragma once

#include "nonstoch/bits.hpp"
#include "nonstoch/ensemble.hpp"
#include "nonstoch/interval.hpp"
#include "nonstoch/partition.hpp"

namespace nonstoch {

/// log2 of the cardinality of a nonempty finite range.
Bits hartley(const ValueSet& range);

/// log2 of the total length of an interval union; -inf for measure zero.
Bits renyi0(const IntervalUnion& range);

/// Worst-case posterior uncertainty: max over family members of
/// log-cardinality (discrete) or log-measure (intervals). The finite family
/// makes the sup a plain max.
Bits conditional_entropy0(const RangeFamily& family);

/// Worst-case log-ratio of prior to posterior uncertainty-set size:
/// marginal entropy minus conditional_entropy0. The family must cover the
/// marginal exactly.
Bits zero_info(const AbstractSet& marginal, const RangeFamily& family);

/// Symmetric index H0[X] + H0[Y] - H0[X,Y] for discrete variables.
Bits klir_transmission(const Ensemble& e, const std::string& x,
                       const std::string& y);

/// log2 of the number of blocks of the overlap partition of the conditional
/// range family of x given y. Computed twice: once via the overlap partition
/// and once via the taxicab partition of the joint range. The two block
/// counts must agree; a mismatch raises InternalError.
Bits maximin_info(const Ensemble& e, const std::string& x,
                  const std::string& y);

}  // namespace nonstoch
