#pragma once

#include <map>
#include <variant>
#include <vector>

#include "nonstoch/ensemble.hpp"
#include "nonstoch/interval.hpp"

namespace nonstoch {

/// A ground set a partition can live on: either a finite set of exact values
/// or a union of rational intervals. Both kinds support exact emptiness,
/// intersection, and union tests; a family never mixes kinds.
using AbstractSet = std::variant<ValueSet, IntervalUnion>;

bool set_is_empty(const AbstractSet& s);
bool sets_intersect(const AbstractSet& a, const AbstractSet& b);
AbstractSet set_union(const AbstractSet& a, const AbstractSet& b);

/// Labeled family of posterior ranges, the common input of the partition and
/// information operations. Labels identify which observation produced which
/// range; they should be unique (a duplicate label keeps the last entry in
/// the provenance map).
struct RangeFamily {
  struct Member {
    Value label;
    AbstractSet set;
  };
  std::vector<Member> members;

  static RangeFamily from(const SetFamily& family);
};

/// A partition of a ground range into pairwise disjoint nonempty blocks,
/// plus a provenance map telling which family label landed in which block.
struct Partition {
  std::vector<AbstractSet> blocks;
  std::map<Value, std::size_t> provenance;
};

/// The unique coarsest-to-finest fixed point: blocks are the maximal
/// chains of pairwise-intersecting family members. Every family member lies
/// entirely inside exactly one block, every block is a union of members, and
/// the result is independent of member order. No partition whose blocks all
/// contain whole members can have more blocks than this one.
Partition overlap_partition(const RangeFamily& family);

/// Partition of a set of (x, y) pairs into maximal components connected by
/// steps that change one coordinate at a time. Projecting the blocks onto
/// either axis reproduces the overlap partition of the matching conditional
/// range family.
Partition taxicab_partition(const ValueSet& joint_pairs);

/// Coordinate projection of a set of pair values (coordinate 0 or 1).
ValueSet project_pairs(const ValueSet& pairs, std::size_t coordinate);

}  // namespace nonstoch
