#include "nonstoch/partition.hpp"

#include <algorithm>
#include <numeric>

#include "nonstoch/errors.hpp"

namespace nonstoch {

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;

  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }

  std::size_t find(std::size_t i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

bool sets_intersect_values(const ValueSet& a, const ValueSet& b) {
  const ValueSet& small = a.size() <= b.size() ? a : b;
  const ValueSet& large = a.size() <= b.size() ? b : a;
  for (const Value& v : small) {
    if (large.count(v)) return true;
  }
  return false;
}

/// Canonical ordering key so block order never depends on input order.
struct BlockLess {
  bool operator()(const AbstractSet& a, const AbstractSet& b) const {
    if (std::holds_alternative<ValueSet>(a)) {
      return *std::get<ValueSet>(a).begin() < *std::get<ValueSet>(b).begin();
    }
    return std::get<IntervalUnion>(a).parts().front().lo <
           std::get<IntervalUnion>(b).parts().front().lo;
  }
};

}  // namespace

bool set_is_empty(const AbstractSet& s) {
  if (const auto* values = std::get_if<ValueSet>(&s)) return values->empty();
  return std::get<IntervalUnion>(s).empty();
}

bool sets_intersect(const AbstractSet& a, const AbstractSet& b) {
  if (a.index() != b.index())
    throw InvalidArgument("cannot intersect discrete and interval sets");
  if (const auto* values = std::get_if<ValueSet>(&a))
    return sets_intersect_values(*values, std::get<ValueSet>(b));
  return std::get<IntervalUnion>(a).intersects(std::get<IntervalUnion>(b));
}

AbstractSet set_union(const AbstractSet& a, const AbstractSet& b) {
  if (a.index() != b.index())
    throw InvalidArgument("cannot unite discrete and interval sets");
  if (const auto* values = std::get_if<ValueSet>(&a)) {
    ValueSet out = *values;
    const ValueSet& other = std::get<ValueSet>(b);
    out.insert(other.begin(), other.end());
    return out;
  }
  return unite(std::get<IntervalUnion>(a), std::get<IntervalUnion>(b));
}

RangeFamily RangeFamily::from(const SetFamily& family) {
  RangeFamily out;
  out.members.reserve(family.members.size());
  for (const auto& member : family.members)
    out.members.push_back({member.label, AbstractSet(member.set)});
  return out;
}

Partition overlap_partition(const RangeFamily& family) {
  const std::size_t n = family.members.size();
  if (n == 0) throw InvalidArgument("overlap partition of an empty family");
  for (const auto& member : family.members) {
    if (set_is_empty(member.set))
      throw InvalidArgument("family member '" + member.label.str() +
                            "' is empty");
    if (member.set.index() != family.members.front().set.index())
      throw InvalidArgument("family mixes discrete and interval members");
  }

  UnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (uf.find(i) != uf.find(j) &&
          sets_intersect(family.members[i].set, family.members[j].set))
        uf.unite(i, j);
    }
  }

  std::map<std::size_t, AbstractSet> by_root;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = uf.find(i);
    auto it = by_root.find(root);
    if (it == by_root.end()) {
      by_root.emplace(root, family.members[i].set);
    } else {
      it->second = set_union(it->second, family.members[i].set);
    }
  }

  Partition out;
  std::vector<std::pair<std::size_t, AbstractSet>> blocks(by_root.begin(),
                                                          by_root.end());
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) {
              return BlockLess{}(a.second, b.second);
            });
  std::map<std::size_t, std::size_t> root_to_block;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    root_to_block[blocks[b].first] = b;
    out.blocks.push_back(std::move(blocks[b].second));
  }
  for (std::size_t i = 0; i < n; ++i)
    out.provenance[family.members[i].label] = root_to_block[uf.find(i)];
  return out;
}

Partition taxicab_partition(const ValueSet& joint_pairs) {
  if (joint_pairs.empty())
    throw InvalidArgument("taxicab partition of an empty joint range");
  std::vector<const Value*> points;
  points.reserve(joint_pairs.size());
  for (const Value& p : joint_pairs) {
    if (!p.is_tuple() || p.tuple().size() != 2)
      throw InvalidArgument("joint range element is not a pair: " + p.str());
    points.push_back(&p);
  }

  const std::size_t n = points.size();
  UnionFind uf(n);
  std::map<Value, std::size_t> first_with_x;
  std::map<Value, std::size_t> first_with_y;
  for (std::size_t i = 0; i < n; ++i) {
    const Value& x = points[i]->tuple()[0];
    const Value& y = points[i]->tuple()[1];
    auto [xi, x_new] = first_with_x.emplace(x, i);
    if (!x_new) uf.unite(i, xi->second);
    auto [yi, y_new] = first_with_y.emplace(y, i);
    if (!y_new) uf.unite(i, yi->second);
  }

  std::map<std::size_t, ValueSet> by_root;
  for (std::size_t i = 0; i < n; ++i)
    by_root[uf.find(i)].insert(*points[i]);

  Partition out;
  std::vector<std::pair<std::size_t, ValueSet>> blocks(by_root.begin(),
                                                       by_root.end());
  std::sort(blocks.begin(), blocks.end(), [](const auto& a, const auto& b) {
    return *a.second.begin() < *b.second.begin();
  });
  std::map<std::size_t, std::size_t> root_to_block;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    root_to_block[blocks[b].first] = b;
    out.blocks.emplace_back(std::move(blocks[b].second));
  }
  for (std::size_t i = 0; i < n; ++i)
    out.provenance[*points[i]] = root_to_block[uf.find(i)];
  return out;
}

ValueSet project_pairs(const ValueSet& pairs, std::size_t coordinate) {
  if (coordinate > 1) throw InvalidArgument("pair coordinate must be 0 or 1");
  ValueSet out;
  for (const Value& p : pairs) {
    if (!p.is_tuple() || p.tuple().size() != 2)
      throw InvalidArgument("not a pair: " + p.str());
    out.insert(p.tuple()[coordinate]);
  }
  return out;
}

}  // namespace nonstoch
