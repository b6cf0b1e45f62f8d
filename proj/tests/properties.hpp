#pragma once

// Randomized property checks shared by the property suite and the
// acceptance runner. Each check returns the number of violations found;
// generators are deterministic in the seed.

#include <nonstoch/channel.hpp>
#include <nonstoch/ensemble.hpp>
#include <nonstoch/info.hpp>

#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"

namespace properties {

using namespace nonstoch;
using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t n) { return rng() % n; }

/// Ensemble with 2 or 3 variables, up to 6 samples, values in {0,1,2}.
inline Ensemble random_ensemble(Rng& rng, bool three_vars) {
  const std::size_t samples = 1 + pick(rng, 6);
  std::vector<std::string> variables{"X", "Y"};
  if (three_vars) variables.push_back("Z");
  std::vector<std::vector<Value>> rows;
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<Value> row;
    for (std::size_t v = 0; v < variables.size(); ++v)
      row.push_back(Value(static_cast<int>(pick(rng, 3))));
    rows.push_back(std::move(row));
  }
  return Ensemble(std::move(variables), std::move(rows));
}

/// X <-> Y <-> Z by construction: for each realizable y, the samples are the
/// full product of an X-set and a Z-set.
inline Ensemble random_markov_ensemble(Rng& rng) {
  const std::size_t y_count = 1 + pick(rng, 3);
  std::vector<std::vector<Value>> rows;
  for (std::size_t y = 0; y < y_count; ++y) {
    std::vector<int> xs, zs;
    for (int v = 0; v < 3; ++v) {
      if (rng() % 2) xs.push_back(v);
      if (rng() % 2) zs.push_back(v);
    }
    if (xs.empty()) xs.push_back(static_cast<int>(pick(rng, 3)));
    if (zs.empty()) zs.push_back(static_cast<int>(pick(rng, 3)));
    for (int x : xs) {
      for (int z : zs)
        rows.push_back({Value(x), Value(static_cast<int>(y)), Value(z)});
    }
  }
  return Ensemble({"X", "Y", "Z"}, std::move(rows));
}

/// Y1, ..., Ym unrelated conditional on X by construction.
inline Ensemble random_conditionally_unrelated(Rng& rng, std::size_t m) {
  const std::size_t x_count = 1 + pick(rng, 3);
  std::vector<std::string> variables{"X"};
  for (std::size_t i = 0; i < m; ++i)
    variables.push_back("Y" + std::to_string(i + 1));
  std::vector<std::vector<Value>> rows;
  for (std::size_t x = 0; x < x_count; ++x) {
    std::vector<std::vector<int>> sets(m);
    for (std::size_t i = 0; i < m; ++i) {
      for (int v = 0; v < 3; ++v)
        if (rng() % 2) sets[i].push_back(v);
      if (sets[i].empty()) sets[i].push_back(static_cast<int>(pick(rng, 3)));
    }
    std::vector<std::size_t> index(m, 0);
    while (true) {
      std::vector<Value> row{Value(static_cast<int>(x))};
      for (std::size_t i = 0; i < m; ++i)
        row.push_back(Value(sets[i][index[i]]));
      rows.push_back(std::move(row));
      std::size_t i = 0;
      while (i < m && ++index[i] == sets[i].size()) index[i++] = 0;
      if (i == m) break;
    }
  }
  return Ensemble(std::move(variables), std::move(rows));
}

/// Random total transition map over alphabets of size <= 3; the output
/// alphabet is the union of the images, so the channel always validates.
inline Channel random_channel(Rng& rng, std::size_t max_symbols = 3) {
  const std::size_t nx = 1 + pick(rng, max_symbols);
  const std::size_t ny = 1 + pick(rng, max_symbols);
  ValueSet inputs;
  std::map<Value, ValueSet> transition;
  ValueSet outputs;
  for (std::size_t x = 0; x < nx; ++x) {
    ValueSet image;
    for (std::size_t y = 0; y < ny; ++y)
      if (rng() % 2) image.insert(Value(static_cast<int>(y)));
    if (image.empty()) image.insert(Value(static_cast<int>(pick(rng, ny))));
    outputs.insert(image.begin(), image.end());
    inputs.insert(Value(static_cast<int>(x)));
    transition[Value(static_cast<int>(x))] = std::move(image);
  }
  return Channel::make(std::move(inputs), std::move(outputs),
                       std::move(transition));
}

/// Random family of <= 6 nonempty subsets of a ground set of <= 6 points.
inline RangeFamily random_family(Rng& rng) {
  const std::size_t points = 1 + pick(rng, 6);
  const std::size_t members = 1 + pick(rng, 6);
  RangeFamily family;
  for (std::size_t i = 0; i < members; ++i) {
    ValueSet set;
    for (std::size_t v = 0; v < points; ++v)
      if (rng() % 2) set.insert(Value(static_cast<int>(v)));
    if (set.empty()) set.insert(Value(static_cast<int>(pick(rng, points))));
    family.members.push_back({Value(static_cast<int>(i)), std::move(set)});
  }
  return family;
}

// --- property checks; each returns the number of violating instances ---

inline int check_symmetry(Rng& rng, int trials) {
  int violations = 0;
  for (int i = 0; i < trials; ++i) {
    const Ensemble e = random_ensemble(rng, false);
    if (!(maximin_info(e, "X", "Y") == maximin_info(e, "Y", "X")))
      ++violations;
  }
  return violations;
}

inline int check_entropy_bound(Rng& rng, int trials) {
  int violations = 0;
  for (int i = 0; i < trials; ++i) {
    const Ensemble e = random_ensemble(rng, false);
    const Bits info = maximin_info(e, "X", "Y");
    if (!(info <= hartley(marginal_range(e, "X"))) ||
        !(info <= hartley(marginal_range(e, "Y"))))
      ++violations;
  }
  return violations;
}

inline int check_more_data(Rng& rng, int trials) {
  int violations = 0;
  for (int i = 0; i < trials; ++i) {
    const Ensemble e =
        merge_variables(random_ensemble(rng, true), {"Y", "Z"}, "YZ");
    if (!(maximin_info(e, "X", "Y") <= maximin_info(e, "X", "YZ")))
      ++violations;
  }
  return violations;
}

inline int check_data_processing(Rng& rng, int trials) {
  int violations = 0;
  for (int i = 0; i < trials; ++i) {
    const Ensemble e = random_markov_ensemble(rng);
    if (!is_markov_chain(e, "X", "Y", "Z")) {
      ++violations;  // generator contract
      continue;
    }
    const Bits xz = maximin_info(e, "X", "Z");
    if (!(xz <= maximin_info(e, "X", "Y")) ||
        !(xz <= maximin_info(e, "Y", "Z")))
      ++violations;
  }
  return violations;
}

inline int check_projection_correspondence(Rng& rng, int trials) {
  int violations = 0;
  for (int i = 0; i < trials; ++i) {
    const Ensemble e = random_ensemble(rng, false);
    const Partition taxicab = taxicab_partition(joint_range(e, {"X", "Y"}));
    for (std::size_t axis = 0; axis < 2; ++axis) {
      const auto& first = axis == 0 ? "X" : "Y";
      const auto& second = axis == 0 ? "Y" : "X";
      const Partition overlap = overlap_partition(
          RangeFamily::from(conditional_family(e, first, {second})));
      std::set<ValueSet> projected;
      for (const AbstractSet& block : taxicab.blocks)
        projected.insert(
            project_pairs(std::get<ValueSet>(block), axis));
      std::set<ValueSet> expected;
      for (const AbstractSet& block : overlap.blocks)
        expected.insert(std::get<ValueSet>(block));
      if (projected != expected) ++violations;
    }
  }
  return violations;
}

inline int check_block_range_formula(Rng& rng, int trials) {
  int violations = 0;
  for (int i = 0; i < trials; ++i) {
    const Channel channel = random_channel(rng);
    const unsigned tau = 1 + static_cast<unsigned>(pick(rng, 2));
    std::vector<Value> blocks;
    std::function<void(Value::Tuple&)> grow = [&](Value::Tuple& prefix) {
      if (prefix.size() == tau) {
        blocks.push_back(Value(prefix));
        return;
      }
      for (const Value& x : channel.inputs()) {
        prefix.push_back(x);
        grow(prefix);
        prefix.pop_back();
      }
    };
    Value::Tuple prefix;
    grow(prefix);
    ValueSet range;
    for (const Value& b : blocks)
      if (rng() % 2) range.insert(b);
    if (range.empty()) range.insert(blocks[pick(rng, blocks.size())]);

    std::vector<Value> outputs(channel.outputs().begin(),
                               channel.outputs().end());
    std::vector<std::size_t> digits(tau, 0);
    while (true) {
      Value::Tuple y;
      for (std::size_t d = 0; d < tau; ++d) y.push_back(outputs[digits[d]]);
      if (block_conditional_range(channel, range, y) !=
          oracles::block_conditional_by_ensemble(channel, range, y))
        ++violations;
      std::size_t d = 0;
      while (d < tau && ++digits[d] == outputs.size()) digits[d++] = 0;
      if (d == tau) break;
    }
  }
  return violations;
}

inline int check_intersection_splitting(Rng& rng, int trials) {
  int violations = 0;
  for (int i = 0; i < trials; ++i) {
    const std::size_t m = 2 + pick(rng, 2);
    const Ensemble e = random_conditionally_unrelated(rng, m);
    std::vector<std::string> ys;
    for (std::size_t k = 1; k <= m; ++k) ys.push_back("Y" + std::to_string(k));
    for (const Value& tuple : joint_range(e, ys)) {
      std::map<std::string, Value> cond;
      for (std::size_t k = 0; k < m; ++k) cond[ys[k]] = tuple.tuple()[k];
      ValueSet expected = conditional_range(e, "X", {{ys[0], tuple.tuple()[0]}});
      for (std::size_t k = 1; k < m; ++k) {
        ValueSet next;
        for (const Value& v :
             conditional_range(e, "X", {{ys[k], tuple.tuple()[k]}}))
          if (expected.count(v)) next.insert(v);
        expected = std::move(next);
      }
      if (conditional_range(e, "X", cond) != expected) ++violations;
    }
  }
  return violations;
}

/// Conditioning on several observations never exceeds the intersection of
/// the single-observation posteriors, on arbitrary ensembles.
inline int check_conditional_subset(Rng& rng, int trials) {
  int violations = 0;
  for (int i = 0; i < trials; ++i) {
    const Ensemble e = random_ensemble(rng, true);
    for (const Value& yz : joint_range(e, {"Y", "Z"})) {
      const Value& y = yz.tuple()[0];
      const Value& z = yz.tuple()[1];
      const ValueSet joint = conditional_range(e, "X", {{"Y", y}, {"Z", z}});
      const ValueSet via_y = conditional_range(e, "X", {{"Y", y}});
      const ValueSet via_z = conditional_range(e, "X", {{"Z", z}});
      for (const Value& v : joint) {
        if (!via_y.count(v) || !via_z.count(v)) ++violations;
      }
    }
  }
  return violations;
}

inline int check_conditioning_characterization(Rng& rng, int trials) {
  int violations = 0;
  for (int i = 0; i < trials; ++i) {
    const Ensemble e = random_ensemble(rng, true);
    // Unconditional: unrelated(Y, Z) iff every slice of Y given z is full.
    bool slices_full = true;
    for (const Value& z : marginal_range(e, "Z")) {
      if (conditional_range(e, "Y", {{"Z", z}}) != marginal_range(e, "Y"))
        slices_full = false;
    }
    if (is_unrelated(e, {"Y", "Z"}) != slices_full) ++violations;
    // Conditional version against the joint characterization.
    bool cond_slices = true;
    for (const Value& zx : joint_range(e, {"Z", "X"})) {
      const Value& z = zx.tuple()[0];
      const Value& x = zx.tuple()[1];
      if (conditional_range(e, "Y", {{"Z", z}, {"X", x}}) !=
          conditional_range(e, "Y", {{"X", x}}))
        cond_slices = false;
    }
    if (is_unrelated(e, {"Y", "Z"}, "X") != cond_slices) ++violations;
  }
  return violations;
}

inline int check_partition_maximality(Rng& rng, int trials) {
  int violations = 0;
  for (int i = 0; i < trials; ++i) {
    const RangeFamily family = random_family(rng);
    const Partition partition = overlap_partition(family);
    ValueSet ground_set;
    for (const auto& member : family.members) {
      const auto& set = std::get<ValueSet>(member.set);
      ground_set.insert(set.begin(), set.end());
    }
    const std::vector<Value> ground(ground_set.begin(), ground_set.end());
    std::set<ValueSet> ours;
    for (const auto& block : partition.blocks)
      ours.insert(std::get<ValueSet>(block));
    for (const auto& candidate : oracles::all_partitions(ground)) {
      if (!oracles::member_respecting(candidate, family)) continue;
      if (candidate.size() > partition.blocks.size()) ++violations;
      if (candidate.size() == partition.blocks.size()) {
        std::set<ValueSet> theirs(candidate.begin(), candidate.end());
        if (theirs != ours) ++violations;
      }
    }
  }
  return violations;
}

inline int check_unrelated_implies_zero_info(Rng& rng, int trials) {
  int violations = 0;
  for (int i = 0; i < trials; ++i) {
    const Ensemble e = random_ensemble(rng, false);
    if (is_unrelated(e, {"X", "Y"}) &&
        maximin_info(e, "X", "Y").value() != 0.0)
      ++violations;
  }
  return violations;
}

}  // namespace properties
