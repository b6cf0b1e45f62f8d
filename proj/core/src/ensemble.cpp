#include "nonstoch/ensemble.hpp"

#include <algorithm>

#include "nonstoch/errors.hpp"

namespace nonstoch {

namespace {

std::vector<std::size_t> matching_samples(
    const Ensemble& e, const std::map<std::string, Value>& cond) {
  std::vector<std::pair<std::size_t, const Value*>> bindings;
  bindings.reserve(cond.size());
  for (const auto& [name, value] : cond)
    bindings.emplace_back(e.variable_index(name), &value);

  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < e.sample_count(); ++s) {
    bool ok = true;
    for (const auto& [vi, value] : bindings) {
      if (!(e.at(s, vi) == *value)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(s);
  }
  return out;
}

Ensemble restrict_to(const Ensemble& e,
                     const std::map<std::string, Value>& cond) {
  const auto keep = matching_samples(e, cond);
  if (keep.empty())
    throw EmptyConditionError("condition matches no sample");
  std::vector<std::vector<Value>> rows;
  rows.reserve(keep.size());
  for (std::size_t s : keep) {
    std::vector<Value> row;
    row.reserve(e.variables().size());
    for (std::size_t v = 0; v < e.variables().size(); ++v)
      row.push_back(e.at(s, v));
    rows.push_back(std::move(row));
  }
  return Ensemble(e.variables(), std::move(rows));
}

unsigned long long product_of_marginal_sizes(
    const Ensemble& e, const std::vector<std::string>& names) {
  unsigned long long product = 1;
  for (const auto& name : names) product *= marginal_range(e, name).size();
  return product;
}

}  // namespace

Ensemble::Ensemble(std::vector<std::string> variables,
                   std::vector<std::vector<Value>> rows)
    : variables_(std::move(variables)), rows_(std::move(rows)) {
  if (rows_.empty()) throw InvalidArgument("ensemble needs at least one sample");
  if (variables_.empty()) throw InvalidArgument("ensemble needs at least one variable");
  for (std::size_t v = 0; v < variables_.size(); ++v) {
    if (!index_.emplace(variables_[v], v).second)
      throw InvalidArgument("duplicate variable name '" + variables_[v] + "'");
  }
  for (const auto& row : rows_) {
    if (row.size() != variables_.size())
      throw InvalidArgument("sample width does not match variable count");
  }
}

bool Ensemble::has_variable(const std::string& name) const {
  return index_.count(name) != 0;
}

std::size_t Ensemble::variable_index(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end())
    throw InvalidArgument("unknown variable '" + name + "'");
  return it->second;
}

Ensemble build_ensemble(
    const std::vector<std::map<std::string, Value>>& rows) {
  if (rows.empty()) throw InvalidArgument("ensemble needs at least one sample");
  std::vector<std::string> variables;
  variables.reserve(rows.front().size());
  for (const auto& [name, _] : rows.front()) variables.push_back(name);

  std::vector<std::vector<Value>> data;
  data.reserve(rows.size());
  for (const auto& row : rows) {
    if (row.size() != variables.size())
      throw InvalidArgument("inconsistent variable names across rows");
    std::vector<Value> values;
    values.reserve(variables.size());
    for (const auto& name : variables) {
      auto it = row.find(name);
      if (it == row.end())
        throw InvalidArgument("inconsistent variable names across rows");
      values.push_back(it->second);
    }
    data.push_back(std::move(values));
  }
  return Ensemble(std::move(variables), std::move(data));
}

ValueSet marginal_range(const Ensemble& e, const std::string& name) {
  const std::size_t vi = e.variable_index(name);
  ValueSet out;
  for (std::size_t s = 0; s < e.sample_count(); ++s) out.insert(e.at(s, vi));
  return out;
}

ValueSet conditional_range(const Ensemble& e, const std::string& x,
                           const std::map<std::string, Value>& cond) {
  const std::size_t xi = e.variable_index(x);
  for (const auto& [name, _] : cond) e.variable_index(name);
  const auto samples = matching_samples(e, cond);
  if (samples.empty())
    throw EmptyConditionError("condition matches no sample");
  ValueSet out;
  for (std::size_t s : samples) out.insert(e.at(s, xi));
  return out;
}

ValueSet joint_range(const Ensemble& e,
                     const std::vector<std::string>& names) {
  if (names.empty()) throw InvalidArgument("joint range needs at least one name");
  std::vector<std::size_t> idx;
  idx.reserve(names.size());
  for (const auto& name : names) idx.push_back(e.variable_index(name));
  ValueSet out;
  for (std::size_t s = 0; s < e.sample_count(); ++s) {
    Value::Tuple row;
    row.reserve(idx.size());
    for (std::size_t vi : idx) row.push_back(e.at(s, vi));
    out.insert(Value(std::move(row)));
  }
  return out;
}

SetFamily conditional_family(const Ensemble& e, const std::string& x,
                             const std::vector<std::string>& given) {
  if (given.empty())
    throw InvalidArgument("conditional family needs a conditioning variable");
  const std::size_t xi = e.variable_index(x);
  std::vector<std::size_t> gi;
  gi.reserve(given.size());
  for (const auto& name : given) gi.push_back(e.variable_index(name));

  std::map<Value, ValueSet> grouped;
  for (std::size_t s = 0; s < e.sample_count(); ++s) {
    Value label = [&] {
      if (gi.size() == 1) return e.at(s, gi[0]);
      Value::Tuple items;
      items.reserve(gi.size());
      for (std::size_t vi : gi) items.push_back(e.at(s, vi));
      return Value(std::move(items));
    }();
    grouped[std::move(label)].insert(e.at(s, xi));
  }

  SetFamily family;
  family.members.reserve(grouped.size());
  for (auto& [label, set] : grouped)
    family.members.push_back({label, std::move(set)});
  return family;
}

bool is_unrelated(const Ensemble& e, const std::vector<std::string>& names,
                  const std::optional<std::string>& given) {
  if (names.size() < 2)
    throw InvalidArgument("unrelatedness needs at least two variables");
  for (const auto& name : names) e.variable_index(name);
  if (!given) {
    // The joint range is always contained in the product of marginals, so
    // equality is a cardinality check.
    return joint_range(e, names).size() == product_of_marginal_sizes(e, names);
  }
  for (const Value& g : marginal_range(e, *given)) {
    const Ensemble slice = restrict_to(e, {{*given, g}});
    if (joint_range(slice, names).size() !=
        product_of_marginal_sizes(slice, names))
      return false;
  }
  return true;
}

bool is_markov_chain(const Ensemble& e, const std::string& x,
                     const std::string& y, const std::string& z) {
  e.variable_index(x);
  for (const Value& joint : joint_range(e, {y, z})) {
    const Value& yv = joint.tuple()[0];
    const Value& zv = joint.tuple()[1];
    if (conditional_range(e, x, {{y, yv}, {z, zv}}) !=
        conditional_range(e, x, {{y, yv}}))
      return false;
  }
  return true;
}

Ensemble merge_variables(const Ensemble& e,
                         const std::vector<std::string>& names,
                         const std::string& merged_name) {
  if (names.empty()) throw InvalidArgument("nothing to merge");
  if (e.has_variable(merged_name))
    throw InvalidArgument("variable '" + merged_name + "' already exists");
  std::vector<std::size_t> idx;
  idx.reserve(names.size());
  for (const auto& name : names) idx.push_back(e.variable_index(name));

  std::vector<std::string> variables = e.variables();
  variables.push_back(merged_name);
  std::vector<std::vector<Value>> rows;
  rows.reserve(e.sample_count());
  for (std::size_t s = 0; s < e.sample_count(); ++s) {
    std::vector<Value> row;
    row.reserve(variables.size());
    for (std::size_t v = 0; v + 1 < variables.size(); ++v)
      row.push_back(e.at(s, v));
    Value::Tuple merged;
    merged.reserve(idx.size());
    for (std::size_t vi : idx) merged.push_back(e.at(s, vi));
    row.push_back(Value(std::move(merged)));
    rows.push_back(std::move(row));
  }
  return Ensemble(std::move(variables), std::move(rows));
}

}  // namespace nonstoch
