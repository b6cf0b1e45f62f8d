#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nonstoch/value.hpp"

namespace nonstoch {

using ValueSet = std::set<Value>;

/// Labeled family of conditional ranges. One member per realizable value of
/// the conditioning variable; member sets are nonempty and their union equals
/// the marginal range of the conditioned variable.
struct SetFamily {
  struct Member {
    Value label;
    ValueSet set;
  };
  std::vector<Member> members;
};

/// A finite sample space with named columns. Each sample is one joint
/// realization of every variable; every range the library computes is
/// derived from the samples, never stored independently. Immutable after
/// construction and safe to share across threads.
class Ensemble {
 public:
  /// `rows` is row-major: rows[s][v] is the value of variables[v] in sample s.
  Ensemble(std::vector<std::string> variables,
           std::vector<std::vector<Value>> rows);

  std::size_t sample_count() const { return rows_.size(); }
  const std::vector<std::string>& variables() const { return variables_; }
  bool has_variable(const std::string& name) const;
  std::size_t variable_index(const std::string& name) const;  // throws

  const Value& at(std::size_t sample, std::size_t variable) const {
    return rows_[sample][variable];
  }

  friend bool operator==(const Ensemble& a, const Ensemble& b) {
    return a.variables_ == b.variables_ && a.rows_ == b.rows_;
  }

 private:
  std::vector<std::string> variables_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::vector<Value>> rows_;
};

/// Builds an ensemble from name→value rows. Variable order is the sorted key
/// order of the first row; every row must carry exactly the same names.
Ensemble build_ensemble(const std::vector<std::map<std::string, Value>>& rows);

ValueSet marginal_range(const Ensemble& e, const std::string& name);

/// Range of `x` over the samples matching every binding in `cond`.
/// Conditioning on an unrealizable combination raises EmptyConditionError.
ValueSet conditional_range(const Ensemble& e, const std::string& x,
                           const std::map<std::string, Value>& cond);

/// Set of distinct tuples (one coordinate per name, in the given order).
ValueSet joint_range(const Ensemble& e, const std::vector<std::string>& names);

/// Family of conditional ranges of `x`, one member per realizable value of
/// `given` (a tuple label when several names are given). Members are ordered
/// by label and their union is the marginal range of `x`.
SetFamily conditional_family(const Ensemble& e, const std::string& x,
                             const std::vector<std::string>& given);

/// True iff the joint range of `names` factors into the product of marginal
/// ranges; with `given`, iff the factorization holds conditional on every
/// realizable value of the given variable.
bool is_unrelated(const Ensemble& e, const std::vector<std::string>& names,
                  const std::optional<std::string>& given = std::nullopt);

/// True iff conditioning on z never refines what y already tells about x:
/// the range of x given (y, z) equals the range of x given y alone, for every
/// realizable (y, z). Symmetric in x and z.
bool is_markov_chain(const Ensemble& e, const std::string& x,
                     const std::string& y, const std::string& z);

/// Returns a copy of `e` with an extra tuple-valued column combining `names`.
Ensemble merge_variables(const Ensemble& e,
                         const std::vector<std::string>& names,
                         const std::string& merged_name);

}  // namespace nonstoch
