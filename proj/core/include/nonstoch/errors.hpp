#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nonstoch {

/// Caller-side contract violation: bad file, unknown variable, value out of
/// the documented range. CLI maps this class to exit code 2.
class InvalidArgument : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Conditioning on a value that no sample realizes. Distinguished from an
/// empty set on purpose: realizable conditions always yield nonempty ranges.
class EmptyConditionError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A computed invariant failed. Indicates a bug in this library, never bad
/// input. CLI maps this to exit code 3.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Exact search ran past its configured budget. Carries the best certified
/// lower bound found so far. CLI maps this to exit code 4.
class SearchBudgetExceeded : public std::runtime_error {
 public:
  SearchBudgetExceeded(const std::string& what, std::size_t best_lower_bound)
      : std::runtime_error(what), best_lower_bound_(best_lower_bound) {}

  std::size_t best_lower_bound() const { return best_lower_bound_; }

 private:
  std::size_t best_lower_bound_;
};

/// No feasible construction exists within the requested limits. CLI maps
/// this to exit code 5.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nonstoch
