#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace nonstoch {

using Rational = boost::rational<long long>;

/// Parses "p/q" or a bare integer literal (decimal, optional sign).
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& r);

/// An exact discrete token: integer, rational, symbol string, or a finite
/// tuple of tokens. Equality is exact and decidable, the ordering is total
/// (kind first, then payload; tuples compare componentwise), and values hash,
/// so they can serve as set elements and map keys everywhere in the library.
/// Rationals with denominator 1 normalize to integers on construction.
class Value {
 public:
  using Int = long long;
  using Tuple = std::vector<Value>;

  Value() : repr_(Int{0}) {}
  Value(Int i) : repr_(i) {}
  Value(int i) : repr_(static_cast<Int>(i)) {}
  Value(const Rational& r);
  Value(std::string symbol) : repr_(std::move(symbol)) {}
  Value(const char* symbol) : repr_(std::string(symbol)) {}
  Value(Tuple items) : repr_(std::move(items)) {}

  bool is_int() const { return repr_.index() == 0; }
  bool is_rational() const { return repr_.index() == 1; }
  bool is_symbol() const { return repr_.index() == 2; }
  bool is_tuple() const { return repr_.index() == 3; }

  Int int_value() const;
  /// Integers promote, so this works for both int and rational values.
  Rational rational_value() const;
  const std::string& symbol() const;
  const Tuple& tuple() const;

  /// Canonical display form: "5", "-1/2", "abc", "(1,2)".
  std::string str() const;

  std::size_t hash() const;

  friend bool operator==(const Value& a, const Value& b) {
    return a.repr_ == b.repr_;
  }
  friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }
  friend bool operator<(const Value& a, const Value& b);

 private:
  std::variant<Int, Rational, std::string, Tuple> repr_;
};

std::ostream& operator<<(std::ostream& os, const Value& v);

/// Parses a bare token the way JSON map keys are read: integer first, then
/// "p/q", otherwise a symbol.
Value parse_value_token(const std::string& text);

}  // namespace nonstoch

template <>
struct std::hash<nonstoch::Value> {
  std::size_t operator()(const nonstoch::Value& v) const { return v.hash(); }
};
