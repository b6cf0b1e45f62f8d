#include "nonstoch/value.hpp"

#include <cctype>
#include <ostream>
#include <sstream>

#include "nonstoch/errors.hpp"

namespace nonstoch {

namespace {

bool is_integer_literal(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

std::size_t hash_combine(std::size_t seed, std::size_t h) {
  // boost-style mix
  return seed ^ (h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      if (!is_integer_literal(text))
        throw InvalidArgument("not a rational literal: '" + text + "'");
      return Rational(std::stoll(text));
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den))
      throw InvalidArgument("not a rational literal: '" + text + "'");
    const long long d = std::stoll(den);
    if (d == 0) throw InvalidArgument("zero denominator in '" + text + "'");
    return Rational(std::stoll(num), d);
  } catch (const std::out_of_range&) {
    throw InvalidArgument("rational literal out of range: '" + text + "'");
  }
}

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << '/' << r.denominator();
  return os.str();
}

Value::Value(const Rational& r) {
  if (r.denominator() == 1) {
    repr_ = r.numerator();
  } else {
    repr_ = r;
  }
}

Value::Int Value::int_value() const {
  if (!is_int()) throw InvalidArgument("value is not an integer: " + str());
  return std::get<Int>(repr_);
}

Rational Value::rational_value() const {
  if (is_int()) return Rational(std::get<Int>(repr_));
  if (is_rational()) return std::get<Rational>(repr_);
  throw InvalidArgument("value is not numeric: " + str());
}

const std::string& Value::symbol() const {
  if (!is_symbol()) throw InvalidArgument("value is not a symbol: " + str());
  return std::get<std::string>(repr_);
}

const Value::Tuple& Value::tuple() const {
  if (!is_tuple()) throw InvalidArgument("value is not a tuple: " + str());
  return std::get<Tuple>(repr_);
}

std::string Value::str() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::size_t Value::hash() const {
  std::size_t seed = repr_.index();
  switch (repr_.index()) {
    case 0:
      return hash_combine(seed, std::hash<Int>{}(std::get<Int>(repr_)));
    case 1: {
      const auto& r = std::get<Rational>(repr_);
      seed = hash_combine(seed, std::hash<long long>{}(r.numerator()));
      return hash_combine(seed, std::hash<long long>{}(r.denominator()));
    }
    case 2:
      return hash_combine(seed,
                          std::hash<std::string>{}(std::get<std::string>(repr_)));
    default: {
      for (const Value& item : std::get<Tuple>(repr_))
        seed = hash_combine(seed, item.hash());
      return seed;
    }
  }
}

bool operator<(const Value& a, const Value& b) { return a.repr_ < b.repr_; }

std::ostream& operator<<(std::ostream& os, const Value& v) {
  if (v.is_int()) {
    os << v.int_value();
  } else if (v.is_rational()) {
    os << to_string(v.rational_value());
  } else if (v.is_symbol()) {
    os << v.symbol();
  } else {
    os << '(';
    const auto& items = v.tuple();
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i != 0) os << ',';
      os << items[i];
    }
    os << ')';
  }
  return os;
}

Value parse_value_token(const std::string& text) {
  if (is_integer_literal(text)) {
    try {
      return Value(static_cast<Value::Int>(std::stoll(text)));
    } catch (const std::out_of_range&) {
      throw InvalidArgument("integer literal out of range: '" + text + "'");
    }
  }
  if (text.find('/') != std::string::npos) {
    const auto slash = text.find('/');
    if (is_integer_literal(text.substr(0, slash)) &&
        is_integer_literal(text.substr(slash + 1)))
      return Value(parse_rational(text));
  }
  return Value(text);
}

}  // namespace nonstoch
