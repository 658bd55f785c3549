#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace concordance {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Thrown for inputs outside an operation's parameter domain.
class parameter_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline std::string to_decimal(const BigInt& v) { return v.str(); }

inline BigInt parse_decimal(std::string_view s) {
  if (s.empty()) throw parameter_error("empty integer literal");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw parameter_error("bad integer literal: " + std::string(s));
  for (std::size_t k = i; k < s.size(); ++k) {
    if (s[k] < '0' || s[k] > '9') throw parameter_error("bad integer literal: " + std::string(s));
  }
  return BigInt(std::string(s));
}

inline int sign(const BigInt& v) { return v.sign(); }

inline bool fits_int64(const BigInt& v) {
  return v >= BigInt(std::numeric_limits<std::int64_t>::min()) &&
         v <= BigInt(std::numeric_limits<std::int64_t>::max());
}

// Floor of the integer square root; v must be nonnegative.
inline BigInt isqrt(const BigInt& v) {
  if (v < 0) throw parameter_error("isqrt of negative value");
  return boost::multiprecision::sqrt(v);
}

inline bool is_perfect_square(const BigInt& v) {
  if (v < 0) return false;
  BigInt r = isqrt(v);
  return r * r == v;
}

/// "a/b", or "a" when the denominator is 1.
inline std::string to_string(const Rational& q) {
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" + den.str();
}

}  // namespace concordance
