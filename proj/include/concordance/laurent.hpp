#pragma once

#include <map>
#include <string>
#include <utility>

#include "concordance/integer.hpp"

namespace concordance {

/// Integer Laurent polynomial; the support never holds zero coefficients.
class LaurentPoly {
 public:
  using Terms = std::map<long long, BigInt>;

  LaurentPoly() = default;
  explicit LaurentPoly(BigInt constant) { add_term(0, std::move(constant)); }
  LaurentPoly(std::initializer_list<std::pair<long long, long long>> terms) {
    for (const auto& [e, c] : terms) add_term(e, BigInt(c));
  }

  /// Coefficients listed from t^0 upward.
  static LaurentPoly from_coeffs(std::initializer_list<long long> coeffs) {
    LaurentPoly p;
    long long e = 0;
    for (long long c : coeffs) p.add_term(e++, BigInt(c));
    return p;
  }

  static LaurentPoly monomial(long long exp, BigInt coef) {
    LaurentPoly p;
    p.add_term(exp, std::move(coef));
    return p;
  }

  void add_term(long long exp, const BigInt& coef) {
    if (coef == 0) return;
    auto [it, inserted] = terms_.try_emplace(exp, coef);
    if (!inserted) {
      it->second += coef;
      if (it->second == 0) terms_.erase(it);
    }
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  long long low() const { return terms_.empty() ? 0 : terms_.begin()->first; }
  long long high() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }
  long long span() const { return high() - low(); }

  BigInt coeff(long long exp) const {
    auto it = terms_.find(exp);
    return it == terms_.end() ? BigInt(0) : it->second;
  }
  const BigInt& leading() const { return terms_.rbegin()->second; }
  const BigInt& trailing() const { return terms_.begin()->second; }

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
  }
  friend LaurentPoly operator-(const LaurentPoly& a) {
    LaurentPoly r;
    for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, -c);
    return r;
  }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }

  /// p(t) -> p(t^c).
  LaurentPoly substitute_power(long long c) const {
    if (c == 0) {
      BigInt s = 0;
      for (const auto& [e, v] : terms_) s += v;
      return LaurentPoly(s);
    }
    LaurentPoly r;
    for (const auto& [e, v] : terms_) r.terms_.emplace(e * c, v);
    return r;
  }

  /// p(t) -> p(t^{-1}).
  LaurentPoly reflect() const { return substitute_power(-1); }

  /// t^k * p(t).
  LaurentPoly shift(long long k) const {
    LaurentPoly r;
    for (const auto& [e, v] : terms_) r.terms_.emplace(e + k, v);
    return r;
  }

  BigInt eval(const BigInt& t) const {
    if (terms_.empty()) return 0;
    if (low() < 0) throw parameter_error("LaurentPoly::eval: negative exponents at an integer point");
    BigInt acc = 0;
    long long e = high();
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      while (e > it->first) {
        acc *= t;
        --e;
      }
      acc += it->second;
    }
    while (e > 0) {
      acc *= t;
      --e;
    }
    return acc;
  }

  /// Representative with lowest exponent 0 and positive leading coefficient.
  LaurentPoly normalized() const {
    if (terms_.empty()) return {};
    LaurentPoly r = shift(-low());
    return leading() < 0 ? -r : r;
  }

  std::string to_string(const char* var = "t") const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      const BigInt mag = boost::multiprecision::abs(c);
      if (first)
        out += c < 0 ? "-" : "";
      else
        out += c < 0 ? " - " : " + ";
      first = false;
      if (mag != 1 || e == 0) out += mag.str();
      if (e != 0) {
        out += var;
        if (e != 1) out += "^" + std::to_string(e);
      }
    }
    return out;
  }

 private:
  Terms terms_;
};

/// True iff b == ±t^k a for some k.
inline bool equal_up_to_unit(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return a.normalized() == b.normalized();
}

}  // namespace concordance
