#pragma once

// Classical invariants of the double twist knots K_{m,n}.
//
// Seifert convention: V = [[m, 1], [0, n]]. Then det(V - tV^T) is
// mn t^2 - (2mn - 1) t + mn, which is the twist-knot polynomial
// n t^2 - (2n + 1) t + n at m = -1 up to a unit. The sign of the signature
// depends on this convention; K_{1,1} has signature +2.

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "concordance/forms.hpp"
#include "concordance/laurent.hpp"

namespace concordance {

struct DoubleTwist {
  long long m = 0;
  long long n = 0;
  bool is_unknot() const { return m == 0 || n == 0; }
  friend bool operator==(const DoubleTwist&, const DoubleTwist&) = default;
};

/// Twist knot K_n = K_{-1,n}.
inline DoubleTwist twist_knot(long long n) { return {-1, n}; }

/// Square integer matrix of linking numbers, row-major.
struct SeifertMatrix {
  std::size_t dim = 0;
  std::vector<long long> entries;

  long long operator()(std::size_t i, std::size_t j) const { return entries[i * dim + j]; }
  friend bool operator==(const SeifertMatrix&, const SeifertMatrix&) = default;
};

inline SeifertMatrix seifert_matrix(const DoubleTwist& k) { return {2, {k.m, 1, 0, k.n}}; }

/// det(V - V^T), exact.
inline BigInt seifert_skew_determinant(const SeifertMatrix& v) {
  std::vector<BigInt> a(v.dim * v.dim);
  for (std::size_t i = 0; i < v.dim; ++i)
    for (std::size_t j = 0; j < v.dim; ++j) a[i * v.dim + j] = v(i, j) - v(j, i);
  if (v.dim == 0) return 1;
  return detail::bareiss(std::move(a), v.dim, true, [](const BigInt&) { return false; }).det;
}

/// det(V - tV^T) as a polynomial, by exact evaluation at dim+1 integer points
/// and Lagrange interpolation. Not normalized.
inline LaurentPoly seifert_alexander(const SeifertMatrix& v) {
  const std::size_t d = v.dim;
  if (d == 0) return LaurentPoly(BigInt(1));
  std::vector<BigInt> xs, ys;
  for (std::size_t s = 0; s <= d; ++s) {
    const BigInt t = static_cast<long long>(s);
    std::vector<BigInt> a(d * d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) a[i * d + j] = BigInt(v(i, j)) - t * v(j, i);
    xs.push_back(t);
    ys.push_back(detail::bareiss(std::move(a), d, true, [](const BigInt&) { return false; }).det);
  }
  // Newton divided differences over the rationals.
  std::vector<Rational> coef(ys.begin(), ys.end());
  for (std::size_t lvl = 1; lvl <= d; ++lvl)
    for (std::size_t i = d; i >= lvl; --i)
      coef[i] = (coef[i] - coef[i - 1]) / Rational(xs[i] - xs[i - lvl]);
  std::vector<Rational> poly(d + 1, Rational(0));
  for (std::size_t i = d + 1; i-- > 0;) {
    // poly = poly * (t - xs[i]) + coef[i]
    std::vector<Rational> next(d + 1, Rational(0));
    for (std::size_t e = 0; e < d; ++e) {
      next[e + 1] += poly[e];
      next[e] -= poly[e] * Rational(xs[i]);
    }
    next[0] += coef[i];
    poly = std::move(next);
  }
  LaurentPoly out;
  for (std::size_t e = 0; e <= d; ++e) {
    if (boost::multiprecision::denominator(poly[e]) != 1)
      throw std::logic_error("seifert_alexander: non-integral interpolation");
    out.add_term(static_cast<long long>(e), boost::multiprecision::numerator(poly[e]));
  }
  return out;
}

/// Alexander polynomial of K_{m,n}, normalized (lowest exponent 0, positive leading coefficient).
inline LaurentPoly alexander(const DoubleTwist& k) {
  const BigInt mn = BigInt(k.m) * k.n;
  LaurentPoly p;
  p.add_term(2, mn);
  p.add_term(1, -(2 * mn - 1));
  p.add_term(0, mn);
  return p.normalized();
}

/// Signature of V + V^T = [[2m, 1], [1, 2n]].
inline int signature(const DoubleTwist& k) {
  const BigInt det = BigInt(4) * k.m * k.n - 1;
  if (det < 0) return 0;
  return (k.m + k.n) > 0 ? 2 : -2;  // det > 0 forces mn > 0, so m + n != 0
}

namespace detail {

// Sign of cos(2 pi s) - c for rational s, c. Exact when cos(2 pi s) is
// rational (reduced denominator 1, 2, 3, 4 or 6); otherwise the two values
// differ and the sign is resolved with increasing binary precision.
inline int cos_compare(const Rational& s, const Rational& c) {
  const BigInt den = boost::multiprecision::denominator(s);
  const BigInt num = boost::multiprecision::numerator(s);
  std::optional<Rational> exact;
  const BigInt r = ((num % den) + den) % den;  // s mod 1 = r/den
  if (den == 1) exact = Rational(1);
  else if (den == 2) exact = Rational(-1);
  else if (den == 3) exact = Rational(-1, 2);
  else if (den == 4) exact = Rational(0);
  else if (den == 6) exact = Rational(1, 2);
  if (exact) {
    if (*exact == c) return 0;
    return *exact > c ? 1 : -1;
  }
  const double sd = static_cast<double>(r) / static_cast<double>(den);
  const double diff = std::cos(2.0 * std::numbers::pi * sd) - static_cast<double>(c);
  if (std::fabs(diff) > 1e-9) return diff > 0 ? 1 : -1;
  using F50 = boost::multiprecision::cpp_bin_float_50;
  const F50 x = F50(r) / F50(den);
  const F50 d50 = cos(2 * boost::math::constants::pi<F50>() * x) - F50(boost::multiprecision::numerator(c)) /
                                                                      F50(boost::multiprecision::denominator(c));
  if (abs(d50) > F50("1e-40")) return d50 > 0 ? 1 : -1;
  using F200 = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<200>>;
  const F200 x2 = F200(r) / F200(den);
  const F200 d200 = cos(2 * boost::math::constants::pi<F200>() * x2) -
                    F200(boost::multiprecision::numerator(c)) / F200(boost::multiprecision::denominator(c));
  if (d200 == 0) throw std::logic_error("cos_compare: unresolved sign");
  return d200 > 0 ? 1 : -1;
}

}  // namespace detail

/// Levine-Tristram signature at omega = exp(2 pi i s), s rational, s not an integer.
/// At roots of the Alexander polynomial returns the average of the one-sided limits.
inline int lt_signature(const DoubleTwist& k, const Rational& s) {
  if (boost::multiprecision::denominator(s) == 1) throw parameter_error("lt_signature: omega must not be 1");
  // H = [[m a, 1 - w], [1 - conj(w), n a]] with a = |1 - w|^2 = 2 - 2 cos(2 pi s) > 0.
  // det H = a (mn a - 1), trace H = (m + n) a.
  const long long mn = k.m * k.n;
  const int trace_sign = (k.m + k.n > 0) - (k.m + k.n < 0);
  int det_sign;
  if (mn == 0) {
    det_sign = -1;
  } else {
    // mn a - 1 = 2mn (1 - 1/(2mn) - cos) ; its sign is sign(mn) * sign(c - cos).
    const Rational c = Rational(1) - Rational(1) / (2 * mn);
    const int cmp = detail::cos_compare(s, c);
    det_sign = (mn > 0 ? 1 : -1) * -cmp;
  }
  if (det_sign < 0) return 0;
  if (det_sign > 0) return 2 * trace_sign;
  return trace_sign;
}

inline int lt_signature(const DoubleTwist& k, long long num, long long den) {
  if (den == 0) throw parameter_error("lt_signature: zero denominator");
  return lt_signature(k, Rational(num) / den);
}

/// unit_sign * t^unit_exp * f(t) * f(t^{-1}) == delta(t^complexity).
struct Factorization {
  LaurentPoly f;
  int unit_sign = 1;
  long long unit_exp = 0;
  long long complexity = 1;
};

inline bool verify_factorization(const LaurentPoly& delta, const Factorization& fac) {
  const LaurentPoly lhs = LaurentPoly::monomial(fac.unit_exp, BigInt(fac.unit_sign)) * fac.f * fac.f.reflect();
  return lhs == delta.substitute_power(fac.complexity);
}

/// Fox-Milnor search for degree-2 symmetric delta = a t^2 + b t + a (up to unit).
/// The middle coefficient of eps f(t) t^c f(1/t) is eps * sum a_i^2, so every
/// candidate f has sum of squares |b| and a_c a_0 = eps a. Candidates are
/// normalized to a_c > 0 and |a_c| >= |a_0|; the lexicographically least
/// (a_c, ..., a_0) that re-multiplies exactly is returned.
inline std::optional<Factorization> fox_milnor(const LaurentPoly& delta, long long c) {
  if (c < 1) throw parameter_error("fox_milnor: complexity must be positive");
  if (delta.is_zero()) throw parameter_error("fox_milnor: zero polynomial");
  if (delta.is_monomial()) {
    const BigInt& u = delta.leading();
    if (u != 1 && u != -1) return std::nullopt;
    return Factorization{LaurentPoly(BigInt(1)), u > 0 ? 1 : -1, delta.low() * c, c};
  }
  if (delta.span() != 2) throw parameter_error("fox_milnor: only degree-2 Alexander polynomials are supported");
  const long long lo = delta.low();
  const BigInt a = delta.coeff(lo);
  const BigInt b = delta.coeff(lo + 1);
  if (delta.coeff(lo + 2) != a) throw parameter_error("fox_milnor: polynomial is not symmetric");

  const auto len = static_cast<std::size_t>(c + 1);
  std::optional<std::vector<BigInt>> best;
  int best_eps = 1;
  for (int eps : {1, -1}) {
    const BigInt target = eps * b;
    if (target <= 0) continue;
    if (target > BigInt(1) << 62) throw parameter_error("fox_milnor: coefficients too large");
    const auto total = static_cast<long long>(target);
    std::vector<long long> coeffs(len, 0);  // coeffs[0] = a_c ... coeffs[c] = a_0
    auto rec = [&](auto& self, std::size_t i, long long rem) -> void {
      if (i == len) {
        if (rem != 0) return;
        const long long lead = coeffs[0], tail = coeffs[len - 1];
        if (lead <= 0 || tail == 0 || std::llabs(lead) < std::llabs(tail)) return;
        if (BigInt(lead) * tail != eps * a) return;
        LaurentPoly f;
        for (std::size_t j = 0; j < len; ++j) f.add_term(static_cast<long long>(len - 1 - j), BigInt(coeffs[j]));
        const Factorization fac{f, eps, c * (1 + lo), c};
        if (!verify_factorization(delta, fac)) return;
        std::vector<BigInt> key(coeffs.begin(), coeffs.end());
        if (!best || key < *best) {
          best = key;
          best_eps = eps;
        }
        return;
      }
      long long r = static_cast<long long>(std::sqrt(static_cast<double>(rem)));
      while ((r + 1) * (r + 1) <= rem) ++r;
      while (r * r > rem) --r;
      for (long long v = -r; v <= r; ++v) {
        coeffs[i] = v;
        self(self, i + 1, rem - v * v);
      }
      coeffs[i] = 0;
    };
    rec(rec, 0, total);
  }
  if (!best) return std::nullopt;
  LaurentPoly f;
  for (std::size_t j = 0; j < len; ++j) f.add_term(static_cast<long long>(len - 1 - j), (*best)[j]);
  return Factorization{f, best_eps, c * (1 + lo), c};
}

enum class AlgebraicClass { AlgebraicallySlice, AlgebraicallyRationallySliceOnly, NotAlgebraicallyRationallySlice };

inline const char* to_string(AlgebraicClass a) {
  switch (a) {
    case AlgebraicClass::AlgebraicallySlice: return "AlgebraicallySlice";
    case AlgebraicClass::AlgebraicallyRationallySliceOnly: return "AlgebraicallyRationallySliceOnly";
    case AlgebraicClass::NotAlgebraicallyRationallySlice: return "NotAlgebraicallyRationallySlice";
  }
  return "?";
}

/// n = k(k-1) for some integer k.
inline bool is_pronic(long long n) { return n >= 0 && is_perfect_square(BigInt(4) * n + 1); }

inline bool is_square(long long n) { return is_perfect_square(BigInt(n)); }

/// Algebraic (rational) sliceness of the twist knot K_n.
inline AlgebraicClass algebraic_classify(long long n) {
  if (is_pronic(n)) return AlgebraicClass::AlgebraicallySlice;
  if (is_square(n)) return AlgebraicClass::AlgebraicallyRationallySliceOnly;
  return AlgebraicClass::NotAlgebraicallyRationallySlice;
}

/// |Res(delta, 1 + t + ... + t^{p-1})| = prod_{j=1}^{p-1} |delta(zeta_p^j)|,
/// the order of H_1 of the p-fold branched cover (0 when infinite).
inline BigInt branched_homology_order(const LaurentPoly& delta, long long p) {
  if (p < 2) throw parameter_error("branched_homology_order: p must be at least 2");
  if (delta.is_zero()) return 0;
  const LaurentPoly f = delta.shift(-delta.low());
  const auto df = static_cast<std::size_t>(f.high());
  const auto dg = static_cast<std::size_t>(p - 1);
  if (df == 0) return boost::multiprecision::pow(boost::multiprecision::abs(f.leading()), static_cast<unsigned>(dg));
  // Sylvester matrix: dg rows of f's coefficients, df rows of the all-ones cyclotomic factor.
  const std::size_t n = df + dg;
  std::vector<BigInt> s(n * n);
  for (std::size_t r = 0; r < dg; ++r)
    for (std::size_t e = 0; e <= df; ++e) s[r * n + r + e] = f.coeff(static_cast<long long>(df - e));
  for (std::size_t r = 0; r < df; ++r)
    for (std::size_t e = 0; e <= dg; ++e) s[(dg + r) * n + r + e] = 1;
  const BigInt det = detail::bareiss(std::move(s), n, true, [](const BigInt&) { return false; }).det;
  return boost::multiprecision::abs(det);
}

}  // namespace concordance
