#pragma once

// Levine-Tristram signature integrals of torus knots.
//
// The fibre surface of T_{p,q} is a (p-1) x (q-1) grid of plumbed Hopf bands;
// its Seifert matrix is -(L_p (x) L_q), where L_r is the (r-1) x (r-1) matrix
// with -1 on the diagonal and +1 on the superdiagonal. With this sign the
// right-handed trefoil T_{3,2} gets [[-1, 1], [0, -1]] and signature -2.

#include <complex>
#include <numbers>

#include <Eigen/Dense>

#include "concordance/knotalg.hpp"

namespace concordance {

inline SeifertMatrix torus_seifert_matrix(long long p, long long q) {
  if (p < 1 || q < 1) throw parameter_error("torus_seifert_matrix: p, q must be positive");
  const auto a = static_cast<std::size_t>(p - 1), b = static_cast<std::size_t>(q - 1);
  SeifertMatrix v{a * b, std::vector<long long>(a * b * a * b, 0)};
  auto lam = [](std::size_t i, std::size_t j) -> long long { return i == j ? -1 : (j == i + 1 ? 1 : 0); };
  for (std::size_t i1 = 0; i1 < a; ++i1)
    for (std::size_t j1 = 0; j1 < a; ++j1)
      for (std::size_t i2 = 0; i2 < b; ++i2)
        for (std::size_t j2 = 0; j2 < b; ++j2)
          v.entries[(i1 * b + i2) * v.dim + (j1 * b + j2)] = -lam(i1, j1) * lam(i2, j2);
  return v;
}

/// Seifert matrix of the mirror image.
inline SeifertMatrix mirror(const SeifertMatrix& v) {
  SeifertMatrix out = v;
  for (auto& e : out.entries) e = -e;
  return out;
}

struct NumericSignature {
  int value = 0;
  double margin = 0;  // smallest |eigenvalue|
};

/// Signature of (1 - w) V + (1 - conj w) V^T at w = exp(2 pi i s), in floating point.
inline NumericSignature lt_signature_numeric(const SeifertMatrix& v, double s) {
  const auto d = static_cast<Eigen::Index>(v.dim);
  if (d == 0) return {0, std::numeric_limits<double>::infinity()};
  const std::complex<double> w = std::polar(1.0, 2.0 * std::numbers::pi * s);
  Eigen::MatrixXcd h(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      h(i, j) = (1.0 - w) * static_cast<double>(v(i, j)) + (1.0 - std::conj(w)) * static_cast<double>(v(j, i));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  NumericSignature out;
  out.margin = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < d; ++i) {
    const double ev = es.eigenvalues()(i);
    out.value += ev > 0 ? 1 : -1;
    out.margin = std::min(out.margin, std::abs(ev));
  }
  return out;
}

struct SignatureIntegral {
  Rational value;
  Rational error_bound;  // zero when every piece was resolved
  std::size_t pieces = 0;
  std::size_t unresolved_pieces = 0;
};

/// Integral over s in [0, 1] of the signature function of -T_{k,k-1}.
///
/// The signature is locally constant away from the roots of the Alexander
/// polynomial, which sit at angles a / (k(k-1)). The unit interval is cut at
/// those angles and at the grid j / resolution; on each piece the signature is
/// sampled at three interior points. A piece whose samples disagree or whose
/// Hermitian matrix is too close to singular adds its length times the spread
/// (at least 2) to the error bound instead of being trusted.
inline SignatureIntegral rho1_torus_integral(long long k, long long resolution = 16) {
  if (k < 2) throw parameter_error("rho1_torus_integral: k must be at least 2");
  if (resolution < 1) throw parameter_error("rho1_torus_integral: resolution must be positive");
  const SeifertMatrix v = mirror(torus_seifert_matrix(k, k - 1));
  const long long jumps = k * (k - 1);
  std::vector<Rational> cuts;
  for (long long a = 0; a <= jumps; ++a) cuts.emplace_back(a, jumps);
  for (long long j = 0; j <= resolution; ++j) cuts.emplace_back(j, resolution);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  SignatureIntegral out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Rational lo = cuts[i], hi = cuts[i + 1];
    const Rational len = hi - lo;
    int vmin = std::numeric_limits<int>::max(), vmax = std::numeric_limits<int>::min();
    bool ill = false;
    int mid_value = 0;
    for (int q : {1, 2, 3}) {
      const Rational at = lo + len * Rational(q, 4);
      const auto sig = lt_signature_numeric(v, static_cast<double>(at));
      if (sig.margin < 1e-9) ill = true;
      vmin = std::min(vmin, sig.value);
      vmax = std::max(vmax, sig.value);
      if (q == 2) mid_value = sig.value;
    }
    out.value += len * mid_value;
    ++out.pieces;
    if (ill || vmin != vmax) {
      ++out.unresolved_pieces;
      out.error_bound += len * std::max(2, vmax - vmin);
    }
  }
  return out;
}

}  // namespace concordance
