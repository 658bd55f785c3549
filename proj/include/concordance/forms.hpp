#pragma once

// Intersection forms of the p-fold branched-cover fillings W_p(m,n) of double
// twist knots, plus the exact linear algebra used on them.
//
// Basis ordering for intersection_form(m, n, p): index = k * p + i, where
// k in [0, n) is the block (k = 0 is the circulant block) and i in [0, p) is
// the cyclic position inside the block.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "concordance/integer.hpp"

namespace concordance {

/// Symmetric integer matrix of dimension >= 1, stored row-major.
class GramForm {
 public:
  GramForm(std::size_t dim, std::vector<BigInt> entries) : dim_(dim), entries_(std::move(entries)) {
    if (dim_ == 0) throw parameter_error("GramForm: dimension must be at least 1");
    if (entries_.size() != dim_ * dim_) throw parameter_error("GramForm: entry count does not match dim*dim");
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i + 1; j < dim_; ++j)
        if (entries_[i * dim_ + j] != entries_[j * dim_ + i])
          throw parameter_error("GramForm: matrix is not symmetric");
  }

  GramForm(std::initializer_list<std::initializer_list<long long>> rows)
      : GramForm(rows.size(), flatten(rows)) {}

  static GramForm zero(std::size_t dim) { return GramForm(dim, std::vector<BigInt>(dim * dim)); }

  std::size_t dim() const { return dim_; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
  std::span<const BigInt> entries() const { return entries_; }

  friend bool operator==(const GramForm&, const GramForm&) = default;

 private:
  friend class GramFormBuilder;

  static std::vector<BigInt> flatten(std::initializer_list<std::initializer_list<long long>> rows) {
    std::vector<BigInt> out;
    const std::size_t d = rows.size();
    for (const auto& r : rows) {
      if (r.size() != d) throw parameter_error("GramForm: rows must be square");
      for (long long v : r) out.emplace_back(v);
    }
    return out;
  }

  std::size_t dim_;
  std::vector<BigInt> entries_;
};

// Mutable staging area; symmetric writes keep the invariant by construction.
class GramFormBuilder {
 public:
  explicit GramFormBuilder(std::size_t dim) : dim_(dim), entries_(dim * dim) {}
  void set(std::size_t i, std::size_t j, const BigInt& v) {
    entries_[i * dim_ + j] = v;
    entries_[j * dim_ + i] = v;
  }
  void add(std::size_t i, std::size_t j, const BigInt& v) {
    entries_[i * dim_ + j] += v;
    if (i != j) entries_[j * dim_ + i] += v;
  }
  GramForm build() && { return GramForm(dim_, std::move(entries_)); }

 private:
  std::size_t dim_;
  std::vector<BigInt> entries_;
};

inline void check_cover_params(long long m, long long p) {
  if (m >= 0) throw parameter_error("m must be negative (got " + std::to_string(m) + ")");
  if (p <= 2) throw parameter_error("p must be at least 3 (got " + std::to_string(p) + ")");
}

/// The p x p block Q_p(m,1): diagonal 2m-1, -m at cyclic neighbours.
inline GramForm circulant_block(long long m, long long p) {
  check_cover_params(m, p);
  const auto d = static_cast<std::size_t>(p);
  GramFormBuilder b(d);
  for (std::size_t i = 0; i < d; ++i) {
    b.set(i, i, BigInt(2 * m - 1));
    b.set(i, (i + 1) % d, BigInt(-m));
  }
  return std::move(b).build();
}

/// Q_p(m,n): n x n blocks, circulant block first, then a -2 chain coupled by identities.
inline GramForm intersection_form(long long m, long long n, long long p) {
  check_cover_params(m, p);
  if (n < 1) throw parameter_error("n must be positive (got " + std::to_string(n) + ")");
  const auto P = static_cast<std::size_t>(p);
  const auto N = static_cast<std::size_t>(n);
  GramFormBuilder b(N * P);
  for (std::size_t i = 0; i < P; ++i) {
    b.set(i, i, BigInt(2 * m - 1));
    b.set(i, (i + 1) % P, BigInt(-m));
  }
  for (std::size_t k = 1; k < N; ++k) {
    for (std::size_t i = 0; i < P; ++i) {
      b.set(k * P + i, k * P + i, BigInt(-2));
      b.set((k - 1) * P + i, k * P + i, BigInt(1));
    }
  }
  return std::move(b).build();
}

inline GramForm direct_sum(std::span<const GramForm> forms) {
  if (forms.empty()) throw parameter_error("direct_sum: empty list");
  std::size_t total = 0;
  for (const auto& f : forms) total += f.dim();
  GramFormBuilder b(total);
  std::size_t off = 0;
  for (const auto& f : forms) {
    for (std::size_t i = 0; i < f.dim(); ++i)
      for (std::size_t j = i; j < f.dim(); ++j)
        if (f(i, j) != 0) b.set(off + i, off + j, f(i, j));
    off += f.dim();
  }
  return std::move(b).build();
}

inline GramForm direct_sum_copies(const GramForm& g, std::size_t copies) {
  if (copies == 0) throw parameter_error("direct_sum: empty list");
  std::vector<GramForm> parts(copies, g);
  return direct_sum(parts);
}

/// ⟨-1⟩^dim.
inline GramForm standard_negative(std::size_t dim) {
  GramFormBuilder b(dim);
  for (std::size_t i = 0; i < dim; ++i) b.set(i, i, BigInt(-1));
  return std::move(b).build();
}

namespace detail {

// Bareiss elimination on a row-major copy. With pivoting disabled the k-th
// pivot is the (k+1)-th leading principal minor.
struct BareissResult {
  BigInt det;
  std::vector<BigInt> leading_minors;  // filled only without pivoting, may stop early
  bool stopped_early = false;
};

template <class StopPredicate>
BareissResult bareiss(std::vector<BigInt> a, std::size_t n, bool pivot, StopPredicate stop) {
  BareissResult res;
  int swaps = 0;
  BigInt prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k * n + k] == 0) {
      if (!pivot) {
        res.leading_minors.push_back(0);
        res.det = 0;
        res.stopped_early = k + 1 < n;
        return res;
      }
      std::size_t r = k + 1;
      while (r < n && a[r * n + k] == 0) ++r;
      if (r == n) {
        res.det = 0;
        return res;
      }
      for (std::size_t c = 0; c < n; ++c) std::swap(a[k * n + c], a[r * n + c]);
      ++swaps;
    }
    const BigInt piv = a[k * n + k];
    if (!pivot) {
      res.leading_minors.push_back(piv);
      if (stop(piv) && k + 1 < n) {
        res.stopped_early = true;
        res.det = 0;
        return res;
      }
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i * n + j] = (a[i * n + j] * piv - a[i * n + k] * a[k * n + j]) / prev;
      }
      a[i * n + k] = 0;
    }
    prev = piv;
  }
  res.det = (swaps % 2 == 0) ? prev : BigInt(-prev);
  return res;
}

}  // namespace detail

/// Exact determinant by fraction-free elimination.
inline BigInt determinant(const GramForm& g) {
  std::vector<BigInt> a(g.entries().begin(), g.entries().end());
  return detail::bareiss(std::move(a), g.dim(), true, [](const BigInt&) { return false; }).det;
}

/// Leading principal minors of g, exact.
inline std::vector<BigInt> leading_minors(const GramForm& g) {
  std::vector<BigInt> a(g.entries().begin(), g.entries().end());
  auto r = detail::bareiss(std::move(a), g.dim(), false, [](const BigInt&) { return false; });
  r.leading_minors.resize(g.dim(), BigInt(0));
  return r.leading_minors;
}

/// True iff -g is positive definite (all leading minors of -g positive).
inline bool is_negative_definite(const GramForm& g) {
  std::vector<BigInt> a;
  a.reserve(g.dim() * g.dim());
  for (const auto& v : g.entries()) a.push_back(-v);
  auto r = detail::bareiss(std::move(a), g.dim(), false, [](const BigInt& piv) { return piv <= 0; });
  if (r.leading_minors.size() != g.dim()) return false;
  for (const auto& m : r.leading_minors)
    if (m <= 0) return false;
  return true;
}

/// Conjugates g by a permutation: result(i,j) = g(perm[i], perm[j]).
inline GramForm permuted(const GramForm& g, std::span<const std::size_t> perm) {
  const std::size_t d = g.dim();
  if (perm.size() != d) throw parameter_error("permuted: permutation size mismatch");
  std::vector<BigInt> e(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) e[i * d + j] = g(perm[i], perm[j]);
  return GramForm(d, std::move(e));
}

}  // namespace concordance
