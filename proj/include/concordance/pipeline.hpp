#pragma once

// Classification of double twist knots up to rational concordance, together
// with the computational evidence behind it. The classification is a closed
// form in (m, n); evidence is only ever compared against it.

#include <algorithm>
#include <atomic>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "concordance/embed.hpp"
#include "concordance/forms.hpp"
#include "concordance/knotalg.hpp"

namespace concordance {

enum class Classification { Unknot, Slice, RationallySliceNotSlice, InfiniteOrder };

inline const char* to_string(Classification c) {
  switch (c) {
    case Classification::Unknot: return "Unknot";
    case Classification::Slice: return "Slice";
    case Classification::RationallySliceNotSlice: return "RationallySliceNotSlice";
    case Classification::InfiniteOrder: return "InfiniteOrder";
  }
  return "?";
}

inline Classification classify(long long m, long long n) {
  if (m == 0 || n == 0) return Classification::Unknot;
  const long long s = m + n;
  if (s == 1 || s == -1) return Classification::Slice;
  if (s == 0) return Classification::RationallySliceNotSlice;
  return Classification::InfiniteOrder;
}

struct Normalized {
  long long m = 0, n = 0;
  bool mirrored = false;
  bool swapped = false;
  friend bool operator==(const Normalized&, const Normalized&) = default;
};

/// Uses K_{m,n} = K_{n,m} and mirroring to reach m' < 0 < n' with n' >= -m'.
/// The flags describe the net operation: (m', n') = mirror?(swap?(m, n)).
inline Normalized normalize(long long m, long long n) {
  if (m == 0 || n == 0 || (m > 0) == (n > 0)) throw parameter_error("normalize: requires mn < 0");
  const long long neg = std::min(m, n), pos = std::max(m, n);
  Normalized r;
  if (pos >= -neg) {
    r = {neg, pos, false, m > 0};
  } else {
    // mirror gives (-m, -n); its negative entry is -pos and positive entry -neg.
    r = {-pos, -neg, true, m < 0};
  }
  return r;
}

inline bool is_odd_prime_power(long long p) {
  if (p < 3 || p % 2 == 0) return false;
  long long q = p;
  long long f = 3;
  while (f * f <= q && q % f != 0) f += 2;
  if (f * f > q) return true;  // q is prime
  while (q % f == 0) q /= f;
  return q == 1;
}

struct LtSample {
  long long num = 0, den = 1;  // s = num / den
  int value = 0;
};

struct AlgebraicEvidence {
  LaurentPoly alexander;
  std::optional<AlgebraicClass> twist_class;  // only when the knot is a twist knot
  std::optional<Factorization> fox_milnor_c1;
  std::optional<Factorization> fox_milnor_c2;
};

struct ObstructionReport {
  long long m = 0, n = 0, p = 0, copies = 1;
  std::optional<Normalized> normalized;
  Classification classification = Classification::Unknot;

  std::optional<std::size_t> form_dim;
  std::optional<bool> negative_definite;
  std::optional<BigInt> determinant;
  std::optional<BigInt> homology_order;
  std::optional<bool> det_matches_homology;

  std::optional<SearchOutcome> embedding;
  std::string embedding_route;  // "example_slice", "example_rational", "search", or empty
  std::optional<SearchStatus> expected_embedding;
  std::optional<SearchOutcome> search_confirmation;

  AlgebraicEvidence algebraic;
  int signature = 0;
  std::vector<LtSample> lt_samples;

  std::vector<std::string> warnings;
  bool consistent_with_theorem_A = true;
};

struct ObstructOptions {
  SearchOptions search;
  bool confirm_with_search = false;  // also run the search when an explicit witness exists
};

namespace detail {

inline AlgebraicEvidence algebraic_evidence(long long m, long long n) {
  AlgebraicEvidence a;
  a.alexander = alexander({m, n});
  // K_{m,n} = K_{n,m}, and K_{1,n} is the mirror of the twist knot K_{-n}.
  if (m == -1) a.twist_class = algebraic_classify(n);
  else if (n == -1) a.twist_class = algebraic_classify(m);
  else if (m == 1) a.twist_class = algebraic_classify(-n);
  else if (n == 1) a.twist_class = algebraic_classify(-m);
  if (a.alexander.span() == 2 || a.alexander.is_monomial()) {
    a.fox_milnor_c1 = fox_milnor(a.alexander, 1);
    a.fox_milnor_c2 = fox_milnor(a.alexander, 2);
  }
  return a;
}

inline void fill_signatures(ObstructionReport& r) {
  const DoubleTwist k{r.m, r.n};
  r.signature = signature(k);
  r.lt_samples.clear();
  const long long den = std::max<long long>(r.p, 2);
  for (long long j = 1; j < den; ++j) r.lt_samples.push_back({j, den, lt_signature(k, j, den)});
}

}  // namespace detail

/// "example_slice" / "example_rational" when an explicit witness exists for Q_p(m', n').
inline std::optional<std::string> explicit_route(const Normalized& nm, long long p) {
  if (nm.n == 1 - nm.m) return "example_slice";
  if (nm.n == -nm.m && p % 2 == 1) return "example_rational";
  return std::nullopt;
}

/// Found for n' <= 1 - m' (slice and rational cases), NoneExists beyond. Only
/// odd prime powers p carry the obstruction; for other p the only expectation
/// is the one backed by an explicit witness. Q_4(-1, 1), for one, has
/// determinant 45 and cannot embed.
inline std::optional<SearchStatus> expected_embedding(const Normalized& nm, long long p) {
  if (explicit_route(nm, p)) return SearchStatus::Found;
  if (!is_odd_prime_power(p)) return std::nullopt;
  return nm.n <= 1 - nm.m ? SearchStatus::Found : SearchStatus::NoneExists;
}

/// Block-diagonal explicit witness for N copies of Q_p(m', n').
inline EmbeddingWitness explicit_embedding(const Normalized& nm, long long p, long long copies) {
  const auto route = explicit_route(nm, p);
  if (!route) throw parameter_error("explicit_embedding: no explicit witness for these parameters");
  const EmbeddingWitness one =
      *route == "example_slice" ? example_embedding_slice(nm.m, p) : example_embedding_rational(nm.m, p);
  std::vector<EmbeddingWitness> parts(static_cast<std::size_t>(copies), one);
  return direct_sum(std::span<const EmbeddingWitness>(parts));
}

/// Full evidence for a mixed-sign knot K_{m,n}, using N copies of the p-fold filling.
inline ObstructionReport obstruct(long long m, long long n, long long p, long long copies,
                                  const ObstructOptions& opts = {}) {
  if (p < 3) throw parameter_error("obstruct: p must be at least 3");
  if (copies < 1) throw parameter_error("obstruct: N must be at least 1");
  ObstructionReport r;
  r.m = m;
  r.n = n;
  r.p = p;
  r.copies = copies;
  r.classification = classify(m, n);
  const Normalized nm = normalize(m, n);
  r.normalized = nm;
  if (!is_odd_prime_power(p))
    r.warnings.push_back("p = " + std::to_string(p) +
                         " is not an odd prime power; embedding results are search results only");

  const GramForm g = direct_sum_copies(intersection_form(nm.m, nm.n, p), static_cast<std::size_t>(copies));
  r.form_dim = g.dim();
  r.negative_definite = is_negative_definite(g);
  r.determinant = determinant(g);
  r.homology_order = boost::multiprecision::pow(branched_homology_order(alexander({m, n}), p),
                                                static_cast<unsigned>(copies));
  r.det_matches_homology = boost::multiprecision::abs(*r.determinant) == *r.homology_order;
  if (!*r.negative_definite) r.warnings.push_back("filling form is not negative definite");
  if (!*r.det_matches_homology) r.warnings.push_back("|det| differs from branched-cover homology order");

  r.expected_embedding = expected_embedding(nm, p);

  if (auto route = explicit_route(nm, p)) {
    SearchOutcome o;
    o.witness = explicit_embedding(nm, p, copies);
    if (verify_witness(g, *o.witness)) {
      o.status = SearchStatus::Found;
      o.reason = "explicit witness verified";
    } else {
      o.status = SearchStatus::Unknown;
      o.witness.reset();
      o.reason = "explicit witness failed verification";
      r.warnings.push_back("explicit witness failed verification");
    }
    r.embedding = std::move(o);
    r.embedding_route = *route;
    if (opts.confirm_with_search) r.search_confirmation = search_embedding(g, opts.search);
  } else {
    r.embedding = search_embedding(g, opts.search);
    r.embedding_route = "search";
  }

  auto agrees = [&](const SearchOutcome& o) {
    return o.status == SearchStatus::Unknown || !r.expected_embedding || o.status == *r.expected_embedding;
  };
  r.consistent_with_theorem_A = agrees(*r.embedding) && (!r.search_confirmation || agrees(*r.search_confirmation));
  if (!r.consistent_with_theorem_A) r.warnings.push_back("embedding evidence contradicts the classification");

  r.algebraic = detail::algebraic_evidence(m, n);
  detail::fill_signatures(r);
  return r;
}

/// Signature-only evidence for mn >= 0.
inline ObstructionReport signature_report(long long m, long long n, long long p) {
  if ((m < 0 && n > 0) || (m > 0 && n < 0)) throw parameter_error("signature_report: requires mn >= 0");
  ObstructionReport r;
  r.m = m;
  r.n = n;
  r.p = p;
  r.classification = classify(m, n);
  r.algebraic = detail::algebraic_evidence(m, n);
  detail::fill_signatures(r);
  if (r.classification == Classification::Unknot)
    r.consistent_with_theorem_A = r.signature == 0 && r.algebraic.alexander == LaurentPoly(BigInt(1));
  else
    r.consistent_with_theorem_A = r.signature != 0;
  if (!r.consistent_with_theorem_A) r.warnings.push_back("signature evidence contradicts the classification");
  return r;
}

inline ObstructionReport report(long long m, long long n, long long p, long long copies,
                                const ObstructOptions& opts = {}) {
  if (m != 0 && n != 0 && (m > 0) != (n > 0)) return obstruct(m, n, p, copies, opts);
  return signature_report(m, n, p);
}

struct Range {
  long long lo = 0, hi = -1;  // inclusive; empty when hi < lo
};

/// One report per (m, n, p), ordered by m, then n, then p.
inline std::vector<ObstructionReport> survey(Range ms, Range ns, std::vector<long long> ps,
                                             const ObstructOptions& opts = {}, unsigned threads = 0) {
  std::sort(ps.begin(), ps.end());
  struct Task {
    long long m, n, p;
  };
  std::vector<Task> tasks;
  for (long long m = ms.lo; m <= ms.hi; ++m)
    for (long long n = ns.lo; n <= ns.hi; ++n)
      for (long long p : ps) tasks.push_back({m, n, p});
  std::vector<ObstructionReport> out(tasks.size());
  ObstructOptions inner = opts;
  inner.search.sequential = true;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(tasks.size(), 1)));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(tasks.size());
  auto work = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        out[i] = report(tasks[i].m, tasks[i].n, tasks[i].p, 1, inner);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace concordance
