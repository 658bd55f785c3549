#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "concordance/embed.hpp"
#include "oracles.hpp"

using namespace concordance;

namespace {

GramForm from_mat(const oracle::Mat& m) {
  std::vector<BigInt> e;
  for (const auto& row : m)
    for (long long v : row) e.emplace_back(v);
  return GramForm(m.size(), std::move(e));
}

SearchOptions sequential(std::optional<std::uint64_t> budget = kDefaultNodeBudget) {
  SearchOptions o;
  o.node_budget = budget;
  o.sequential = true;
  return o;
}

std::set<std::size_t> support(const std::vector<BigInt>& col) {
  std::set<std::size_t> s;
  for (std::size_t k = 0; k < col.size(); ++k)
    if (col[k] != 0) s.insert(k);
  return s;
}

std::size_t overlap(const std::set<std::size_t>& a, const std::set<std::size_t>& b) {
  std::size_t n = 0;
  for (auto x : a) n += b.count(x);
  return n;
}

// Structure forced on any embedding of Q_p(m, n), n >= 2: the w-block images
// (basis block 1) have pairwise disjoint supports, and each x-column of block 2
// shares exactly one coordinate with the matching w-column.
void expect_block_claims(const EmbeddingWitness& a, std::size_t p, std::size_t n) {
  if (n < 2) return;
  std::vector<std::set<std::size_t>> w(p);
  for (std::size_t i = 0; i < p; ++i) w[i] = support(a.columns[p + i]);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j) EXPECT_EQ(overlap(w[i], w[j]), 0u) << "w" << i << " w" << j;
  if (n < 3) return;
  for (std::size_t i = 0; i < p; ++i) EXPECT_EQ(overlap(support(a.columns[2 * p + i]), w[i]), 1u) << "x" << i;
}

}  // namespace

TEST(EnumerateVectors, Examples) {
  EXPECT_EQ(enumerate_vectors(1, 3).size(), 6u);
  EXPECT_TRUE(enumerate_vectors(3, 2).empty());
  const auto v = enumerate_vectors(2, 2);
  ASSERT_EQ(v.size(), 4u);
  for (const auto& x : v) EXPECT_EQ(std::abs(x[0]) + std::abs(x[1]), 2);
}

TEST(EnumerateVectors, MatchesBoxScanInLexOrder) {
  for (long long norm = 1; norm <= 9; ++norm)
    for (std::size_t dim = 1; dim <= 5; ++dim) {
      auto want = oracle::vectors_of_norm(norm, dim);
      std::sort(want.begin(), want.end());
      EXPECT_EQ(enumerate_vectors(norm, dim), want) << norm << " " << dim;
    }
}

TEST(VerifyWitness, Examples) {
  EXPECT_TRUE(verify_witness(GramForm({{-1}}), EmbeddingWitness{1, {{BigInt(1)}}}));
  // A = [[1,0],[-1,1]] has columns (1,-1) and (0,1).
  const EmbeddingWitness a{2, {{BigInt(1), BigInt(-1)}, {BigInt(0), BigInt(1)}}};
  EXPECT_FALSE(verify_witness(GramForm({{-2, 1}, {1, -2}}), a));
  EXPECT_TRUE(verify_witness(GramForm({{-2, 1}, {1, -1}}), a));
  EXPECT_THROW(verify_witness(GramForm({{-1}}), a), parameter_error);
  EXPECT_TRUE(verify_witness(intersection_form(-1, 2, 3), example_embedding_slice(-1, 3)));
}

TEST(Search, Examples) {
  const auto one = search_embedding(GramForm({{-1}}), sequential());
  ASSERT_EQ(one.status, SearchStatus::Found);
  ASSERT_TRUE(one.witness);
  EXPECT_EQ(boost::multiprecision::abs(one.witness->columns[0][0]), 1);

  const auto slice = search_embedding(intersection_form(-1, 2, 3), sequential());
  EXPECT_EQ(slice.status, SearchStatus::Found);
  EXPECT_TRUE(verify_witness(intersection_form(-1, 2, 3), *slice.witness));

  const auto none = search_embedding(intersection_form(-1, 3, 3), sequential());
  EXPECT_EQ(none.status, SearchStatus::NoneExists);
  EXPECT_FALSE(none.budget_exhausted);
  EXPECT_FALSE(none.witness);
}

TEST(Search, NonDefiniteAndBudgetErrors) {
  const auto o = search_embedding(GramForm({{-2, 2}, {2, -2}}));
  EXPECT_EQ(o.status, SearchStatus::NoneExists);
  EXPECT_FALSE(o.reason.empty());
  EXPECT_THROW(search_embedding(GramForm({{-1}}), sequential(0)), parameter_error);
}

TEST(Search, BudgetGivesUnknown) {
  const GramForm g = direct_sum_copies(intersection_form(-2, 2, 5), 2);
  for (std::uint64_t b : {1ull, 10ull, 1000ull}) {
    const auto o = search_embedding(g, sequential(b));
    EXPECT_EQ(o.status, SearchStatus::Unknown) << b;
    EXPECT_TRUE(o.budget_exhausted);
    EXPECT_LE(o.nodes_explored, b);
    EXPECT_FALSE(o.witness);
  }
}

TEST(Search, UnlimitedBudget) {
  const auto o = search_embedding(intersection_form(-1, 4, 3), sequential(std::nullopt));
  EXPECT_EQ(o.status, SearchStatus::NoneExists);
}

TEST(Search, SequentialWitnessIsDeterministic) {
  const GramForm g = intersection_form(-2, 3, 5);
  const auto a = search_embedding(g, sequential());
  const auto b = search_embedding(g, sequential());
  ASSERT_EQ(a.status, SearchStatus::Found);
  EXPECT_EQ(*a.witness, *b.witness);
  EXPECT_EQ(a.nodes_explored, b.nodes_explored);
}

TEST(Search, ParallelStatusMatchesSequential) {
  for (auto [m, n, p] : std::vector<std::array<long long, 3>>{{-1, 2, 3}, {-1, 3, 3}, {-2, 3, 5}, {-2, 4, 3}, {-1, 3, 5}}) {
    const GramForm g = intersection_form(m, n, p);
    SearchOptions par;
    par.threads = 4;
    const auto s = search_embedding(g, sequential());
    const auto q = search_embedding(g, par);
    EXPECT_EQ(s.status, q.status) << m << " " << n << " " << p;
    if (q.witness) EXPECT_TRUE(verify_witness(g, *q.witness));
  }
}

TEST(Search, AgreesWithNaiveExhaustiveSearch) {
  const auto corpus = oracle::random_corpus(240, 20240611);
  std::size_t found = 0, none = 0;
  for (std::size_t t = 0; t < corpus.size(); ++t) {
    const GramForm g = from_mat(corpus[t]);
    const bool want = oracle::naive_embeds(corpus[t]);
    const auto got = search_embedding(g, sequential(std::nullopt));
    ASSERT_NE(got.status, SearchStatus::Unknown);
    EXPECT_EQ(got.status == SearchStatus::Found, want) << "form " << t;
    if (got.witness) EXPECT_TRUE(verify_witness(g, *got.witness));
    (want ? found : none) += 1;
  }
  // The corpus must exercise both answers.
  EXPECT_GT(found, 50u);
  EXPECT_GT(none, 20u);
}

TEST(Search, StatusInvariantUnderSignedPermutation) {
  std::mt19937 rng(99);
  auto corpus = oracle::random_corpus(40, 7);
  corpus.push_back(oracle::intersection_form(-1, 2, 3));
  corpus.push_back(oracle::intersection_form(-1, 3, 3));
  corpus.push_back(oracle::intersection_form(-2, 2, 3));
  for (const auto& m : corpus) {
    const auto base = search_embedding(from_mat(m), sequential(std::nullopt)).status;
    for (int rep = 0; rep < 3; ++rep) {
      std::vector<std::size_t> pi(m.size());
      std::iota(pi.begin(), pi.end(), 0);
      std::shuffle(pi.begin(), pi.end(), rng);
      std::vector<int> s(m.size());
      for (auto& x : s) x = rng() % 2 ? 1 : -1;
      const GramForm h = from_mat(oracle::signed_permute(m, pi, s));
      EXPECT_EQ(search_embedding(h, sequential(std::nullopt)).status, base);
    }
  }
}

TEST(ExampleEmbeddings, VerifyOnGrid) {
  for (long long m : {-1, -2, -3, -4})
    for (long long p : {3, 4, 5, 6, 7}) {
      EXPECT_TRUE(verify_witness(intersection_form(m, 1 - m, p), example_embedding_slice(m, p))) << m << " " << p;
      if (p % 2) EXPECT_TRUE(verify_witness(intersection_form(m, -m, p), example_embedding_rational(m, p))) << m << " " << p;
    }
  EXPECT_THROW(example_embedding_rational(-2, 4), parameter_error);
  EXPECT_THROW(example_embedding_slice(0, 3), parameter_error);
  EXPECT_THROW(example_embedding_slice(-1, 2), parameter_error);
}

TEST(ExampleEmbeddings, SliceColumnsForTrefoilCover) {
  // m = -1, p = 3: v_i = b_i - a_{i+1} - b_{i+1} with a = e0..e2, b = e3..e5.
  const auto w = example_embedding_slice(-1, 3);
  for (std::size_t i = 0; i < 3; ++i) {
    std::vector<BigInt> want(6);
    want[3 + i] += 1;
    want[(i + 1) % 3] -= 1;
    want[3 + (i + 1) % 3] -= 1;
    EXPECT_EQ(w.columns[i], want) << i;
  }
}

TEST(ExampleEmbeddings, VBlockNorms) {
  for (long long m : {-1, -2, -3})
    for (long long p : {3, 5, 7}) {
      const auto w = example_embedding_slice(m, p);
      for (long long i = 0; i < p; ++i) {
        BigInt s = 0;
        for (const auto& x : w.columns[static_cast<std::size_t>(i)]) s += x * x;
        EXPECT_EQ(-s, 2 * m - 1);
      }
    }
}

TEST(ExampleEmbeddings, BlockClaims) {
  for (long long m : {-1, -2, -3})
    for (long long p : {3, 5, 7}) {
      expect_block_claims(example_embedding_slice(m, p), static_cast<std::size_t>(p), static_cast<std::size_t>(1 - m));
      expect_block_claims(example_embedding_rational(m, p), static_cast<std::size_t>(p), static_cast<std::size_t>(-m));
    }
}

TEST(Search, FoundWitnessesSatisfyBlockClaims) {
  for (auto [m, n, p] : std::vector<std::array<long long, 3>>{{-1, 2, 3}, {-2, 2, 3}, {-2, 3, 3}, {-2, 3, 5}, {-3, 3, 3}, {-3, 4, 3}}) {
    const GramForm g = intersection_form(m, n, p);
    const auto o = search_embedding(g, sequential());
    ASSERT_EQ(o.status, SearchStatus::Found) << m << " " << n << " " << p;
    ASSERT_TRUE(verify_witness(g, *o.witness));
    expect_block_claims(*o.witness, static_cast<std::size_t>(p), static_cast<std::size_t>(n));
  }
}

TEST(DirectSumWitness, VerifiesAgainstDirectSumForm) {
  const auto w = example_embedding_slice(-2, 3);
  const std::vector<EmbeddingWitness> parts{w, w, w};
  EXPECT_TRUE(verify_witness(direct_sum_copies(intersection_form(-2, 3, 3), 3), direct_sum(std::span<const EmbeddingWitness>(parts))));
}
