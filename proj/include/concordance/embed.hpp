#pragma once

// Codimension-0 lattice embeddings of negative definite forms into the
// standard lattice <-1>^d: integer d x d matrices A with A^T A = -G.
//
// The search places one column at a time. Columns are processed by ascending
// norm (ties by index). Each new column is generated coordinate by coordinate
// under Cauchy-Schwarz bounds on the inner products it still owes the columns
// already placed, and is restricted to a canonical representative under the
// subgroup of signed coordinate permutations fixing those columns: values are
// nonincreasing across coordinates whose history rows coincide, and
// nonnegative on coordinates no placed column touches.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "concordance/forms.hpp"

namespace concordance {

/// Column j is the image of the j-th source basis vector in e_1..e_dim.
struct EmbeddingWitness {
  std::size_t dim = 0;
  std::vector<std::vector<BigInt>> columns;

  const BigInt& entry(std::size_t row, std::size_t col) const { return columns[col][row]; }
  friend bool operator==(const EmbeddingWitness&, const EmbeddingWitness&) = default;
};

enum class SearchStatus { Found, NoneExists, Unknown };

inline const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "Found";
    case SearchStatus::NoneExists: return "NoneExists";
    case SearchStatus::Unknown: return "Unknown";
  }
  return "?";
}

struct SearchOutcome {
  SearchStatus status = SearchStatus::Unknown;
  std::optional<EmbeddingWitness> witness;
  std::uint64_t nodes_explored = 0;
  bool budget_exhausted = false;
  std::string reason;
};

inline constexpr std::uint64_t kDefaultNodeBudget = 100'000'000;

struct SearchOptions {
  std::optional<std::uint64_t> node_budget = kDefaultNodeBudget;  // nullopt = unlimited
  bool sequential = false;
  unsigned threads = 0;  // 0 = hardware concurrency
};

/// True iff A^T A == -G exactly.
inline bool verify_witness(const GramForm& g, const EmbeddingWitness& a) {
  const std::size_t d = g.dim();
  if (a.dim != d || a.columns.size() != d) throw parameter_error("verify_witness: dimension mismatch");
  for (const auto& c : a.columns)
    if (c.size() != d) throw parameter_error("verify_witness: dimension mismatch");
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      BigInt dot = 0;
      for (std::size_t k = 0; k < d; ++k) dot += a.columns[i][k] * a.columns[j][k];
      if (dot != -g(i, j)) return false;
    }
  }
  return true;
}

/// All integer vectors x in Z^dim with sum x_i^2 == norm, ascending lexicographic order.
inline std::vector<std::vector<long long>> enumerate_vectors(long long norm, std::size_t dim) {
  if (norm < 1 || dim < 1) throw parameter_error("enumerate_vectors: norm and dim must be positive");
  std::vector<std::vector<long long>> out;
  std::vector<long long> x(dim, 0);
  auto rec = [&](auto& self, std::size_t k, long long rem) -> void {
    if (k == dim) {
      if (rem == 0) out.push_back(x);
      return;
    }
    const auto r = static_cast<long long>(std::sqrt(static_cast<double>(rem)) + 0.5);
    for (long long v = -r; v <= r; ++v) {
      if (v * v > rem) continue;
      x[k] = v;
      self(self, k + 1, rem - v * v);
    }
    x[k] = 0;
  };
  rec(rec, 0, norm);
  return out;
}

namespace detail {

class EmbeddingSearch {
 public:
  EmbeddingSearch(const GramForm& g, std::optional<std::uint64_t> budget) : d_(g.dim()), budget_(budget) {
    target_.assign(d_ * d_, 0);
    for (std::size_t i = 0; i < d_; ++i)
      for (std::size_t j = 0; j < d_; ++j) {
        const BigInt t = -g(i, j);
        if (!fits_int64(t) || boost::multiprecision::abs(t) > BigInt(1) << 40)
          throw parameter_error("search_embedding: form entries too large for the search");
        target_[i * d_ + j] = static_cast<std::int64_t>(t);
      }
    order_.resize(d_);
    for (std::size_t i = 0; i < d_; ++i) order_[i] = i;
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return target_[a * d_ + a] < target_[b * d_ + b]; });
  }

  const std::vector<std::size_t>& order() const { return order_; }

  // State for one DFS worker.
  struct Frame {
    std::vector<int> x;              // placed column, by coordinate
    std::vector<int> cls;            // class id per coordinate after placement
    std::vector<std::int64_t> suf;   // suffix sums of x^2, size d+1
    int n_classes = 0;
    // Generation scratch for the column at this depth.
    std::vector<int> cand;
    std::vector<int> last;            // per-class last assigned value
    std::vector<std::int64_t> resid;  // inner products still owed to earlier columns
  };

  struct Worker {
    std::vector<Frame> frames;  // frames[j] = column placed at depth j
    std::vector<int> base_cls;  // classes before any placement (all one class)
    std::uint64_t local_nodes = 0;
  };

  Worker make_worker() const {
    Worker w;
    w.frames.resize(d_);
    for (auto& f : w.frames) {
      f.x.assign(d_, 0);
      f.cls.assign(d_, 0);
      f.suf.assign(d_ + 1, 0);
      f.cand.assign(d_, 0);
      f.last.assign(d_ + 2, 0);
      f.resid.assign(d_, 0);
    }
    w.base_cls.assign(d_, 0);
    return w;
  }

  // Runs the full DFS from depth 0.
  void run_sequential() {
    Worker w = make_worker();
    dfs(w, 0, std::numeric_limits<std::size_t>::max());
    flush(w);
  }

  // Collects every consistent prefix of length `depth`, counting their nodes.
  std::vector<std::vector<std::vector<int>>> collect_frontier(std::size_t depth) {
    Worker w = make_worker();
    frontier_.clear();
    frontier_depth_ = depth;
    dfs(w, 0, depth);
    flush(w);
    return std::move(frontier_);
  }

  void run_from_prefix(const std::vector<std::vector<int>>& prefix) {
    Worker w = make_worker();
    for (std::size_t j = 0; j < prefix.size(); ++j) {
      w.frames[j].x = prefix[j];
      commit(w, j);
    }
    dfs(w, prefix.size(), std::numeric_limits<std::size_t>::max());
    flush(w);
  }

  bool found() const { return found_.load(); }
  bool exhausted() const { return exhausted_.load(); }
  std::uint64_t nodes() const { return nodes_.load(); }
  std::optional<EmbeddingWitness> witness() const {
    std::lock_guard lk(mu_);
    return witness_;
  }

 private:
  static constexpr std::uint64_t kFlushEvery = 1024;

  bool stop() const { return found_.load(std::memory_order_relaxed) || exhausted_.load(std::memory_order_relaxed); }

  void flush(Worker& w) {
    if (w.local_nodes) {
      nodes_.fetch_add(w.local_nodes);
      w.local_nodes = 0;
    }
  }

  // Accounts one node; false if the budget is gone.
  bool count_node(Worker& w) {
    ++w.local_nodes;
    if (!budget_) return true;
    if (w.local_nodes >= kFlushEvery) flush(w);
    if (nodes_.load(std::memory_order_relaxed) + w.local_nodes > *budget_) {
      --w.local_nodes;
      flush(w);
      exhausted_.store(true);
      return false;
    }
    return true;
  }

  const std::vector<int>& classes_before(const Worker& w, std::size_t depth) const {
    return depth == 0 ? w.base_cls : w.frames[depth - 1].cls;
  }

  // Derives class refinement and suffix sums for the column at `depth`.
  void commit(Worker& w, std::size_t depth) const {
    Frame& f = w.frames[depth];
    const auto& prev = classes_before(w, depth);
    // Class 0 stays the untouched class: coordinates zero in every placed column.
    std::vector<std::pair<std::pair<int, int>, int>> ids;
    int next = 1;
    for (std::size_t k = 0; k < d_; ++k) {
      if (prev[k] == 0 && f.x[k] == 0) {
        f.cls[k] = 0;
        continue;
      }
      const std::pair<int, int> key{prev[k], f.x[k]};
      auto it = std::find_if(ids.begin(), ids.end(), [&](const auto& e) { return e.first == key; });
      if (it == ids.end()) {
        ids.push_back({key, next});
        f.cls[k] = next++;
      } else {
        f.cls[k] = it->second;
      }
    }
    f.n_classes = next;
    f.suf[d_] = 0;
    for (std::size_t k = d_; k-- > 0;) f.suf[k] = f.suf[k + 1] + static_cast<std::int64_t>(f.x[k]) * f.x[k];
  }

  void record_witness(const Worker& w) {
    std::lock_guard lk(mu_);
    if (witness_) return;
    EmbeddingWitness wit;
    wit.dim = d_;
    wit.columns.assign(d_, std::vector<BigInt>(d_));
    for (std::size_t j = 0; j < d_; ++j)
      for (std::size_t k = 0; k < d_; ++k) wit.columns[order_[j]][k] = w.frames[j].x[k];
    witness_ = std::move(wit);
    found_.store(true);
  }

  // Places columns depth.. onward. Returns when found, exhausted, or subtree done.
  void dfs(Worker& w, std::size_t depth, std::size_t stop_depth) {
    if (depth == d_) {
      record_witness(w);
      return;
    }
    if (depth == stop_depth) {
      std::vector<std::vector<int>> prefix;
      for (std::size_t j = 0; j < depth; ++j) prefix.push_back(w.frames[j].x);
      frontier_.push_back(std::move(prefix));
      return;
    }
    const std::size_t col = order_[depth];
    const std::int64_t norm = target_[col * d_ + col];
    Frame& f = w.frames[depth];
    for (std::size_t i = 0; i < depth; ++i) f.resid[i] = target_[order_[i] * d_ + col];
    std::fill(f.last.begin(), f.last.end(), std::numeric_limits<int>::max());
    std::fill(f.cand.begin(), f.cand.end(), 0);
    generate(w, depth, stop_depth, 0, norm, classes_before(w, depth));
  }

  void generate(Worker& w, std::size_t depth, std::size_t stop_depth, std::size_t k, std::int64_t rem,
                const std::vector<int>& cls) {
    if (stop()) return;
    Frame& f = w.frames[depth];
    // Every remaining inner product must be reachable: r_i^2 <= rem * sum_{k'>=k} a_i[k']^2.
    for (std::size_t i = 0; i < depth; ++i) {
      const std::int64_t r = f.resid[i];
      if (r == 0) continue;
      const std::int64_t s = w.frames[i].suf[k];
      if (s == 0 || r * r > rem * s) return;
    }
    if (k == d_) {
      if (rem != 0) return;
      if (!count_node(w)) return;
      f.x = f.cand;
      commit(w, depth);
      dfs(w, depth + 1, stop_depth);
      return;
    }
    const int c = cls[k];
    const int saved = f.last[c];
    int hi = static_cast<int>(std::sqrt(static_cast<double>(rem)));
    while (static_cast<std::int64_t>(hi + 1) * (hi + 1) <= rem) ++hi;
    while (static_cast<std::int64_t>(hi) * hi > rem) --hi;
    int top = std::min(hi, saved);
    int bottom = (c == 0) ? 0 : -hi;
    if (rem == 0) {
      top = std::min(top, 0);
      bottom = std::max(bottom, 0);
      if (top < bottom) return;
    }
    for (int v = top; v >= bottom; --v) {
      f.cand[k] = v;
      f.last[c] = v;
      if (v != 0)
        for (std::size_t i = 0; i < depth; ++i) f.resid[i] -= static_cast<std::int64_t>(w.frames[i].x[k]) * v;
      generate(w, depth, stop_depth, k + 1, rem - static_cast<std::int64_t>(v) * v, cls);
      if (v != 0)
        for (std::size_t i = 0; i < depth; ++i) f.resid[i] += static_cast<std::int64_t>(w.frames[i].x[k]) * v;
      if (stop()) break;
    }
    f.cand[k] = 0;
    f.last[c] = saved;
  }

  std::size_t d_;
  std::optional<std::uint64_t> budget_;
  std::vector<std::int64_t> target_;  // -G
  std::vector<std::size_t> order_;

  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<bool> found_{false};
  std::atomic<bool> exhausted_{false};
  mutable std::mutex mu_;
  std::optional<EmbeddingWitness> witness_;

  std::vector<std::vector<std::vector<int>>> frontier_;
  std::size_t frontier_depth_ = 0;
};

}  // namespace detail

/// Searches for A with A^T A = -g. NoneExists is only reported after an
/// exhaustive search (or when g is not negative definite).
inline SearchOutcome search_embedding(const GramForm& g, const SearchOptions& opts = {}) {
  if (opts.node_budget && *opts.node_budget == 0) throw parameter_error("search_embedding: budget must be positive");
  SearchOutcome out;
  if (!is_negative_definite(g)) {
    out.status = SearchStatus::NoneExists;
    out.reason = "form is not negative definite";
    return out;
  }
  detail::EmbeddingSearch search(g, opts.node_budget);
  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  if (opts.sequential || threads <= 1 || g.dim() < 4) {
    search.run_sequential();
  } else {
    // Split below the first few columns, then hand prefixes to workers.
    std::vector<std::vector<std::vector<int>>> frontier;
    std::size_t depth = 1;
    for (; depth + 1 < g.dim(); ++depth) {
      frontier = search.collect_frontier(depth);
      if (search.found() || search.exhausted() || frontier.size() >= 8 * threads) break;
    }
    if (!search.found() && !search.exhausted()) {
      std::atomic<std::size_t> next{0};
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
          for (std::size_t i = next++; i < frontier.size(); i = next++) {
            if (search.found() || search.exhausted()) return;
            search.run_from_prefix(frontier[i]);
          }
        });
      for (auto& th : pool) th.join();
    }
  }
  out.nodes_explored = search.nodes();
  if (search.found()) {
    out.status = SearchStatus::Found;
    out.witness = search.witness();
    if (!verify_witness(g, *out.witness)) throw std::logic_error("search_embedding produced an invalid witness");
  } else if (search.exhausted()) {
    out.status = SearchStatus::Unknown;
    out.budget_exhausted = true;
    out.reason = "node budget exhausted";
  } else {
    out.status = SearchStatus::NoneExists;
    out.reason = "search space exhausted";
  }
  return out;
}

// Witnesses for the slice (n = 1 - m) and rational (n = -m) families. Target
// coordinates are a_0..a_{p-1}, b_0..b_{p-1}, c_0..c_{(n-2)p-1}; source columns
// follow the intersection_form basis (v block, w block, then x blocks).
namespace detail {

struct BlockCoords {
  std::size_t p, n;
  std::size_t a(std::size_t i) const { return i % p; }
  std::size_t b(std::size_t i) const { return p + i % p; }
  std::size_t c(std::size_t k, std::size_t i) const { return 2 * p + k * p + i % p; }  // c_{kp+i}
};

inline void fill_chain_columns(EmbeddingWitness& w, const BlockCoords& bc) {
  const std::size_t p = bc.p, n = bc.n;
  if (n < 2) return;
  for (std::size_t i = 0; i < p; ++i) {
    auto& wi = w.columns[p + i];
    wi[bc.a(i)] += 1;
    wi[bc.b(i)] -= 1;
  }
  for (std::size_t k = 0; k + 2 < n; ++k) {
    for (std::size_t i = 0; i < p; ++i) {
      auto& x = w.columns[(k + 2) * p + i];
      if (k == 0)
        x[bc.b(i)] += 1;
      else
        x[bc.c(k - 1, i)] += 1;
      x[bc.c(k, i)] -= 1;
    }
  }
}

// a_j + b_j + c_j + c_{p+j} + ... for the coordinates present when n blocks exist.
inline void add_stack(std::vector<BigInt>& col, const BlockCoords& bc, std::size_t j, int sign, bool with_a) {
  if (with_a) col[bc.a(j)] += sign;
  if (bc.n >= 2) col[bc.b(j)] += sign;
  for (std::size_t k = 0; k + 2 < bc.n; ++k) col[bc.c(k, j)] += sign;
}

}  // namespace detail

/// Embedding of Q_p(m, 1-m) into <-1>^{np}.
inline EmbeddingWitness example_embedding_slice(long long m, long long p) {
  check_cover_params(m, p);
  const auto P = static_cast<std::size_t>(p);
  const auto n = static_cast<std::size_t>(1 - m);
  const detail::BlockCoords bc{P, n};
  EmbeddingWitness w;
  w.dim = n * P;
  w.columns.assign(w.dim, std::vector<BigInt>(w.dim));
  for (std::size_t i = 0; i < P; ++i) {
    auto& v = w.columns[i];
    detail::add_stack(v, bc, i, +1, false);
    detail::add_stack(v, bc, i + 1, -1, true);
  }
  detail::fill_chain_columns(w, bc);
  return w;
}

/// Embedding of Q_p(m, -m) into <-1>^{np}; p must be odd.
inline EmbeddingWitness example_embedding_rational(long long m, long long p) {
  check_cover_params(m, p);
  if (p % 2 == 0) throw parameter_error("example_embedding_rational: p must be odd");
  const auto P = static_cast<std::size_t>(p);
  const std::size_t q = (P - 1) / 2;
  const auto n = static_cast<std::size_t>(-m);
  const detail::BlockCoords bc{P, n};
  EmbeddingWitness w;
  w.dim = n * P;
  w.columns.assign(w.dim, std::vector<BigInt>(w.dim));
  for (std::size_t i = 0; i < P; ++i) {
    auto& v = w.columns[i];
    v[bc.a(i)] -= 1;
    detail::add_stack(v, bc, i + q, +1, true);
    detail::add_stack(v, bc, i + q + 1, -1, true);
  }
  detail::fill_chain_columns(w, bc);
  return w;
}

/// Block-diagonal witness for the direct sum of the given forms' witnesses.
inline EmbeddingWitness direct_sum(std::span<const EmbeddingWitness> parts) {
  if (parts.empty()) throw parameter_error("direct_sum: empty list");
  EmbeddingWitness out;
  for (const auto& p : parts) out.dim += p.dim;
  out.columns.assign(out.dim, std::vector<BigInt>(out.dim));
  std::size_t off = 0;
  for (const auto& p : parts) {
    for (std::size_t j = 0; j < p.dim; ++j)
      for (std::size_t k = 0; k < p.dim; ++k) out.columns[off + j][off + k] = p.columns[j][k];
    off += p.dim;
  }
  return out;
}

}  // namespace concordance
