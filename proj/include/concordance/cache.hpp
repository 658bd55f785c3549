#pragma once

// Persistent store of embedding-search outcomes, one JSON object per line.
// Entries are keyed by the canonical serialization of the searched form;
// lookups compare the full serialization, the hash only narrows the scan.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include "concordance/json_io.hpp"

namespace concordance {

#ifdef CONCORDANCE_VERSION
inline constexpr const char* kToolVersion = CONCORDANCE_VERSION;
#else
inline constexpr const char* kToolVersion = "0.1.0";
#endif

inline std::string canonical_serialization(const GramForm& g) { return to_json(g).dump(); }

/// FNV-1a 64-bit of the canonical serialization, as 16 hex digits.
inline std::string form_hash(const GramForm& g) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : canonical_serialization(g)) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct CacheEntry {
  std::string form_hash;
  std::string form;  // canonical serialization
  SearchOutcome outcome;
  std::uint64_t budget_used = 0;  // 0 = unlimited
  std::string tool_version = kToolVersion;
};

inline json to_json(const CacheEntry& e) {
  return json{{"schema", kSchemaVersion},
              {"form_hash", e.form_hash},
              {"form", json::parse(e.form)},
              {"outcome", to_json(e.outcome)},
              {"budget_used", std::to_string(e.budget_used)},
              {"tool_version", e.tool_version}};
}

inline CacheEntry cache_entry_from_json(const json& j) {
  CacheEntry e;
  e.form_hash = j.at("form_hash").get<std::string>();
  e.form = j.at("form").dump();
  e.outcome = search_outcome_from_json(j.at("outcome"));
  e.budget_used = static_cast<std::uint64_t>(detail::read_int(j.at("budget_used")));
  e.tool_version = j.value("tool_version", "");
  return e;
}

/// Default location: $CONCORDANCE_CACHE, else $XDG_CONFIG_HOME/concordance/cache.jsonl,
/// else ~/.config/concordance/cache.jsonl.
inline std::filesystem::path default_cache_path() {
  if (const char* env = std::getenv("CONCORDANCE_CACHE"); env && *env) return env;
  std::filesystem::path base;
  if (const char* xdg = std::getenv("XDG_CONFIG_HOME"); xdg && *xdg) base = xdg;
  else if (const char* home = std::getenv("HOME"); home && *home) base = std::filesystem::path(home) / ".config";
  else base = std::filesystem::temp_directory_path();
  return base / "concordance" / "cache.jsonl";
}

class SearchCache {
 public:
  explicit SearchCache(std::filesystem::path path) : path_(std::move(path)) {}

  const std::filesystem::path& path() const { return path_; }

  /// A stored outcome that answers a search of `g` under `budget` (nullopt = unlimited).
  /// Found and NoneExists answer any budget; Unknown only answers budgets no larger
  /// than the one that produced it.
  std::optional<SearchOutcome> lookup(const GramForm& g, std::optional<std::uint64_t> budget) const {
    const std::string key = form_hash(g);
    const std::string form = canonical_serialization(g);
    std::optional<SearchOutcome> best;
    for (const auto& e : load()) {
      if (e.form_hash != key || e.form != form) continue;
      if (e.outcome.status != SearchStatus::Unknown) return e.outcome;
      const bool covers = e.budget_used != 0 && budget && *budget <= e.budget_used;
      if (covers) best = e.outcome;
    }
    return best;
  }

  void store(const GramForm& g, const SearchOutcome& outcome, std::optional<std::uint64_t> budget) const {
    CacheEntry e;
    e.form_hash = form_hash(g);
    e.form = canonical_serialization(g);
    e.outcome = outcome;
    e.budget_used = budget.value_or(0);
    const std::string line = to_json(e).dump() + "\n";
    if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
    const int fd = ::open(path_.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
    if (fd < 0) throw std::runtime_error("cannot open cache file " + path_.string());
    ::flock(fd, LOCK_EX);
    std::size_t off = 0;
    while (off < line.size()) {
      const ssize_t w = ::write(fd, line.data() + off, line.size() - off);
      if (w <= 0) break;
      off += static_cast<std::size_t>(w);
    }
    ::flock(fd, LOCK_UN);
    ::close(fd);
    if (off != line.size()) throw std::runtime_error("short write to cache file " + path_.string());
  }

  /// All parseable entries; malformed lines are skipped.
  std::vector<CacheEntry> load() const {
    std::vector<CacheEntry> out;
    const int fd = ::open(path_.c_str(), O_RDONLY);
    if (fd < 0) return out;
    ::flock(fd, LOCK_SH);
    std::ifstream in(path_);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      try {
        out.push_back(cache_entry_from_json(json::parse(line)));
      } catch (const std::exception&) {
      }
    }
    ::flock(fd, LOCK_UN);
    ::close(fd);
    return out;
  }

 private:
  std::filesystem::path path_;
};

}  // namespace concordance
