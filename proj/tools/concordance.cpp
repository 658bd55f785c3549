// concordance: command-line front end.
//
// Exit codes: 0 success / Found, 1 NoneExists, 2 usage or parameter error, 3 Unknown.

#include <charconv>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "concordance/concordance.hpp"

namespace cc = concordance;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNone = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUnknown = 3;

// Short options take "-m=-2" literally as "=-2".
std::string strip_eq(const std::string& s) { return !s.empty() && s[0] == '=' ? s.substr(1) : s; }

long long parse_ll(const std::string& raw) {
  const std::string s = strip_eq(raw);
  long long v = 0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  if (b != e && *b == '+') ++b;
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e || b == e) throw cc::parameter_error("not a decimal integer: '" + s + "'");
  return v;
}

// "a..b" or a single integer "a".
cc::Range parse_range(const std::string& raw) {
  const std::string s = strip_eq(raw);
  const auto dots = s.find("..", 1);
  if (dots == std::string::npos) {
    const long long v = parse_ll(s);
    return {v, v};
  }
  cc::Range r{parse_ll(s.substr(0, dots)), parse_ll(s.substr(dots + 2))};
  if (r.hi < r.lo) throw cc::parameter_error("empty range '" + s + "'");
  return r;
}

std::vector<long long> parse_list(const std::string& s) {
  std::vector<long long> out;
  std::stringstream in(strip_eq(s));
  std::string item;
  while (std::getline(in, item, ',')) {
    const cc::Range r = parse_range(item);
    for (long long v = r.lo; v <= r.hi; ++v) out.push_back(v);
  }
  if (out.empty()) throw cc::parameter_error("empty list '" + s + "'");
  return out;
}

void warn_prime_power(long long p) {
  if (!cc::is_odd_prime_power(p))
    std::cerr << "warning: p = " << p << " is not an odd prime power; the obstruction only applies to prime powers\n";
}

std::string pretty(const cc::GramForm& g) {
  std::size_t w = 1;
  for (const auto& e : g.entries()) w = std::max(w, e.str().size());
  std::ostringstream out;
  for (std::size_t i = 0; i < g.dim(); ++i) {
    for (std::size_t j = 0; j < g.dim(); ++j) out << (j ? " " : "") << std::setw(static_cast<int>(w)) << g(i, j).str();
    out << '\n';
  }
  return out.str();
}

struct FormArgs {
  std::string m, n, p;
  bool pretty = false;
  bool json = false;
};

int run_form(const FormArgs& a) {
  const long long m = parse_ll(a.m), n = parse_ll(a.n), p = parse_ll(a.p);
  const cc::GramForm g = cc::intersection_form(m, n, p);
  warn_prime_power(p);
  if (a.pretty && !a.json) {
    std::cout << pretty(g);
  } else {
    cc::json j{{"schema", cc::kSchemaVersion},
               {"params", {{"m", std::to_string(m)}, {"n", std::to_string(n)}, {"p", std::to_string(p)}}},
               {"form", cc::to_json(g)}};
    std::cout << j.dump(a.pretty ? 2 : -1) << '\n';
  }
  return kExitOk;
}

struct EmbedArgs {
  std::string m, n, p, copies = "1", budget;
  bool sequential = false;
  bool force_search = false;
  bool no_cache = false;
  std::string cache_path;
  bool pretty = false;
};

int run_embed(const EmbedArgs& a) {
  const long long m = parse_ll(a.m), n = parse_ll(a.n), p = parse_ll(a.p), copies = parse_ll(a.copies);
  if (p < 3) throw cc::parameter_error("p must be at least 3");
  if (copies < 1) throw cc::parameter_error("N must be at least 1");
  if (m == 0 || n == 0 || (m > 0) == (n > 0))
    throw cc::parameter_error("embed needs mn < 0; for mn >= 0 the filling form is not negative definite");
  warn_prime_power(p);

  const cc::Normalized nm = cc::normalize(m, n);
  const cc::GramForm g = cc::direct_sum_copies(cc::intersection_form(nm.m, nm.n, p), static_cast<std::size_t>(copies));

  cc::SearchOptions opts;
  opts.sequential = a.sequential;
  if (!a.budget.empty()) {
    const long long b = parse_ll(a.budget);
    if (b <= 0) throw cc::parameter_error("budget must be positive");
    opts.node_budget = static_cast<std::uint64_t>(b);
  } else {
    opts.node_budget = cc::kDefaultNodeBudget;
  }

  cc::SearchOutcome outcome;
  std::string route;
  const auto explicit_route = cc::explicit_route(nm, p);
  if (explicit_route && !a.force_search) {
    route = *explicit_route;
    outcome.witness = cc::explicit_embedding(nm, p, copies);
    if (!cc::verify_witness(g, *outcome.witness)) throw std::logic_error("explicit witness failed verification");
    outcome.status = cc::SearchStatus::Found;
    outcome.reason = "explicit witness verified";
  } else {
    route = "search";
    std::optional<cc::SearchCache> cache;
    if (!a.no_cache) cache.emplace(a.cache_path.empty() ? cc::default_cache_path() : std::filesystem::path(a.cache_path));
    std::optional<cc::SearchOutcome> hit;
    if (cache) {
      hit = cache->lookup(g, opts.node_budget);
      if (hit && hit->witness && !cc::verify_witness(g, *hit->witness)) hit.reset();
    }
    if (hit) {
      outcome = *hit;
      std::cerr << "cache hit: " << cache->path().string() << '\n';
    } else {
      outcome = cc::search_embedding(g, opts);
      if (cache) {
        try {
          cache->store(g, outcome, opts.node_budget);
        } catch (const std::exception& e) {
          std::cerr << "warning: " << e.what() << '\n';
        }
      }
    }
  }

  cc::json j;
  j["schema"] = cc::kSchemaVersion;
  j["params"] = {{"m", std::to_string(m)}, {"n", std::to_string(n)}, {"p", std::to_string(p)},
                 {"N", std::to_string(copies)}};
  j["normalized_params"] = {{"m", std::to_string(nm.m)}, {"n", std::to_string(nm.n)},
                            {"mirrored", nm.mirrored}, {"swapped", nm.swapped}};
  j["form_dim"] = std::to_string(g.dim());
  j["form_hash"] = cc::form_hash(g);
  j["route"] = route;
  const auto expected = cc::expected_embedding(nm, p);
  j["expected"] = expected ? cc::json(cc::to_string(*expected)) : cc::json(nullptr);
  j["outcome"] = cc::to_json(outcome);
  std::cout << j.dump(a.pretty ? 2 : -1) << '\n';

  switch (outcome.status) {
    case cc::SearchStatus::Found: return kExitOk;
    case cc::SearchStatus::NoneExists: return kExitNone;
    case cc::SearchStatus::Unknown: return kExitUnknown;
  }
  return kExitUnknown;
}

int run_classify(const std::string& ms, const std::string& ns) {
  std::cout << cc::to_string(cc::classify(parse_ll(ms), parse_ll(ns))) << '\n';
  return kExitOk;
}

struct AlexArgs {
  std::string m, n, fm;
  bool json = false;
};

int run_alex(const AlexArgs& a) {
  const long long m = parse_ll(a.m), n = parse_ll(a.n);
  const cc::LaurentPoly delta = cc::alexander({m, n});
  std::optional<cc::Factorization> f;
  long long c = 0;
  if (!a.fm.empty()) {
    c = parse_ll(a.fm);
    f = cc::fox_milnor(delta, c);
  }
  if (a.json) {
    cc::json j{{"schema", cc::kSchemaVersion},
               {"params", {{"m", std::to_string(m)}, {"n", std::to_string(n)}}},
               {"alexander", cc::to_json(delta)},
               {"alexander_text", delta.to_string()}};
    if (!a.fm.empty()) {
      j["complexity"] = std::to_string(c);
      j["fox_milnor"] = f ? cc::to_json(*f, delta) : cc::json(nullptr);
    }
    std::cout << j.dump() << '\n';
    return kExitOk;
  }
  std::cout << "alexander: " << delta.to_string() << '\n';
  if (!a.fm.empty()) {
    if (f)
      std::cout << "fox-milnor (c = " << c << "): f = " << f->f.to_string() << ", unit = "
                << (f->unit_sign < 0 ? "-" : "") << "t^" << f->unit_exp << '\n';
    else
      std::cout << "fox-milnor (c = " << c << "): none\n";
  }
  return kExitOk;
}

struct SurveyArgs {
  std::string m, n, p = "3", budget, out;
  unsigned threads = 0;
};

int run_survey(const SurveyArgs& a) {
  const cc::Range ms = parse_range(a.m), ns = parse_range(a.n);
  const std::vector<long long> ps = parse_list(a.p);
  for (long long p : ps) {
    if (p < 3) throw cc::parameter_error("p must be at least 3");
    warn_prime_power(p);
  }
  cc::ObstructOptions opts;
  if (!a.budget.empty()) {
    const long long b = parse_ll(a.budget);
    if (b <= 0) throw cc::parameter_error("budget must be positive");
    opts.search.node_budget = static_cast<std::uint64_t>(b);
  }
  const auto reports = cc::survey(ms, ns, ps, opts, a.threads);

  std::ofstream file;
  if (!a.out.empty()) {
    file.open(a.out, std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open " + a.out);
  }
  std::ostream& out = a.out.empty() ? std::cout : file;
  for (const auto& r : reports) out << cc::to_json(r).dump() << '\n';
  return kExitOk;
}

struct ReportArgs {
  std::string m, n, p = "3", copies = "1", budget;
  bool confirm = false;
};

int run_report(const ReportArgs& a) {
  const long long m = parse_ll(a.m), n = parse_ll(a.n), p = parse_ll(a.p), copies = parse_ll(a.copies);
  warn_prime_power(p);
  cc::ObstructOptions opts;
  opts.confirm_with_search = a.confirm;
  if (!a.budget.empty()) {
    const long long b = parse_ll(a.budget);
    if (b <= 0) throw cc::parameter_error("budget must be positive");
    opts.search.node_budget = static_cast<std::uint64_t>(b);
  }
  std::cout << cc::to_json(cc::report(m, n, p, copies, opts)).dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rational concordance of double twist knots K_{m,n}"};
  app.set_version_flag("--version", std::string(cc::kToolVersion));
  app.require_subcommand(1);

  FormArgs form;
  auto* c_form = app.add_subcommand("form", "Print the intersection form Q_p(m, n)");
  c_form->add_option("-m", form.m, "m < 0")->required();
  c_form->add_option("-n", form.n, "n >= 1")->required();
  c_form->add_option("-p", form.p, "cover degree, p >= 3")->required();
  c_form->add_flag("--pretty", form.pretty, "aligned matrix (or indented JSON with --json)");
  c_form->add_flag("--json", form.json, "JSON output (default)");

  EmbedArgs embed;
  auto* c_embed = app.add_subcommand("embed", "Decide whether N copies of the filling form of K_{m,n} embed in <-1>^d");
  c_embed->add_option("-m", embed.m, "m")->required();
  c_embed->add_option("-n", embed.n, "n (mn < 0)")->required();
  c_embed->add_option("-p", embed.p, "cover degree, p >= 3")->required();
  c_embed->add_option("-N,--copies", embed.copies, "number of copies")->capture_default_str();
  c_embed->add_option("--budget", embed.budget, "node budget (default 100000000)");
  c_embed->add_flag("--sequential", embed.sequential, "single-threaded search");
  c_embed->add_flag("--search", embed.force_search, "search even when an explicit witness is known");
  c_embed->add_option("--cache", embed.cache_path, "cache file (default $CONCORDANCE_CACHE or the config dir)");
  c_embed->add_flag("--no-cache", embed.no_cache, "neither read nor write the cache");
  c_embed->add_flag("--pretty", embed.pretty, "indented JSON");

  std::string cm, cn;
  auto* c_classify = app.add_subcommand("classify", "Rational concordance class of K_{m,n}");
  c_classify->add_option("-m", cm, "m")->required();
  c_classify->add_option("-n", cn, "n")->required();

  AlexArgs alex;
  auto* c_alex = app.add_subcommand("alex", "Alexander polynomial and Fox-Milnor factorization");
  c_alex->add_option("-m", alex.m, "m")->required();
  c_alex->add_option("-n", alex.n, "n")->required();
  c_alex->add_option("--fm", alex.fm, "complexity c >= 1 of the Fox-Milnor test");
  c_alex->add_flag("--json", alex.json, "JSON output");

  SurveyArgs surv;
  auto* c_survey = app.add_subcommand("survey", "Reports over a grid of (m, n, p) as JSON lines");
  c_survey->add_option("-m", surv.m, "range a..b")->required();
  c_survey->add_option("-n", surv.n, "range a..b")->required();
  c_survey->add_option("-p", surv.p, "comma-separated list of degrees or ranges")->capture_default_str();
  c_survey->add_option("--budget", surv.budget, "node budget per search");
  c_survey->add_option("--threads", surv.threads, "worker threads (0 = hardware)");
  c_survey->add_option("--out", surv.out, "output file (default stdout)");

  ReportArgs rep;
  auto* c_report = app.add_subcommand("report", "Full classification and evidence report for one knot");
  c_report->add_option("-m", rep.m, "m")->required();
  c_report->add_option("-n", rep.n, "n")->required();
  c_report->add_option("-p", rep.p, "cover degree, p >= 3")->capture_default_str();
  c_report->add_option("-N,--copies", rep.copies, "number of copies")->capture_default_str();
  c_report->add_option("--budget", rep.budget, "node budget");
  c_report->add_flag("--confirm", rep.confirm, "also search when an explicit witness is known");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*c_form) return run_form(form);
    if (*c_embed) return run_embed(embed);
    if (*c_classify) return run_classify(cm, cn);
    if (*c_alex) return run_alex(alex);
    if (*c_survey) return run_survey(surv);
    if (*c_report) return run_report(rep);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
