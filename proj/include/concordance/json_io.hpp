#pragma once

// JSON encodings. Every integer that is part of the mathematical payload is
// written as a decimal string so values past 64 bits survive round trips.

#include <string>

#include "json.hpp"

#include "concordance/embed.hpp"
#include "concordance/forms.hpp"
#include "concordance/knotalg.hpp"
#include "concordance/laurent.hpp"
#include "concordance/pipeline.hpp"

namespace concordance {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

namespace detail {

inline BigInt read_int(const json& j) {
  if (j.is_string()) return parse_decimal(j.get<std::string>());
  if (j.is_number_integer()) return BigInt(j.get<long long>());
  throw parameter_error("expected an integer (decimal string)");
}

inline std::size_t read_size(const json& j) {
  const BigInt v = read_int(j);
  if (v < 0 || v > BigInt(1) << 32) throw parameter_error("dimension out of range");
  return static_cast<std::size_t>(v);
}

}  // namespace detail

inline json to_json(const GramForm& g) {
  json rows = json::array();
  for (std::size_t i = 0; i < g.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < g.dim(); ++j) row.push_back(g(i, j).str());
    rows.push_back(std::move(row));
  }
  return json{{"dim", std::to_string(g.dim())}, {"rows", std::move(rows)}};
}

inline GramForm gram_form_from_json(const json& j) {
  const std::size_t d = detail::read_size(j.at("dim"));
  const json& rows = j.at("rows");
  if (!rows.is_array() || rows.size() != d) throw parameter_error("GramForm JSON: row count does not match dim");
  std::vector<BigInt> e;
  e.reserve(d * d);
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != d) throw parameter_error("GramForm JSON: row length does not match dim");
    for (const auto& v : row) e.push_back(detail::read_int(v));
  }
  return GramForm(d, std::move(e));
}

inline json to_json(const EmbeddingWitness& w) {
  json cols = json::array();
  for (const auto& c : w.columns) {
    json col = json::array();
    for (const auto& v : c) col.push_back(v.str());
    cols.push_back(std::move(col));
  }
  return json{{"dim", std::to_string(w.dim)}, {"columns", std::move(cols)}};
}

inline EmbeddingWitness witness_from_json(const json& j) {
  EmbeddingWitness w;
  w.dim = detail::read_size(j.at("dim"));
  for (const auto& c : j.at("columns")) {
    std::vector<BigInt> col;
    for (const auto& v : c) col.push_back(detail::read_int(v));
    if (col.size() != w.dim) throw parameter_error("witness JSON: column length does not match dim");
    w.columns.push_back(std::move(col));
  }
  if (w.columns.size() != w.dim) throw parameter_error("witness JSON: column count does not match dim");
  return w;
}

inline json to_json(const LaurentPoly& p) {
  json coeffs = json::object();
  for (const auto& [e, c] : p.terms()) coeffs[std::to_string(e)] = c.str();
  return json{{"coeffs", std::move(coeffs)}};
}

inline LaurentPoly laurent_from_json(const json& j) {
  LaurentPoly p;
  for (const auto& [k, v] : j.at("coeffs").items()) {
    const BigInt e = parse_decimal(k);
    if (!fits_int64(e)) throw parameter_error("LaurentPoly JSON: exponent out of range");
    p.add_term(static_cast<long long>(e), detail::read_int(v));
  }
  return p;
}

inline json to_json(const Factorization& f, const LaurentPoly& delta) {
  return json{{"f", to_json(f.f)},
              {"f_text", f.f.to_string()},
              {"unit_sign", std::to_string(f.unit_sign)},
              {"unit_exp", std::to_string(f.unit_exp)},
              {"complexity", std::to_string(f.complexity)},
              {"remultiplies", verify_factorization(delta, f)}};
}

inline json to_json(const SearchOutcome& o) {
  json j{{"status", to_string(o.status)},
         {"nodes_explored", std::to_string(o.nodes_explored)},
         {"budget_exhausted", o.budget_exhausted},
         {"reason", o.reason}};
  j["witness"] = o.witness ? to_json(*o.witness) : json(nullptr);
  return j;
}

inline SearchOutcome search_outcome_from_json(const json& j) {
  SearchOutcome o;
  const auto s = j.at("status").get<std::string>();
  if (s == "Found") o.status = SearchStatus::Found;
  else if (s == "NoneExists") o.status = SearchStatus::NoneExists;
  else if (s == "Unknown") o.status = SearchStatus::Unknown;
  else throw parameter_error("search outcome JSON: bad status " + s);
  o.nodes_explored = static_cast<std::uint64_t>(detail::read_int(j.at("nodes_explored")));
  o.budget_exhausted = j.at("budget_exhausted").get<bool>();
  o.reason = j.value("reason", "");
  if (j.contains("witness") && !j.at("witness").is_null()) o.witness = witness_from_json(j.at("witness"));
  return o;
}

inline json to_json(const ObstructionReport& r) {
  auto opt_int = [](const std::optional<BigInt>& v) { return v ? json(v->str()) : json(nullptr); };
  auto opt_bool = [](const std::optional<bool>& v) { return v ? json(*v) : json(nullptr); };
  json j;
  j["schema"] = kSchemaVersion;
  j["params"] = {{"m", std::to_string(r.m)},
                 {"n", std::to_string(r.n)},
                 {"p", std::to_string(r.p)},
                 {"N", std::to_string(r.copies)}};
  if (r.normalized)
    j["normalized_params"] = {{"m", std::to_string(r.normalized->m)},
                              {"n", std::to_string(r.normalized->n)},
                              {"mirrored", r.normalized->mirrored},
                              {"swapped", r.normalized->swapped}};
  else
    j["normalized_params"] = nullptr;
  j["classification"] = to_string(r.classification);
  j["form_dim"] = r.form_dim ? json(std::to_string(*r.form_dim)) : json(nullptr);
  j["negative_definite"] = opt_bool(r.negative_definite);
  j["determinant"] = opt_int(r.determinant);
  j["homology_order"] = opt_int(r.homology_order);
  j["det_matches_homology"] = opt_bool(r.det_matches_homology);
  j["embedding"] = r.embedding ? to_json(*r.embedding) : json(nullptr);
  j["embedding_route"] = r.embedding_route.empty() ? json(nullptr) : json(r.embedding_route);
  j["expected_embedding"] = r.expected_embedding ? json(to_string(*r.expected_embedding)) : json(nullptr);
  j["search_confirmation"] = r.search_confirmation ? to_json(*r.search_confirmation) : json(nullptr);

  json alg;
  alg["alexander"] = to_json(r.algebraic.alexander);
  alg["alexander_text"] = r.algebraic.alexander.to_string();
  alg["twist_class"] = r.algebraic.twist_class ? json(to_string(*r.algebraic.twist_class)) : json(nullptr);
  alg["fox_milnor_c1"] =
      r.algebraic.fox_milnor_c1 ? to_json(*r.algebraic.fox_milnor_c1, r.algebraic.alexander) : json(nullptr);
  alg["fox_milnor_c2"] =
      r.algebraic.fox_milnor_c2 ? to_json(*r.algebraic.fox_milnor_c2, r.algebraic.alexander) : json(nullptr);
  j["algebraic"] = std::move(alg);

  json lt = json::array();
  for (const auto& s : r.lt_samples)
    lt.push_back({{"s", std::to_string(s.num) + "/" + std::to_string(s.den)}, {"value", std::to_string(s.value)}});
  j["signatures"] = {{"sigma", std::to_string(r.signature)}, {"levine_tristram", std::move(lt)}};
  j["warnings"] = r.warnings;
  j["consistent_with_theorem_A"] = r.consistent_with_theorem_A;
  return j;
}

}  // namespace concordance
