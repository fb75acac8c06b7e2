#pragma once

#include "seventerm/cohomology.hpp"
#include "seventerm/seven_term.hpp"
#include "seventerm/verification.hpp"

#include "json.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace seventerm {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "seventerm";
inline constexpr const char* kToolVersion = "1.0.0";

// Integers are written as decimal strings; readers accept strings or JSON integers.

inline Json integer_json(const Integer& x) { return to_string(x); }

inline Integer integer_from_json(const Json& j) {
  if (j.is_string()) return parse_integer(j.get<std::string>());
  if (j.is_number_integer()) return Integer(j.get<long long>());
  fail(ErrorCode::InvalidInput, "expected an integer (decimal string or number)");
}

inline std::size_t size_from_json(const Json& j) {
  Integer x = integer_from_json(j);
  require(x >= 0 && x <= Integer(std::numeric_limits<std::uint32_t>::max()), ErrorCode::InvalidInput,
          "count out of range");
  return static_cast<std::size_t>(x);
}

inline Json vector_json(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(integer_json(x));
  return a;
}

inline IntVector vector_from_json(const Json& j) {
  require(j.is_array(), ErrorCode::InvalidInput, "expected an array of integers");
  IntVector v;
  for (const auto& x : j) v.push_back(integer_from_json(x));
  return v;
}

inline Json matrix_json(const IntMatrix& a) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) r.push_back(integer_json(a(i, j)));
    rows.push_back(std::move(r));
  }
  return Json{{"rows", std::to_string(a.rows())}, {"cols", std::to_string(a.cols())}, {"entries", rows}};
}

inline IntMatrix matrix_from_json(const Json& j) {
  require(j.is_object() && j.contains("rows") && j.contains("cols") && j.contains("entries"), ErrorCode::InvalidInput,
          "matrix needs rows, cols and entries");
  const std::size_t r = size_from_json(j["rows"]), c = size_from_json(j["cols"]);
  require(j["entries"].is_array() && j["entries"].size() == r, ErrorCode::InvalidInput, "matrix row count");
  IntMatrix a(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    IntVector row = vector_from_json(j["entries"][i]);
    require(row.size() == c, ErrorCode::InvalidInput, "matrix column count");
    for (std::size_t k = 0; k < c; ++k) a(i, k) = row[k];
  }
  return a;
}

/// An abelian group in standard form: Z_{m_1} + ... (0 for a free factor).
inline Json group_json(const FgAbelianGroup& g) {
  Json inv = Json::array();
  for (const auto& d : g.invariant_factors()) inv.push_back(integer_json(d));
  Json mods = Json::array();
  for (const auto& d : g.moduli()) mods.push_back(integer_json(d));
  Json out{{"description", describe_group(g)},
           {"moduli", mods},
           {"free_rank", std::to_string(g.free_rank())},
           {"invariant_factors", inv}};
  if (auto o = g.order()) out["order"] = integer_json(*o);
  else out["order"] = "infinite";
  return out;
}

inline FgAbelianGroup group_from_json(const Json& j) {
  require(j.is_object() && j.contains("moduli"), ErrorCode::InvalidInput, "group needs moduli");
  std::vector<Integer> moduli;
  for (const auto& x : j["moduli"]) {
    Integer m = integer_from_json(x);
    require(m >= 0, ErrorCode::InvalidInput, "negative modulus");
    moduli.push_back(m);
  }
  return FgAbelianGroup::from_moduli(moduli);
}

inline Json options_json(const CohomologyOptions& o) { return Json{{"max_unknowns", std::to_string(o.max_unknowns)}}; }

inline Json cohomology_json(const Cohomology& h, const std::string& preset, const std::string& module) {
  Json gens = Json::array();
  for (std::size_t j = 0; j < h.rank(); ++j) {
    Cochain c = h.generator(j);
    Json values = Json::array();
    for (const auto& v : c.values) values.push_back(vector_json(v));
    gens.push_back(Json{{"order", h.group().moduli()[j] == 0 ? std::string("infinite") : to_string(h.group().moduli()[j])},
                        {"values", values}});
  }
  return Json{{"tool", kToolName},
              {"version", kToolVersion},
              {"command", "cohomology"},
              {"config", Json{{"preset", preset}, {"module", module}, {"degree", std::to_string(h.degree())}}},
              {"group", group_json(h.group())},
              {"generator_cocycles", gens}};
}

inline Json exactness_json(const ExactnessReport& r) {
  Json joints = Json::array();
  for (const auto& j : r.joints)
    joints.push_back(Json{{"at", j.name},
                          {"verdict", j.exact ? "exact" : "not exact"},
                          {"image_order", j.image_order == 0 ? std::string("infinite") : to_string(j.image_order)},
                          {"kernel_order", j.kernel_order == 0 ? std::string("infinite") : to_string(j.kernel_order)}});
  return Json{{"inflation_injective", r.inflation_injective},
              {"inflation_lands_in_kernel_of_restriction", r.inflation_lands_in_kernel},
              {"joints", joints},
              {"all_exact", r.all_exact()}};
}

inline const std::vector<std::string>& sequence_group_names() {
  static const std::vector<std::string> names = {"H1(Q,M^N)",       "H1(G,M)",       "H1(N,M)^Q", "H2(Q,M^N)",
                                                 "H2(G,M)_1",       "H1(Q,H1(N,M))", "H3(Q,M^N)"};
  return names;
}

inline const std::vector<std::string>& sequence_map_names() {
  static const std::vector<std::string> names = {"inflation_1", "restriction", "transgression",
                                                 "inflation_2", "rho",         "lambda"};
  return names;
}

inline Json seven_term_json(const SevenTermSequence& seq, const std::string& preset, const std::string& module) {
  Json groups = Json::array();
  auto gs = seq.groups();
  for (std::size_t i = 0; i < gs.size(); ++i) {
    Json g = group_json(gs[i]);
    g["name"] = sequence_group_names()[i];
    groups.push_back(std::move(g));
  }
  Json maps = Json::array();
  auto ms = seq.matrices();
  for (std::size_t i = 0; i < ms.size(); ++i)
    maps.push_back(Json{{"name", sequence_map_names()[i]},
                        {"source", sequence_group_names()[i]},
                        {"target", sequence_group_names()[i + 1]},
                        {"matrix", matrix_json(ms[i])}});
  return Json{{"tool", kToolName},
              {"version", kToolVersion},
              {"command", "seven-term"},
              {"config", Json{{"preset", preset}, {"module", module}}},
              {"ambient", Json{{"G_order", std::to_string(seq.pair().g().order())},
                               {"N_order", std::to_string(seq.pair().n().order())},
                               {"Q_order", std::to_string(seq.pair().q().order())},
                               {"M", group_json(seq.module().abelian())},
                               {"H2(G,M)", group_json(seq.h2_g().group())},
                               {"H2(G,M)_1_inclusion", matrix_json(seq.h2_g_kernel().inclusion)}}},
              {"groups", groups},
              {"maps", maps},
              {"exactness", exactness_json(seq.verify_exactness())}};
}

inline Json verify_json(const VerifyReport& r) {
  Json cases = Json::array();
  for (const auto& c : r.cases) {
    Json gs = Json::array();
    for (const auto& g : c.groups) gs.push_back(describe_group(g));
    cases.push_back(Json{{"preset", c.preset}, {"module", c.module}, {"groups", gs}, {"exactness", exactness_json(c.exactness)}});
  }
  Json checks = Json::array();
  for (const auto& t : r.checks)
    checks.push_back(Json{{"name", t.name},
                          {"passed", std::to_string(t.passed)},
                          {"failed", std::to_string(t.failed)},
                          {"failures", t.failures}});
  return Json{{"tool", kToolName},
              {"version", kToolVersion},
              {"command", "verify"},
              {"config", Json{{"battery", "default"},
                              {"trials", std::to_string(r.options.trials)},
                              {"seed", std::to_string(r.options.seed)},
                              {"cohomology", options_json(r.options.cohomology)}}},
              {"cases", cases},
              {"checks", checks},
              {"ok", r.ok()}};
}

/// Human-readable rendering of a seven-term document.
inline std::string seven_term_text(const Json& doc) {
  std::ostringstream out;
  out << "seven-term sequence for " << doc["config"]["preset"].get<std::string>() << " with M = "
      << doc["config"]["module"].get<std::string>() << "\n";
  out << "|G| = " << doc["ambient"]["G_order"].get<std::string>() << ", |N| = " << doc["ambient"]["N_order"].get<std::string>()
      << ", |Q| = " << doc["ambient"]["Q_order"].get<std::string>() << ", M = "
      << doc["ambient"]["M"]["description"].get<std::string>() << "\n\n";
  out << "0";
  for (const auto& g : doc["groups"])
    out << " -> " << g["name"].get<std::string>() << " = " << g["description"].get<std::string>();
  out << "\n\n";
  for (const auto& m : doc["maps"]) {
    const Json& a = m["matrix"];
    out << m["name"].get<std::string>() << " (" << a["rows"].get<std::string>() << "x" << a["cols"].get<std::string>() << "):";
    if (a["entries"].empty()) out << " (no rows)";
    for (const auto& row : a["entries"]) {
      out << " [";
      for (std::size_t k = 0; k < row.size(); ++k) out << (k ? " " : "") << row[k].get<std::string>();
      out << "]";
    }
    out << "\n";
  }
  const Json& ex = doc["exactness"];
  out << "\ninflation injective: " << (ex["inflation_injective"].get<bool>() ? "yes" : "no") << "\n";
  out << "image of inflation inside H2(G,M)_1: " << (ex["inflation_lands_in_kernel_of_restriction"].get<bool>() ? "yes" : "no")
      << "\n";
  for (const auto& j : ex["joints"])
    out << "at " << j["at"].get<std::string>() << ": " << j["verdict"].get<std::string>() << " (image order "
        << j["image_order"].get<std::string>() << ", kernel order " << j["kernel_order"].get<std::string>() << ")\n";
  return out.str();
}

}  // namespace seventerm
