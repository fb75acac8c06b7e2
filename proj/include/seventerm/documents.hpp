#pragma once

#include "seventerm/report.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace seventerm {

// Input documents (JSON objects):
//   {"kind": "group", "table": [[...], ...], "labels": [...]}
//   {"kind": "module", "group": <group>, "rank": "n", "relations": [[...], ...],
//    "generators": [...], "actions": [<n x n matrix as nested arrays>, ...]}
//   {"kind": "extension", "group": <group>, "normal": [...], "module": <module without "group">}
// Each relation is a vector of length rank; actions are ambient matrices for the
// listed generators of G.

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::InvalidInput, "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidInput, "malformed JSON in '" + path + "': " + e.what());
  }
}

inline IntMatrix nested_matrix_from_json(const Json& j, std::size_t rows, std::size_t cols) {
  if (j.is_object()) {
    IntMatrix a = matrix_from_json(j);
    require(a.rows() == rows && a.cols() == cols, ErrorCode::DimensionMismatch, "matrix has the wrong shape");
    return a;
  }
  require(j.is_array() && j.size() == rows, ErrorCode::DimensionMismatch, "matrix has the wrong number of rows");
  IntMatrix a(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    IntVector r = vector_from_json(j[i]);
    require(r.size() == cols, ErrorCode::DimensionMismatch, "matrix row has the wrong length");
    for (std::size_t k = 0; k < cols; ++k) a(i, k) = r[k];
  }
  return a;
}

inline FiniteGroup group_from_document(const Json& j) {
  require(j.is_object() && j.contains("table"), ErrorCode::InvalidInput, "group document needs a table");
  const Json& t = j["table"];
  require(t.is_array() && !t.empty(), ErrorCode::InvalidInput, "group table must be a non-empty array");
  std::vector<std::vector<std::size_t>> table;
  for (const auto& row : t) {
    require(row.is_array(), ErrorCode::InvalidInput, "group table rows must be arrays");
    std::vector<std::size_t> r;
    for (const auto& x : row) r.push_back(size_from_json(x));
    table.push_back(std::move(r));
  }
  std::vector<std::string> labels;
  if (j.contains("labels"))
    for (const auto& l : j["labels"]) labels.push_back(l.get<std::string>());
  return FiniteGroup(table, labels);
}

inline Json group_document(const FiniteGroup& g) {
  Json table = Json::array();
  for (const auto& row : g.table()) {
    Json r = Json::array();
    for (std::size_t x : row) r.push_back(std::to_string(x));
    table.push_back(std::move(r));
  }
  return Json{{"kind", "group"}, {"order", std::to_string(g.order())}, {"table", table}, {"labels", g.labels()}};
}

inline GModule module_from_document(const FiniteGroup& g, const Json& j) {
  require(j.is_object() && j.contains("rank"), ErrorCode::InvalidInput, "module document needs a rank");
  const std::size_t n = size_from_json(j["rank"]);
  require(n <= 64, ErrorCode::InvalidInput, "module rank too large");
  std::vector<IntVector> rels;
  if (j.contains("relations"))
    for (const auto& r : j["relations"]) {
      IntVector v = vector_from_json(r);
      require(v.size() == n, ErrorCode::DimensionMismatch, "relation length differs from module rank");
      rels.push_back(std::move(v));
    }
  IntMatrix relations = generators_matrix(n, rels);
  std::vector<std::size_t> gens;
  std::vector<IntMatrix> actions;
  if (j.contains("generators")) {
    for (const auto& x : j["generators"]) gens.push_back(size_from_json(x));
    require(j.contains("actions") && j["actions"].size() == gens.size(), ErrorCode::InvalidInput,
            "one action matrix per listed generator");
    for (const auto& a : j["actions"]) actions.push_back(nested_matrix_from_json(a, n, n));
  } else {
    gens = g.generators();
    actions.assign(gens.size(), IntMatrix::identity(n));
  }
  return GModule::from_generator_action(g, n, relations, gens, actions);
}

/// A module document for a module given by standard-coordinate action matrices.
inline Json module_document(const GModule& m) {
  Json rels = Json::array();
  for (std::size_t j = 0; j < m.rank(); ++j)
    if (m.abelian().moduli()[j] != 0) {
      IntVector r(m.rank(), 0);
      r[j] = m.abelian().moduli()[j];
      rels.push_back(vector_json(r));
    }
  Json gens = Json::array(), acts = Json::array();
  for (std::size_t g : m.group().generators()) {
    gens.push_back(std::to_string(g));
    Json a = Json::array();
    const IntMatrix& mat = m.action(g);
    for (std::size_t i = 0; i < mat.rows(); ++i) {
      IntVector row(mat.cols());
      for (std::size_t k = 0; k < mat.cols(); ++k) row[k] = mat(i, k);
      a.push_back(vector_json(row));
    }
    acts.push_back(std::move(a));
  }
  return Json{{"kind", "module"}, {"rank", std::to_string(m.rank())}, {"relations", rels}, {"generators", gens}, {"actions", acts}};
}

struct ExtensionInput {
  NormalPair pair;
  GModule module;
};

inline ExtensionInput extension_from_document(const Json& j) {
  require(j.is_object() && j.contains("group") && j.contains("normal") && j.contains("module"), ErrorCode::InvalidInput,
          "extension document needs group, normal and module");
  FiniteGroup g = group_from_document(j["group"]);
  std::vector<std::size_t> n;
  for (const auto& x : j["normal"]) n.push_back(size_from_json(x));
  GModule m = module_from_document(g, j["module"]);
  return {NormalPair(g, n), m};
}

inline Json extension_document(const NormalPair& pair, const GModule& m) {
  Json n = Json::array();
  for (std::size_t x : pair.n_elements()) n.push_back(std::to_string(x));
  Json mod = module_document(m);
  return Json{{"kind", "extension"}, {"group", group_document(pair.g())}, {"normal", n}, {"module", mod}};
}

/// Checks a document and summarizes it. Reports are re-parsed: groups and maps must
/// form valid homomorphisms and consecutive maps must compose to zero.
inline Json inspect_document(const Json& doc) {
  require(doc.is_object(), ErrorCode::InvalidInput, "document must be a JSON object");
  Json out{{"tool", kToolName}, {"version", kToolVersion}, {"command", "inspect"}};
  if (doc.contains("kind")) {
    const std::string kind = doc["kind"].get<std::string>();
    out["kind"] = kind;
    if (kind == "group") {
      FiniteGroup g = group_from_document(doc);
      auto st = structural_subgroups(g);
      out["order"] = std::to_string(g.order());
      out["abelian"] = g.is_abelian();
      out["center_order"] = std::to_string(st.center.size());
      out["commutator_order"] = std::to_string(st.commutator.size());
    } else if (kind == "module") {
      require(doc.contains("group"), ErrorCode::InvalidInput, "module document needs its group");
      FiniteGroup g = group_from_document(doc["group"]);
      GModule m = module_from_document(g, doc);
      out["group_order"] = std::to_string(g.order());
      out["module"] = group_json(m.abelian());
      out["trivial_action"] = m.is_trivial_action();
    } else if (kind == "extension") {
      ExtensionInput e = extension_from_document(doc);
      out["G_order"] = std::to_string(e.pair.g().order());
      out["N_order"] = std::to_string(e.pair.n().order());
      out["Q_order"] = std::to_string(e.pair.q().order());
      out["module"] = group_json(e.module.abelian());
      out["trivial_action"] = e.module.is_trivial_action();
    } else {
      fail(ErrorCode::InvalidInput, "unknown document kind '" + kind + "'");
    }
    out["valid"] = true;
    return out;
  }
  require(doc.contains("command"), ErrorCode::InvalidInput, "document has neither kind nor command");
  const std::string command = doc["command"].get<std::string>();
  out["kind"] = command + " report";
  if (command == "seven-term") {
    std::vector<FgAbelianGroup> groups;
    for (const auto& g : doc.at("groups")) groups.push_back(group_from_json(g));
    std::vector<IntMatrix> maps;
    for (const auto& m : doc.at("maps")) maps.push_back(matrix_from_json(m.at("matrix")));
    require(groups.size() == 7 && maps.size() == 6, ErrorCode::InvalidInput, "seven-term report needs 7 groups and 6 maps");
    Json checks = Json::array();
    bool ok = true;
    for (std::size_t i = 0; i < 6; ++i) {
      bool hom = is_well_defined_hom(groups[i], groups[i + 1], maps[i]);
      ok = ok && hom;
      checks.push_back(Json{{"map", sequence_map_names()[i]}, {"well_defined", hom}});
    }
    for (std::size_t i = 0; i + 1 < 6 && ok; ++i) {
      IntMatrix comp = maps[i + 1] * maps[i];
      bool zero = homs_equal(groups[i + 2], comp, IntMatrix(comp.rows(), comp.cols()));
      ok = ok && zero;
      checks.push_back(Json{{"composite", sequence_map_names()[i + 1] + " o " + sequence_map_names()[i]}, {"zero", zero}});
    }
    out["checks"] = checks;
    out["valid"] = ok;
  } else if (command == "cohomology") {
    FgAbelianGroup g = group_from_json(doc.at("group"));
    out["group"] = group_json(g);
    out["valid"] = true;
  } else if (command == "verify") {
    out["ok"] = doc.at("ok");
    out["cases"] = std::to_string(doc.at("cases").size());
    out["valid"] = true;
  } else {
    fail(ErrorCode::InvalidInput, "unknown report command '" + command + "'");
  }
  return out;
}

}  // namespace seventerm
