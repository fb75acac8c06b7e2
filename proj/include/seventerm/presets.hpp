#pragma once

#include "seventerm/gmodule.hpp"
#include "seventerm/group_builders.hpp"

#include <cctype>
#include <optional>
#include <regex>
#include <string>
#include <vector>

namespace seventerm {

/// A group extension 1 -> N -> G -> Q -> 1 from the preset catalogue,
/// with named generators of G and builders for designated modules.
struct Preset {
  std::string name;
  NormalPair pair;
  std::vector<std::size_t> generators;  // generating set of G used for action matrices
  /// Designated modules with nontrivial action, by index.
  std::vector<std::pair<std::string, GModule>> nontrivial_modules;
};

namespace detail {

inline GModule module_from_generator_matrices(const FiniteGroup& g, Integer modulus, std::size_t rank,
                                              const std::vector<std::size_t>& gens,
                                              const std::vector<IntMatrix>& mats) {
  IntMatrix rel(rank, modulus == 0 ? 0 : rank);
  if (modulus != 0)
    for (std::size_t i = 0; i < rank; ++i) rel(i, i) = modulus;
  return GModule::from_generator_action(g, rank, rel, gens, mats);
}

inline GModule scalar_module(const FiniteGroup& g, Integer modulus, const std::vector<std::size_t>& gens,
                             const std::vector<long>& scalars) {
  std::vector<IntMatrix> mats;
  for (long s : scalars) mats.push_back(IntMatrix::from_rows({{s}}));
  return module_from_generator_matrices(g, modulus, 1, gens, mats);
}

inline std::vector<std::size_t> parse_params(const std::string& text) {
  std::vector<std::size_t> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == ',')) ++i;
    if (i >= text.size()) break;
    require(std::isdigit(static_cast<unsigned char>(text[i])) != 0, ErrorCode::BadParams,
            "preset parameters must be positive integers");
    std::size_t v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      v = v * 10 + static_cast<std::size_t>(text[i] - '0');
      require(v <= 1000000, ErrorCode::BadParams, "preset parameter too large");
      ++i;
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace detail

inline Preset make_cyclic_preset(std::size_t n, std::size_t m) {
  require(n >= 1 && m >= 1 && n * m <= 4096, ErrorCode::BadParams, "cyclic(n,m) needs n, m >= 1 and n*m <= 4096");
  FiniteGroup g = groups::cyclic(n * m);
  std::vector<std::size_t> nel;
  for (std::size_t k = 0; k < n; ++k) nel.push_back(k * m);
  Preset p{"cyclic(" + std::to_string(n) + "," + std::to_string(m) + ")", NormalPair(g, nel), {}, {}};
  if (n * m > 1) p.generators = {1};
  const std::size_t ord = n * m;
  if (ord > 1 && ord % 2 == 0) {
    p.nontrivial_modules.push_back({"Z, generator acts by -1", detail::scalar_module(g, 0, {1}, {-1})});
  } else if (ord > 1) {
    // smallest prime factor q: Z_{q^2} with generator acting by 1 + q (order q divides |G|)
    std::size_t q = 3;
    while (ord % q != 0) q += 2;
    p.nontrivial_modules.push_back({"Z_" + std::to_string(q * q) + ", generator acts by " + std::to_string(q + 1),
                                    detail::scalar_module(g, Integer(q * q), {1}, {static_cast<long>(q + 1)})});
  }
  return p;
}

inline Preset make_dihedral_preset(std::size_t n) {
  require(n >= 2 && n <= 512, ErrorCode::BadParams, "dihedral(n) needs 2 <= n <= 512");
  FiniteGroup g = groups::dihedral(n);
  std::vector<std::size_t> rot;
  for (std::size_t i = 0; i < n; ++i) rot.push_back(i);
  Preset p{"dihedral(" + std::to_string(n) + ")", NormalPair(g, rot), {1, n}, {}};
  if (n % 2 == 0)
    p.nontrivial_modules.push_back({"Z, rotation acts by -1", detail::scalar_module(g, 0, {1, n}, {-1, 1})});
  else
    p.nontrivial_modules.push_back({"Z, reflection acts by -1", detail::scalar_module(g, 0, {1, n}, {1, -1})});
  return p;
}

inline Preset make_quaternion_preset() {
  FiniteGroup g = groups::quaternion8();
  // indices: 0 = 1, 1 = -1, 2 = i, 4 = j
  Preset p{"quaternion8", NormalPair(g, {0, 1}), {2, 4}, {}};
  // Lipschitz quaternions Z<1, i, j, k> with left multiplication.
  IntMatrix li = IntMatrix::from_rows({{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}});
  IntMatrix lj = IntMatrix::from_rows({{0, 0, -1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, -1, 0, 0}});
  p.nontrivial_modules.push_back({"Z^4, quaternions acting by left multiplication",
                                  detail::module_from_generator_matrices(g, 0, 4, {2, 4}, {li, lj})});
  p.nontrivial_modules.push_back({"Z, i and j act by -1", detail::scalar_module(g, 0, {2, 4}, {-1, -1})});
  return p;
}

inline Preset make_symmetric3_preset() {
  FiniteGroup g = groups::symmetric(3);
  // lexicographic permutations: 0 id, 1 [0,2,1], 2 [1,0,2], 3 [1,2,0], 4 [2,0,1], 5 [2,1,0]
  Preset p{"symmetric3", NormalPair(g, {0, 3, 4}), {1, 2}, {}};
  p.nontrivial_modules.push_back({"Z, sign action", detail::scalar_module(g, 0, {1, 2}, {-1, -1})});
  // standard representation on {x in Z^3 : sum = 0} with basis e0 - e1, e1 - e2
  IntMatrix t12 = IntMatrix::from_rows({{1, 0}, {1, -1}});   // swaps 1 and 2
  IntMatrix t01 = IntMatrix::from_rows({{-1, 1}, {0, 1}});   // swaps 0 and 1
  p.nontrivial_modules.push_back({"Z^2, standard representation",
                                  detail::module_from_generator_matrices(g, 0, 2, {1, 2}, {t12, t01})});
  return p;
}

inline Preset make_heisenberg_preset(std::size_t q) {
  require(q >= 2 && q <= 16, ErrorCode::BadParams, "heisenberg_mod(p) needs 2 <= p <= 16");
  FiniteGroup g = groups::heisenberg(q);
  std::vector<std::size_t> center;
  for (std::size_t c = 0; c < q; ++c) center.push_back(q * q * c);
  const std::size_t a = 1, b = q;
  Preset p{"heisenberg_mod(" + std::to_string(q) + ")", NormalPair(g, center), {a, b}, {}};
  if (q % 2 == 0) {
    p.nontrivial_modules.push_back({"Z, a acts by -1", detail::scalar_module(g, 0, {a, b}, {-1, 1})});
  } else {
    std::size_t r = 3;
    while (q % r != 0) r += 2;
    p.nontrivial_modules.push_back({"Z_" + std::to_string(r * r) + ", a acts by " + std::to_string(r + 1),
                                    detail::scalar_module(g, Integer(r * r), {a, b}, {static_cast<long>(r + 1), 1})});
  }
  return p;
}

/// Parses names such as "cyclic(2,4)", "dihedral(4)", "quaternion8",
/// "symmetric3", "heisenberg_mod(3)".
inline Preset build_preset(const std::string& spec) {
  std::string s;
  for (char c : spec)
    if (c != ' ') s += c;
  auto open = s.find('(');
  std::string name = s.substr(0, open);
  std::vector<std::size_t> params;
  if (open != std::string::npos) {
    require(s.back() == ')', ErrorCode::BadParams, "missing closing parenthesis in preset '" + spec + "'");
    params = detail::parse_params(s.substr(open + 1, s.size() - open - 2));
  }
  auto need = [&](std::size_t k) {
    require(params.size() == k, ErrorCode::BadParams,
            "preset '" + name + "' expects " + std::to_string(k) + " parameter(s)");
  };
  if (name == "cyclic") {
    need(2);
    return make_cyclic_preset(params[0], params[1]);
  }
  if (name == "dihedral") {
    need(1);
    return make_dihedral_preset(params[0]);
  }
  if (name == "quaternion8") {
    need(0);
    return make_quaternion_preset();
  }
  if (name == "symmetric3") {
    need(0);
    return make_symmetric3_preset();
  }
  if (name == "heisenberg_mod") {
    need(1);
    return make_heisenberg_preset(params[0]);
  }
  fail(ErrorCode::UnknownPreset, "unknown preset '" + spec + "'");
}

/// Module specifications: "Z", "Z_d", "Z^r", "Z_d^r" (trivial action) and
/// "nontrivial" or "nontrivial:k" (the k-th designated module of the preset).
inline GModule build_module(const Preset& preset, const std::string& spec) {
  const FiniteGroup& g = preset.pair.g();
  std::smatch mt;
  static const std::regex trivial_re(R"(Z(?:_(\d+))?(?:\^(\d+))?)");
  static const std::regex designated_re(R"(nontrivial(?::(\d+))?)");
  if (std::regex_match(spec, mt, trivial_re)) {
    Integer modulus = mt[1].matched ? parse_integer(mt[1].str()) : Integer(0);
    require(!mt[1].matched || modulus >= 2, ErrorCode::BadParams, "cyclic module order must be at least 2");
    std::size_t rank = mt[2].matched ? std::stoul(mt[2].str()) : 1;
    require(rank >= 1 && rank <= 16, ErrorCode::BadParams, "module rank must be in 1..16");
    return GModule::trivial(g, FgAbelianGroup::from_moduli(std::vector<Integer>(rank, modulus)));
  }
  if (std::regex_match(spec, mt, designated_re)) {
    std::size_t k = mt[1].matched ? std::stoul(mt[1].str()) : 0;
    require(k < preset.nontrivial_modules.size(), ErrorCode::BadParams,
            "preset has no designated module with index " + std::to_string(k));
    return preset.nontrivial_modules[k].second;
  }
  fail(ErrorCode::BadParams, "unrecognised module specification '" + spec + "'");
}

/// The presets and modules of the default verification battery.
inline std::vector<std::string> battery_presets() {
  return {"cyclic(2,2)", "cyclic(2,4)",   "cyclic(3,3)",       "dihedral(4)",
          "quaternion8", "symmetric3",    "heisenberg_mod(2)", "heisenberg_mod(3)"};
}

inline std::vector<std::string> battery_modules() { return {"Z", "Z_2", "Z_4", "Z_3", "nontrivial"}; }

}  // namespace seventerm
