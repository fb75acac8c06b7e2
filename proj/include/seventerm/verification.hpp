#pragma once

#include "seventerm/abelianized.hpp"
#include "seventerm/naturality.hpp"
#include "seventerm/presets.hpp"
#include "seventerm/seven_term.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace seventerm {

/// Pass/fail counts of one property over a battery, with failure descriptions.
struct CheckTally {
  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::vector<std::string> failures;

  void record(bool ok, const std::string& where) {
    if (ok) {
      ++passed;
    } else {
      ++failed;
      failures.push_back(where);
    }
  }
  bool ok() const { return failed == 0; }
};

struct VerifyOptions {
  std::size_t trials = 20;
  std::uint64_t seed = 1;
  CohomologyOptions cohomology;
};

struct CaseResult {
  std::string preset;
  std::string module;
  ExactnessReport exactness;
  std::vector<FgAbelianGroup> groups;
};

struct VerifyReport {
  VerifyOptions options;
  std::vector<CaseResult> cases;
  std::vector<CheckTally> checks;
  bool ok() const {
    for (const auto& c : cases)
      if (!c.exactness.all_exact()) return false;
    for (const auto& t : checks)
      if (!t.ok()) return false;
    return true;
  }
};

namespace verify_detail {

inline IntVector column(const IntMatrix& a, std::size_t j) {
  IntVector v(a.rows());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a(i, j);
  return v;
}

inline IntVector random_element(const FgAbelianGroup& a, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(-12, 12);
  IntVector v(a.rank());
  for (auto& x : v) x = dist(rng);
  return a.reduce(v);
}

inline Cochain random_normalized_cochain(const GModule& m, std::size_t degree, std::mt19937_64& rng) {
  Cochain c = Cochain::zero(m, degree);
  for_each_tuple(m.group().order(), degree, [&](std::size_t idx, const std::vector<std::size_t>& t) {
    bool has_identity = false;
    for (std::size_t x : t) has_identity = has_identity || x == 0;
    if (!has_identity) c.values[idx] = random_element(m.abelian(), rng);
  });
  return c;
}

inline bool module_is_n_invariant(const NormalContext& ctx) {
  for (std::size_t n : normal_generators_in_g(ctx.pair))
    if (!homs_equal(ctx.m.abelian(), ctx.m.action(n), IntMatrix::identity(ctx.m.rank()))) return false;
  return true;
}

inline bool section_is_homomorphism(const NormalPair& pair) {
  for (std::size_t a = 0; a < pair.q().order(); ++a)
    for (std::size_t b = 0; b < pair.q().order(); ++b)
      if (pair.factor_set(a, b) != 0) return false;
  return true;
}

inline std::vector<Derivation> invariant_generators(const SevenTermSequence& seq) {
  std::vector<Derivation> out;
  const Subgroup& inv = seq.h1_n().invariants;
  for (std::size_t j = 0; j < inv.group.rank(); ++j) out.push_back(seq.h1_n().h1->representative(column(inv.inclusion, j)));
  return out;
}

inline std::vector<Cochain> kernel_generators_h2(const SevenTermSequence& seq) {
  std::vector<Cochain> out;
  const Subgroup& k = seq.h2_g_kernel();
  for (std::size_t j = 0; j < k.group.rank(); ++j) out.push_back(seq.h2_g().representative(column(k.inclusion, j)));
  return out;
}

}  // namespace verify_detail

/// Names of the properties checked per case, in report order.
inline std::vector<std::string> verify_check_names() {
  return {"transgression_routes_agree", "abelianized_pushforward",     "split_case_vanishing", "rho_reshuffle_invariance",
          "lambda_section_invariance",  "lambda_cocycle",       "additivity",           "naturality"};
}

/// Runs every per-case property on one sequence. `tallies` is indexed like verify_check_names().
inline void check_sequence_properties(const SevenTermSequence& seq, const std::string& where, std::size_t trials,
                                      std::mt19937_64& rng, std::vector<CheckTally>& tallies) {
  using namespace verify_detail;
  const NormalContext& ctx = seq.context();
  const bool finite = ctx.m.abelian().is_finite();
  const Cohomology& h2q = seq.h2_q();
  auto inv_gens = invariant_generators(seq);

  // tr routes
  if (finite)
    for (std::size_t j = 0; j < inv_gens.size(); ++j) {
      auto a = h2q.class_of(seq.transgression(inv_gens[j], TransgressionRoute::Eta));
      auto b = h2q.class_of(seq.transgression(inv_gens[j], TransgressionRoute::Normalizer));
      auto c = h2q.class_of(seq.transgression(inv_gens[j], TransgressionRoute::Omega));
      tallies[0].record(h2q.group().equal(a, b) && h2q.group().equal(a, c), where + " generator " + std::to_string(j));
    }

  // tr against the push-out of the abelianized extension
  if (module_is_n_invariant(ctx))
    for (std::size_t j = 0; j < inv_gens.size(); ++j)
      tallies[1].record(abelianized_pushforward_check(seq, inv_gens[j]).holds, where + " generator " + std::to_string(j));

  // split case
  if (module_is_n_invariant(ctx) && section_is_homomorphism(ctx.pair)) {
    auto gs = seq.groups();
    auto ms = seq.matrices();
    tallies[2].record(homs_equal(gs[3], ms[2], IntMatrix(gs[3].rank(), gs[2].rank())), where + " tr");
    tallies[2].record(homs_equal(gs[6], ms[5], IntMatrix(gs[6].rank(), gs[5].rank())), where + " lambda");
  }

  // rho under f -> f + delta v
  const Cohomology& h1qh1n = seq.h1_q_h1_n();
  for (const auto& f : kernel_generators_h2(seq)) {
    auto base = h1qh1n.class_of(seq.rho(f));
    for (std::size_t t = 0; t < trials; ++t) {
      Cochain g = add_cochains(ctx.m, f, coboundary(ctx.m, random_normalized_cochain(ctx.m, 1, rng)));
      tallies[3].record(h1qh1n.group().equal(base, h1qh1n.class_of(seq.rho(g))), where + " trial " + std::to_string(t));
    }
  }

  // lambda under section perturbation, and the cocycle condition
  for (std::size_t j = 0; j < h1qh1n.rank(); ++j) {
    Cochain D = h1qh1n.generator(j);
    Cochain c0 = seq.lambda(D);
    tallies[5].record(is_cocycle(ctx.inv.module, c0), where + " generator " + std::to_string(j));
    auto base = seq.h3_q().class_of(c0);
    for (std::size_t t = 0; t < trials; ++t) {
      std::map<IntVector, IntVector> shift;
      auto s0 = seq.default_section();
      DerivationSection s = [&](const IntVector& c) {
        auto it = shift.find(c);
        if (it == shift.end()) it = shift.emplace(c, random_element(ctx.m.abelian(), rng)).first;
        return add_cochains(ctx.m_on_n, s0(c), inner_derivation(ctx.m, ctx.pair, it->second));
      };
      Cochain c = seq.lambda(D, s);
      tallies[5].record(is_cocycle(ctx.inv.module, c), where + " trial " + std::to_string(t));
      tallies[4].record(seq.h3_q().group().equal(base, seq.h3_q().class_of(c)), where + " trial " + std::to_string(t));
    }
  }

  // tr and rho are additive on generator pairs
  for (std::size_t a = 0; a < inv_gens.size(); ++a)
    for (std::size_t b = a; b < inv_gens.size(); ++b) {
      auto lhs = h2q.class_of(seq.transgression(add_cochains(ctx.m_on_n, inv_gens[a], inv_gens[b])));
      auto rhs = h2q.group().add(h2q.class_of(seq.transgression(inv_gens[a])), h2q.class_of(seq.transgression(inv_gens[b])));
      tallies[6].record(h2q.group().equal(lhs, rhs), where + " tr pair");
    }
  auto kg = kernel_generators_h2(seq);
  for (std::size_t a = 0; a < kg.size(); ++a)
    for (std::size_t b = a; b < kg.size(); ++b) {
      auto lhs = h1qh1n.class_of(seq.rho(add_cochains(ctx.m, kg[a], kg[b])));
      auto rhs = h1qh1n.group().add(h1qh1n.class_of(seq.rho(kg[a])), h1qh1n.class_of(seq.rho(kg[b])));
      tallies[6].record(h1qh1n.group().equal(lhs, rhs), where + " rho pair");
    }
}

/// Reduction maps used for the naturality checks: Z_8 -> Z_4 on cyclic(2,4) -> cyclic(2,2)
/// and entrywise reduction heisenberg_mod(4) -> heisenberg_mod(2).
inline void check_default_naturality(CheckTally& tally, CohomologyOptions options = {}) {
  {
    Preset big = build_preset("cyclic(2,4)"), small = build_preset("cyclic(2,2)");
    SevenTermSequence seq(build_module(small, "Z_2"), small.pair, {options});
    std::vector<std::size_t> phi(8);
    for (std::size_t x = 0; x < 8; ++x) phi[x] = x % 4;
    auto r = check_naturality(seq, pullback_morphism(big.pair, seq.module(), phi), options);
    tally.record(r.transgression_commutes, "cyclic(2,4) -> cyclic(2,2) tr square");
    tally.record(r.rho_commutes, "cyclic(2,4) -> cyclic(2,2) rho square");
  }
  {
    Preset big = build_preset("heisenberg_mod(4)"), small = build_preset("heisenberg_mod(2)");
    SevenTermSequence seq(build_module(small, "Z_2"), small.pair, {options});
    std::vector<std::size_t> phi(64);
    for (std::size_t x = 0; x < 64; ++x) phi[x] = (x % 4) % 2 + 2 * ((x / 4) % 2) + 4 * ((x / 16) % 2);
    auto r = check_naturality(seq, pullback_morphism(big.pair, seq.module(), phi), options);
    tally.record(r.transgression_commutes, "heisenberg_mod(4) -> heisenberg_mod(2) tr square");
    tally.record(r.rho_commutes, "heisenberg_mod(4) -> heisenberg_mod(2) rho square");
  }
}

/// The default battery: every preset x module pair, exactness plus all properties.
inline VerifyReport run_default_battery(const VerifyOptions& options) {
  VerifyReport report;
  report.options = options;
  for (const auto& name : verify_check_names()) report.checks.push_back(CheckTally{name, 0, 0, {}});
  std::size_t case_index = 0;
  for (const auto& preset_name : battery_presets()) {
    Preset preset = build_preset(preset_name);
    for (const auto& module_name : battery_modules()) {
      std::seed_seq seq_seed{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                             static_cast<std::uint32_t>(case_index++)};
      std::mt19937_64 rng(seq_seed);
      SevenTermSequence seq(build_module(preset, module_name), preset.pair, {options.cohomology});
      report.cases.push_back({preset_name, module_name, seq.verify_exactness(), seq.groups()});
      check_sequence_properties(seq, preset_name + " / " + module_name, options.trials, rng, report.checks);
    }
  }
  check_default_naturality(report.checks[7], options.cohomology);
  return report;
}

}  // namespace seventerm
