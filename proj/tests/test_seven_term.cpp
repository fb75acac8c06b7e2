#include "seventerm/presets.hpp"
#include "seventerm/abelianized.hpp"
#include "seventerm/naturality.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>

using namespace seventerm;

namespace {

SevenTermSequence make_sequence(const std::string& preset, const std::string& module) {
  Preset p = build_preset(preset);
  return SevenTermSequence(build_module(p, module), p.pair);
}

IntVector random_element(const FgAbelianGroup& a, std::mt19937& rng) {
  std::uniform_int_distribution<long> dist(-6, 6);
  IntVector v(a.rank());
  for (auto& x : v) x = dist(rng);
  return a.reduce(v);
}

Cochain random_cochain(const GModule& m, std::size_t degree, std::mt19937& rng) {
  Cochain c = Cochain::zero(m, degree);
  for (auto& v : c.values) v = random_element(m.abelian(), rng);
  return c;
}

}  // namespace

TEST(SevenTerm, ExactOnSmallCases) {
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"cyclic(2,2)", "Z_2"},     {"cyclic(2,2)", "Z"},        {"cyclic(2,4)", "nontrivial"},
      {"dihedral(4)", "Z"},       {"dihedral(4)", "nontrivial"}, {"quaternion8", "Z_2"},
      {"symmetric3", "Z_3"},      {"heisenberg_mod(2)", "Z_2"}};
  for (const auto& [preset, module] : cases) {
    SCOPED_TRACE(preset + " / " + module);
    auto seq = make_sequence(preset, module);
    auto report = seq.verify_exactness();
    EXPECT_TRUE(report.inflation_injective);
    EXPECT_TRUE(report.inflation_lands_in_kernel);
    for (const auto& j : report.joints) EXPECT_TRUE(j.exact) << j.name;
  }
}

TEST(SevenTerm, KnownGroupsForKleinFour) {
  // G = Z_4, N = <2>, M = Z_2: H^1(Q, Z_2) = Z_2, H^1(G) = Z_2, H^1(N)^Q = Z_2,
  // H^2(Q) = Z_2, H^2(G) = Z_2 and restriction to N kills it.
  auto seq = make_sequence("cyclic(2,2)", "Z_2");
  auto gs = seq.groups();
  EXPECT_EQ(describe_group(gs[0]), "Z_2");
  EXPECT_EQ(describe_group(gs[1]), "Z_2");
  EXPECT_EQ(describe_group(gs[2]), "Z_2");
  EXPECT_EQ(describe_group(gs[3]), "Z_2");
  // tr is onto here since inflation H^1(Q) -> H^1(G) is onto
  EXPECT_FALSE(homs_equal(gs[3], seq.matrices()[2], IntMatrix(gs[3].rank(), gs[2].rank())));
}

TEST(SevenTerm, TransgressionRoutesAgree) {
  for (const auto& [preset, module] : std::vector<std::pair<std::string, std::string>>{
           {"cyclic(2,2)", "Z_2"}, {"cyclic(2,4)", "Z_4"}, {"dihedral(4)", "Z_2"},
           {"quaternion8", "Z_4"}, {"heisenberg_mod(2)", "Z_2"}, {"cyclic(3,3)", "nontrivial"}}) {
    SCOPED_TRACE(preset + " / " + module);
    auto seq = make_sequence(preset, module);
    const auto& inv = seq.h1_n().invariants;
    for (std::size_t j = 0; j < inv.group.rank(); ++j) {
      IntVector cls(inv.inclusion.rows());
      for (std::size_t i = 0; i < cls.size(); ++i) cls[i] = inv.inclusion(i, j);
      Derivation d = seq.h1_n().h1->representative(cls);
      auto a = seq.h2_q().class_of(seq.transgression(d, TransgressionRoute::Eta));
      auto b = seq.h2_q().class_of(seq.transgression(d, TransgressionRoute::Normalizer));
      auto c = seq.h2_q().class_of(seq.transgression(d, TransgressionRoute::Omega));
      EXPECT_TRUE(seq.h2_q().group().equal(a, b));
      EXPECT_TRUE(seq.h2_q().group().equal(a, c));
    }
  }
}

TEST(SevenTerm, TransgressionIsMinusPushoutOfAbelianizedExtension) {
  for (const auto& [preset, module] : std::vector<std::pair<std::string, std::string>>{
           {"cyclic(2,2)", "Z_2"}, {"cyclic(2,4)", "Z_4"}, {"quaternion8", "Z_2"},
           {"heisenberg_mod(2)", "Z_4"}, {"heisenberg_mod(3)", "Z_3"}, {"symmetric3", "Z_3"}}) {
    SCOPED_TRACE(preset + " / " + module);
    auto seq = make_sequence(preset, module);
    const auto& inv = seq.h1_n().invariants;
    for (std::size_t j = 0; j < inv.group.rank(); ++j) {
      IntVector cls(inv.inclusion.rows());
      for (std::size_t i = 0; i < cls.size(); ++i) cls[i] = inv.inclusion(i, j);
      Derivation d = seq.h1_n().h1->representative(cls);
      EXPECT_TRUE(abelianized_pushforward_check(seq, d).holds);
    }
  }
}

TEST(SevenTerm, SplitExtensionsHaveZeroTransgressionAndLambda) {
  for (const auto& [preset, module] : std::vector<std::pair<std::string, std::string>>{
           {"dihedral(4)", "Z_2"}, {"dihedral(4)", "Z"}, {"symmetric3", "Z_3"}, {"symmetric3", "Z_2"}}) {
    SCOPED_TRACE(preset + " / " + module);
    auto seq = make_sequence(preset, module);
    auto ms = seq.matrices();
    auto gs = seq.groups();
    EXPECT_TRUE(homs_equal(gs[3], ms[2], IntMatrix(gs[3].rank(), gs[2].rank())));
    EXPECT_TRUE(homs_equal(gs[6], ms[5], IntMatrix(gs[6].rank(), gs[5].rank())));
  }
}

TEST(SevenTerm, RhoIgnoresCoboundaryReshuffles) {
  std::mt19937 rng(7);
  for (const auto& [preset, module] : std::vector<std::pair<std::string, std::string>>{
           {"cyclic(2,2)", "Z_2"}, {"heisenberg_mod(2)", "Z_2"}, {"dihedral(4)", "nontrivial"}}) {
    SCOPED_TRACE(preset + " / " + module);
    auto seq = make_sequence(preset, module);
    const auto& k = seq.h2_g_kernel();
    const GModule& m = seq.module();
    for (std::size_t j = 0; j < k.group.rank(); ++j) {
      IntVector cls(k.inclusion.rows());
      for (std::size_t i = 0; i < cls.size(); ++i) cls[i] = k.inclusion(i, j);
      Cochain f = seq.h2_g().representative(cls);
      auto base = seq.h1_q_h1_n().class_of(seq.rho(f));
      for (int trial = 0; trial < 5; ++trial) {
        Cochain g = add_cochains(m, f, coboundary(m, random_cochain(m, 1, rng)));
        auto other = seq.h1_q_h1_n().class_of(seq.rho(g));
        EXPECT_TRUE(seq.h1_q_h1_n().group().equal(base, other));
      }
    }
  }
}

TEST(SevenTerm, LambdaIgnoresSectionPerturbations) {
  std::mt19937 rng(11);
  for (const auto& [preset, module] : std::vector<std::pair<std::string, std::string>>{
           {"cyclic(2,2)", "Z_2"}, {"quaternion8", "Z_2"}, {"heisenberg_mod(2)", "Z_2"}}) {
    SCOPED_TRACE(preset + " / " + module);
    auto seq = make_sequence(preset, module);
    const auto& h = seq.h1_q_h1_n();
    const GModule& m = seq.module();
    for (std::size_t j = 0; j < h.rank(); ++j) {
      Cochain D = h.generator(j);
      auto base = seq.h3_q().class_of(seq.lambda(D));
      for (int trial = 0; trial < 5; ++trial) {
        std::map<IntVector, IntVector> shift;
        auto s0 = seq.default_section();
        DerivationSection s = [&](const IntVector& c) {
          auto it = shift.find(c);
          if (it == shift.end()) it = shift.emplace(c, random_element(m.abelian(), rng)).first;
          Derivation d = s0(c);
          return add_cochains(seq.context().m_on_n, d, inner_derivation(m, seq.pair(), it->second));
        };
        Cochain c = seq.lambda(D, s);
        EXPECT_TRUE(is_cocycle(seq.context().inv.module, c));
        EXPECT_TRUE(seq.h3_q().group().equal(base, seq.h3_q().class_of(c)));
      }
    }
  }
}

TEST(SevenTerm, MapsAreHomomorphismsOnCocycles) {
  std::mt19937 rng(3);
  auto seq = make_sequence("heisenberg_mod(2)", "Z_4");
  const auto& h = seq.h1_q_h1_n();
  for (int trial = 0; trial < 10; ++trial) {
    IntVector a = random_element(h.group(), rng), b = random_element(h.group(), rng);
    Cochain da = h.representative(a), db = h.representative(b);
    Cochain dab = add_cochains(h.module(), da, db);
    auto la = seq.h3_q().class_of(seq.lambda(da));
    auto lb = seq.h3_q().class_of(seq.lambda(db));
    auto lab = seq.h3_q().class_of(seq.lambda(dab));
    EXPECT_TRUE(seq.h3_q().group().equal(seq.h3_q().group().add(la, lb), lab));
  }
}

TEST(SevenTerm, NaturalityForCyclicReduction) {
  Preset big = build_preset("cyclic(2,4)");
  Preset small = build_preset("cyclic(2,2)");
  SevenTermSequence seq(build_module(small, "Z_2"), small.pair);
  std::vector<std::size_t> phi(8);
  for (std::size_t x = 0; x < 8; ++x) phi[x] = x % 4;
  auto report = check_naturality(seq, pullback_morphism(big.pair, seq.module(), phi));
  EXPECT_TRUE(report.ok());
  EXPECT_GT(report.transgression_checked + report.rho_checked, 0u);
}

TEST(SevenTerm, NaturalityForHeisenbergReduction) {
  Preset big = build_preset("heisenberg_mod(4)");
  Preset small = build_preset("heisenberg_mod(2)");
  SevenTermSequence seq(build_module(small, "Z_2"), small.pair);
  std::vector<std::size_t> phi(64);
  for (std::size_t x = 0; x < 64; ++x) phi[x] = (x % 4) % 2 + 2 * ((x / 4) % 4 % 2) + 4 * ((x / 16) % 2);
  auto report = check_naturality(seq, pullback_morphism(big.pair, seq.module(), phi));
  EXPECT_TRUE(report.ok());
  EXPECT_GT(report.transgression_checked, 0u);
  EXPECT_GT(report.rho_checked, 0u);
}

TEST(SevenTerm, NaturalityRejectsMapsOutsideTheNormalSubgroup) {
  Preset p = build_preset("cyclic(2,2)");
  SevenTermSequence seq(build_module(p, "Z_2"), p.pair);
  Preset src = build_preset("cyclic(4,1)");  // N' = G' = Z_4
  std::vector<std::size_t> phi = {0, 1, 2, 3};
  EXPECT_THROW(check_naturality(seq, pullback_morphism(src.pair, seq.module(), phi)), Error);
}

TEST(SevenTerm, PushforwardComparisonIsSignSensitive) {
  auto seq = make_sequence("heisenberg_mod(3)", "Z_3");
  const auto& inv = seq.h1_n().invariants;
  ASSERT_EQ(inv.group.rank(), 1u);
  IntVector cls(inv.inclusion.rows());
  for (std::size_t i = 0; i < cls.size(); ++i) cls[i] = inv.inclusion(i, 0);
  auto r = abelianized_pushforward_check(seq, seq.h1_n().h1->representative(cls));
  EXPECT_TRUE(r.holds);
  // the class has order 3, so tr[d] = +d_*[eps] would fail
  EXPECT_FALSE(seq.h2_q().group().equal(r.transgression, r.pushout));
  Derivation zero(1, seq.pair().n().order(), seq.module().rank());
  auto z = abelianized_pushforward_check(seq, zero);
  EXPECT_TRUE(z.holds);
  EXPECT_TRUE(seq.h2_q().group().is_zero(z.transgression));
  EXPECT_TRUE(seq.h2_q().group().is_zero(z.pushout));
}
