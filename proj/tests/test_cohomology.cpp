#include "oracles.hpp"
#include "seventerm/cohomology.hpp"
#include "seventerm/group_builders.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace seventerm;

namespace {

GModule trivial_module(const FiniteGroup& g, std::vector<Integer> moduli) {
  return GModule::trivial(g, FgAbelianGroup::from_moduli(moduli));
}

/// Z (or Z_m) where each listed generator acts by -1.
GModule sign_module(const FiniteGroup& g, std::vector<std::size_t> gens, std::vector<int> signs, Integer modulus) {
  std::vector<IntMatrix> acts;
  for (int s : signs) acts.push_back(IntMatrix::from_rows({{s}}));
  IntMatrix rel = modulus == 0 ? IntMatrix(1, 0) : IntMatrix::from_rows({{modulus}});
  return GModule::from_generator_action(g, 1, rel, gens, acts);
}

std::vector<Integer> factors(const Cohomology& h) {
  std::vector<Integer> out(h.group().free_rank(), Integer(0));
  for (const auto& d : h.group().invariant_factors()) out.push_back(d);
  return out;
}

using F = std::vector<Integer>;

}  // namespace

TEST(Cohomology, CyclicWithTrivialIntegers) {
  for (std::size_t m : {1, 2, 3, 4, 6}) {
    GModule z = trivial_module(groups::cyclic(m), {0});
    EXPECT_EQ(factors(Cohomology(z, 0)), F{0});
    EXPECT_EQ(factors(Cohomology(z, 1)), F{});
    EXPECT_EQ(factors(Cohomology(z, 2)), m == 1 ? F{} : F{Integer(m)});
    EXPECT_EQ(factors(Cohomology(z, 3)), F{});
  }
}

TEST(Cohomology, CyclicWithTrivialFiniteCoefficients) {
  for (std::size_t m : {2, 4, 6})
    for (long k : {2, 3, 4}) {
      GModule z = trivial_module(groups::cyclic(m), {k});
      Integer d = gcd(Integer(m), Integer(k));
      F expected = d == 1 ? F{} : F{d};
      for (std::size_t n = 1; n <= 3; ++n) EXPECT_EQ(factors(Cohomology(z, n)), expected) << m << " " << k << " " << n;
    }
}

TEST(Cohomology, SignActionOfTwoOnIntegers) {
  GModule z = sign_module(groups::cyclic(2), {1}, {-1}, 0);
  EXPECT_EQ(factors(Cohomology(z, 0)), F{});
  EXPECT_EQ(factors(Cohomology(z, 1)), F{2});
  EXPECT_EQ(factors(Cohomology(z, 2)), F{});
  EXPECT_EQ(factors(Cohomology(z, 3)), F{2});
}

TEST(Cohomology, KleinFourAndQuaternionIntegers) {
  GModule v = trivial_module(groups::direct_product(groups::cyclic(2), groups::cyclic(2)), {0});
  EXPECT_EQ(factors(Cohomology(v, 2)), (F{2, 2}));
  EXPECT_EQ(factors(Cohomology(v, 3)), (F{2}));
  GModule q = trivial_module(groups::quaternion8(), {0});
  EXPECT_EQ(factors(Cohomology(q, 2)), (F{2, 2}));
  EXPECT_EQ(factors(Cohomology(q, 3)), F{});
  GModule s = trivial_module(groups::symmetric(3), {0});
  EXPECT_EQ(factors(Cohomology(s, 2)), F{2});
  EXPECT_EQ(factors(Cohomology(s, 3)), F{});
}

TEST(Cohomology, OrdersMatchEnumerationOracle) {
  std::vector<FiniteGroup> gs = {groups::cyclic(2), groups::cyclic(3), groups::cyclic(4),
                                 groups::direct_product(groups::cyclic(2), groups::cyclic(2))};
  for (const auto& g : gs)
    for (long k : {2, 3, 4}) {
      GModule m = trivial_module(g, {k});
      auto sm = oracle::from_gmodule(m);
      for (std::size_t n = 0; n <= 3; ++n) {
        if (n == 3 && g.order() == 4 && k > 2) continue;
        auto order = Cohomology(m, n).group().order();
        ASSERT_TRUE(order.has_value());
        EXPECT_EQ(*order, Integer(oracle::cohomology_order(sm, n))) << g.order() << " " << k << " " << n;
      }
    }
  // nontrivial action: Z_4 with generator acting by -1, and S3 sign on Z_3
  GModule m4 = sign_module(groups::cyclic(2), {1}, {-1}, 4);
  GModule s3 = sign_module(groups::symmetric(3), {1, 2}, {-1, -1}, 3);
  for (const GModule* m : {&m4, &s3}) {
    auto sm = oracle::from_gmodule(*m);
    for (std::size_t n = 0; n <= 2; ++n)
      EXPECT_EQ(*Cohomology(*m, n).group().order(), Integer(oracle::cohomology_order(sm, n)));
  }
}

TEST(Cohomology, GenericRouteAgreesWithSpecializedRoutes) {
  CohomologyOptions generic;
  generic.method = CohomologyOptions::Method::Generic;
  std::vector<GModule> modules = {
      trivial_module(groups::symmetric(3), {0}),
      sign_module(groups::symmetric(3), {1, 2}, {-1, -1}, 0),
      sign_module(groups::dihedral(4), {1, 4}, {-1, 1}, 0),
      trivial_module(groups::quaternion8(), {4}),
      sign_module(groups::cyclic(4), {1}, {-1}, 8),
  };
  for (const auto& m : modules)
    for (std::size_t n = 1; n <= 2; ++n) {
      Cohomology fast(m, n), slow(m, n, generic);
      EXPECT_EQ(factors(fast), factors(slow));
      for (const auto& z : slow.generators()) EXPECT_TRUE(is_cocycle(m, z));
      // Same subgroup structure: classes of the slow generators span the fast group.
      std::vector<IntVector> images;
      for (const auto& z : slow.generators()) images.push_back(fast.class_of(z));
      Subgroup span = make_subgroup(fast.group(), images);
      EXPECT_EQ(span.group.order(), fast.group().order());
    }
}

TEST(Cohomology, GeneratorsRoundTripAndCoboundariesVanish) {
  std::mt19937 rng(11);
  std::vector<GModule> modules = {
      trivial_module(groups::cyclic(4), {0}),
      trivial_module(groups::dihedral(4), {2}),
      sign_module(groups::cyclic(6), {1}, {-1}, 9),
      trivial_module(groups::heisenberg(2), {4}),
  };
  for (const auto& m : modules)
    for (std::size_t n = 1; n <= 2; ++n) {
      Cohomology h(m, n);
      for (std::size_t i = 0; i < h.rank(); ++i) {
        EXPECT_TRUE(is_normalized(m, h.generator(i)));
        EXPECT_TRUE(is_cocycle(m, h.generator(i)));
        EXPECT_EQ(h.class_of(h.generator(i)), h.group().generator(i));
      }
      // random normalized (n-1)-cochain u: class of z + du equals class of z
      Cochain u = Cochain::zero(m, n - 1);
      std::uniform_int_distribution<int> dist(-5, 5);
      for_each_tuple(m.group().order(), n - 1, [&](std::size_t idx, const std::vector<std::size_t>& t) {
        bool has_identity = false;
        for (auto x : t) has_identity = has_identity || x == 0;
        if (has_identity) return;
        for (auto& v : u.values[idx]) v = dist(rng);
      });
      u = reduce_cochain(m, u);
      Cochain du = coboundary(m, u);
      EXPECT_TRUE(h.group().is_zero(h.class_of(du)));
      auto w = h.bounding_cochain(du);
      ASSERT_TRUE(w.has_value());
      EXPECT_TRUE(cochains_equal(m, coboundary(m, *w), du));
      if (h.rank() > 0) {
        Cochain z = add_cochains(m, h.generator(0), du);
        EXPECT_EQ(h.class_of(z), h.group().generator(0));
        EXPECT_FALSE(h.bounding_cochain(z).has_value() && !h.group().is_zero(h.group().generator(0)));
      }
    }
}

TEST(Cohomology, RejectsNonCocycles) {
  GModule m = trivial_module(groups::cyclic(3), {0});
  Cohomology h(m, 1);
  Cochain c = Cochain::zero(m, 1);
  c.at(1) = {Integer(1)};
  EXPECT_THROW(h.class_of(c), Error);
}

TEST(Cohomology, SizeBudgetIsEnforced) {
  CohomologyOptions tight;
  tight.max_unknowns = 10;
  GModule m = trivial_module(groups::cyclic(5), {0});
  try {
    Cohomology h(m, 2, tight);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SizeBudgetExceeded);
  }
}
