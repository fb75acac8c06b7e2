#pragma once

#include "seventerm/seven_term.hpp"

#include <vector>

namespace seventerm {

/// A morphism from the extension N' -> G' -> Q' to N -> G -> Q given by a group
/// homomorphism phi : G' -> G with phi(N') inside N, together with a module map
/// M -> M' satisfying module_map(phi(g') m) = g' module_map(m).
struct ExtensionMorphism {
  NormalPair source;
  std::vector<std::size_t> phi;
  GModule source_module;
  IntMatrix module_map;
};

struct NaturalityReport {
  bool transgression_commutes = true;
  bool rho_commutes = true;
  std::size_t transgression_checked = 0;
  std::size_t rho_checked = 0;
  bool ok() const { return transgression_commutes && rho_commutes; }
};

/// Builds the morphism with M' = phi^* M and the identity module map.
inline ExtensionMorphism pullback_morphism(const NormalPair& source, const GModule& m,
                                           std::vector<std::size_t> phi) {
  GModule pulled = pullback_module(m, source.g(), phi);
  IntMatrix id = IntMatrix::identity(m.rank());
  return {source, std::move(phi), std::move(pulled), std::move(id)};
}

/// Checks on generators that tr and rho commute with the maps induced by the morphism:
///   infl(qbar) o j o tr  =  tr' o res(phi)      on H^1(N, M)^Q
///   (qbar, res(phi)) o rho  =  rho' o phi^*     on H^2(G, M)_1
inline NaturalityReport check_naturality(const SevenTermSequence& seq, const ExtensionMorphism& mor,
                                         CohomologyOptions options = {}) {
  const NormalPair& tgt = seq.pair();
  const NormalPair& src = mor.source;
  const GModule& m = seq.module();
  const GModule& ms = mor.source_module;
  check_group_hom(src.g(), tgt.g(), mor.phi);
  for (std::size_t n : src.n_elements())
    require(tgt.in_n(mor.phi[n]), ErrorCode::NotAMorphismOfExtensions, "phi does not map N' into N");
  require(ms.group().order() == src.g().order(), ErrorCode::DimensionMismatch, "source module over a different group");
  for (std::size_t g : src.g().generators())
    for (std::size_t j = 0; j < m.rank(); ++j) {
      IntVector e(m.rank(), 0);
      e[j] = 1;
      IntVector lhs = apply_hom(ms.abelian(), mor.module_map, m.act(mor.phi[g], e));
      IntVector rhs = ms.act(g, apply_hom(ms.abelian(), mor.module_map, e));
      require(ms.abelian().equal(lhs, rhs), ErrorCode::NotAMorphismOfExtensions, "module map is not equivariant");
    }

  NormalContext ctx(ms, src);
  FirstCohomologyOfNormal h1n = first_cohomology_of_normal(ms, src, options);
  Cohomology h2n(ctx.m_on_n, 2, options);
  Cohomology h2q(ctx.inv.module, 2, options);
  Cohomology h1qh1n(h1n.q_module, 1, options);

  std::vector<std::size_t> qbar(src.q().order());
  for (std::size_t x = 0; x < qbar.size(); ++x) qbar[x] = tgt.project(mor.phi[src.section(x)]);

  // M^N -> M'^{N'}
  const NormalContext& tc = seq.context();
  IntMatrix j(ctx.inv.module.rank(), tc.inv.module.rank());
  for (std::size_t c = 0; c < tc.inv.module.rank(); ++c) {
    IntVector e(tc.inv.module.rank(), 0);
    e[c] = 1;
    IntVector y = ctx.to_invariant(apply_hom(ms.abelian(), mor.module_map, tc.from_invariant(e)));
    for (std::size_t r = 0; r < y.size(); ++r) j(r, c) = y[r];
  }
  auto restrict_derivation = [&](const Derivation& d) {
    Derivation out(1, src.n().order(), ms.rank());
    for (std::size_t i = 0; i < src.n().order(); ++i)
      out.values[i] = apply_hom(ms.abelian(), mor.module_map, d.values[tgt.n_index(mor.phi[src.n_element(i)])]);
    return out;
  };
  // H^1(N, M) -> H^1(N', M')
  const Cohomology& h1 = *seq.h1_n().h1;
  IntMatrix r(h1n.h1->rank(), h1.rank());
  for (std::size_t c = 0; c < h1.rank(); ++c) {
    IntVector y = h1n.h1->class_of(restrict_derivation(h1.generator(c)));
    for (std::size_t i = 0; i < y.size(); ++i) r(i, c) = y[i];
  }

  NaturalityReport report;
  const Subgroup& inv = seq.h1_n().invariants;
  for (std::size_t c = 0; c < inv.group.rank(); ++c) {
    IntVector cls(inv.inclusion.rows());
    for (std::size_t i = 0; i < cls.size(); ++i) cls[i] = inv.inclusion(i, c);
    Derivation d = h1.representative(cls);
    Cochain left = pullback_cochain(seq.transgression(d), src.q().order(), qbar, ctx.inv.module.abelian(), j);
    Cochain right = transgression(ctx, restrict_derivation(d));
    if (!h2q.group().equal(h2q.class_of(left), h2q.class_of(right))) report.transgression_commutes = false;
    ++report.transgression_checked;
  }
  const Subgroup& ker = seq.h2_g_kernel();
  for (std::size_t c = 0; c < ker.group.rank(); ++c) {
    IntVector cls(ker.inclusion.rows());
    for (std::size_t i = 0; i < cls.size(); ++i) cls[i] = ker.inclusion(i, c);
    Cochain f = seq.h2_g().representative(cls);
    Cochain left = pullback_cochain(seq.rho(f), src.q().order(), qbar, h1n.q_module.abelian(), r);
    Cochain pulled = pullback_cochain(f, src.g().order(), mor.phi, ms.abelian(), mor.module_map);
    Cochain right = rho_cocycle(ctx, h1n, h2n, pulled);
    if (!h1qh1n.group().equal(h1qh1n.class_of(left), h1qh1n.class_of(right))) report.rho_commutes = false;
    ++report.rho_checked;
  }
  return report;
}

}  // namespace seventerm
