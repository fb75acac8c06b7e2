#pragma once

#include "seventerm/concrete_extension.hpp"
#include "seventerm/seven_term.hpp"

#include <map>
#include <vector>

namespace seventerm {

/// The extension 0 -> N/N' -> G/N' -> Q -> 1 with N/N' presented as a Q-module
/// (action by conjugation through the section of Q).
struct AbelianizedExtension {
  NormalPair g_mod_commutator;           // G over N'
  ConcreteExtension extension;           // N/N' inside G/N', over Q
  std::vector<std::size_t> lift_of_std;  // standard generator j of N/N' -> element of N in G
};

inline AbelianizedExtension abelianized_extension(const NormalPair& pair) {
  const FiniteGroup& G = pair.g();
  NormalPair gab(G, commutator_of_normal(pair));
  const FiniteGroup& gb = gab.q();
  // N/N' as elements of G/N'
  std::vector<std::size_t> a_elems;
  {
    std::vector<bool> seen(gb.order(), false);
    for (std::size_t n : pair.n_elements()) {
      std::size_t x = gab.project(n);
      if (!seen[x]) {
        seen[x] = true;
        a_elems.push_back(x);
      }
    }
    std::sort(a_elems.begin(), a_elems.end());
  }
  std::vector<std::size_t> gens;
  std::vector<std::size_t> closure{0};
  for (std::size_t x : a_elems) {
    if (std::binary_search(closure.begin(), closure.end(), x)) continue;
    gens.push_back(x);
    closure = gb.generated_subgroup(gens);
  }
  const std::size_t k = gens.size();
  // coordinates in Z^k by breadth-first search; relations from every edge
  std::map<std::size_t, IntVector> coord{{0, IntVector(k, 0)}};
  std::vector<std::size_t> queue{0};
  std::vector<IntVector> rels;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const std::size_t x = queue[qi];
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t y = gb.mul(x, gens[i]);
      IntVector cy = coord[x];
      cy[i] += 1;
      auto it = coord.find(y);
      if (it == coord.end()) {
        coord.emplace(y, cy);
        queue.push_back(y);
      } else {
        IntVector r(k);
        for (std::size_t j = 0; j < k; ++j) r[j] = cy[j] - it->second[j];
        if (!is_zero_vector(r)) rels.push_back(std::move(r));
      }
    }
  }
  IntMatrix rel = generators_matrix(k, rels);
  // Q acts by conjugation with alpha(q)
  const FiniteGroup& Q = pair.q();
  std::vector<IntMatrix> ambient;
  for (std::size_t q : Q.generators()) {
    const std::size_t s = gab.project(pair.section(q));
    IntMatrix a(k, k);
    for (std::size_t i = 0; i < k; ++i) {
      const IntVector& c = coord.at(gb.conjugate(s, gens[i]));
      for (std::size_t r = 0; r < k; ++r) a(r, i) = c[r];
    }
    ambient.push_back(std::move(a));
  }
  GModule module = GModule::from_generator_action(Q, k, rel, Q.generators(), ambient);
  ElementIndex idx(module.abelian(), 1u << 20);
  std::vector<std::size_t> incl(idx.size(), FiniteGroup::npos);
  for (const auto& [x, c] : coord) incl[idx.index(module.abelian().to_standard(c))] = x;
  std::vector<std::size_t> proj(gb.order());
  for (std::size_t x = 0; x < gb.order(); ++x) proj[x] = pair.project(gab.section(x));
  std::vector<std::size_t> lifts;
  for (std::size_t j = 0; j < module.rank(); ++j) {
    const std::size_t x = incl[idx.index(module.abelian().generator(j))];
    lifts.push_back(gab.section(x));
  }
  ConcreteExtension ext(std::move(module), gb, std::move(idx), std::move(incl), std::move(proj));
  validate_extension(ext);
  return {std::move(gab), std::move(ext), std::move(lifts)};
}

struct PushforwardComparison {
  IntVector transgression;  // class of tr[d] in H^2(Q, M^N)
  IntVector pushout;        // class of d_*[eps]
  bool holds = false;       // tr[d] = -d_*[eps]
};

/// For M = M^N and d : N -> M a homomorphism with Q-invariant class, compares
/// tr[d] (eta route) with the push-out of eps along d.
inline PushforwardComparison abelianized_pushforward_check(const SevenTermSequence& seq, const Derivation& d) {
  const NormalContext& ctx = seq.context();
  const GModule& m = ctx.m;
  for (std::size_t n : normal_generators_in_g(ctx.pair))
    require(homs_equal(m.abelian(), m.action(n), IntMatrix::identity(m.rank())), ErrorCode::ModuleNotNInvariant,
            "module is not N-invariant");
  AbelianizedExtension eps = abelianized_extension(ctx.pair);
  const GModule& a = eps.extension.m;
  // d factors through N/N'; columns are the images of the standard generators
  IntMatrix i2(ctx.inv.module.rank(), a.rank());
  for (std::size_t j = 0; j < a.rank(); ++j) {
    IntVector y = ctx.to_invariant(d.values[ctx.pair.n_index(eps.lift_of_std[j])]);
    for (std::size_t r = 0; r < y.size(); ++r) i2(r, j) = y[r];
  }
  for (std::size_t n : ctx.pair.n_elements()) {
    const std::size_t x = eps.g_mod_commutator.project(n);
    const std::size_t ai = eps.extension.kernel_index[x];
    IntVector via = apply_hom(ctx.inv.module.abelian(), i2, eps.extension.elements.element(ai));
    require(ctx.inv.module.abelian().equal(via, ctx.to_invariant(d.values[ctx.pair.n_index(n)])),
            ErrorCode::NotAMorphismOfExtensions, "d does not factor through N/N'");
  }
  ConcreteExtension pushed = push_out_extension(eps.extension, ctx.inv.module, i2, 1u << 16);
  const Cohomology& h2q = seq.h2_q();
  PushforwardComparison r;
  r.transgression = h2q.class_of(seq.transgression(d));
  r.pushout = h2q.class_of(factor_set(pushed));
  r.holds = h2q.group().is_zero(h2q.group().add(r.transgression, r.pushout));
  return r;
}

}  // namespace seventerm
