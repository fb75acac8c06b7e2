#pragma once

#include "seventerm/cochain.hpp"
#include "seventerm/extensions.hpp"
#include "seventerm/subgroups.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace seventerm {

/// Dense indexing of a finite abelian group in standard coordinates
/// (mixed radix over the moduli, first coordinate fastest).
class ElementIndex {
 public:
  ElementIndex() = default;
  ElementIndex(const FgAbelianGroup& a, std::size_t limit) : a_(a) {
    require(a.is_finite(), ErrorCode::InfiniteModule, "concrete constructions need a finite module");
    require(*a.order() <= Integer(limit), ErrorCode::SizeBudgetExceeded, "module too large for a concrete group");
    size_ = static_cast<std::size_t>(*a.order());
    for (const auto& m : a.moduli()) radix_.push_back(static_cast<std::size_t>(m));
  }

  std::size_t size() const noexcept { return size_; }
  const FgAbelianGroup& group() const noexcept { return a_; }

  IntVector element(std::size_t i) const {
    IntVector y(radix_.size());
    for (std::size_t j = 0; j < radix_.size(); ++j) {
      y[j] = Integer(i % radix_[j]);
      i /= radix_[j];
    }
    return y;
  }

  std::size_t index(const IntVector& y) const {
    IntVector r = a_.reduce(y);
    std::size_t i = 0;
    for (std::size_t j = radix_.size(); j-- > 0;) i = i * radix_[j] + static_cast<std::size_t>(r[j]);
    return i;
  }

 private:
  FgAbelianGroup a_;
  std::vector<std::size_t> radix_;
  std::size_t size_ = 1;
};

/// An extension 0 -> M -> E -> G -> 1 of a finite G-module M, with E given by a table.
struct ConcreteExtension {
  GModule m;
  FiniteGroup e;
  ElementIndex elements;                // indexes M
  std::vector<std::size_t> inclusion;   // M index -> E
  std::vector<std::size_t> projection;  // E -> G
  std::vector<std::size_t> kernel_index;  // E -> M index, npos off i(M)

  ConcreteExtension(GModule module, FiniteGroup group, ElementIndex elems, std::vector<std::size_t> incl,
                    std::vector<std::size_t> proj)
      : m(std::move(module)), e(std::move(group)), elements(std::move(elems)), inclusion(std::move(incl)),
        projection(std::move(proj)) {
    kernel_index.assign(e.order(), FiniteGroup::npos);
    for (std::size_t i = 0; i < inclusion.size(); ++i) kernel_index[inclusion[i]] = i;
  }

  const FiniteGroup& base() const { return m.group(); }

  /// The module element x comes from, if x lies in i(M).
  std::optional<IntVector> kernel_element(std::size_t x) const {
    if (kernel_index[x] == FiniteGroup::npos) return std::nullopt;
    return elements.element(kernel_index[x]);
  }

  std::size_t embed(const IntVector& y) const { return inclusion[elements.index(y)]; }
};

/// Checks the defining properties: i injective homomorphism with image ker(p),
/// p a surjective homomorphism, and conjugation realizing the module action.
inline void validate_extension(const ConcreteExtension& x) {
  const FiniteGroup& E = x.e;
  const FiniteGroup& G = x.base();
  require(x.projection.size() == E.order(), ErrorCode::DimensionMismatch, "projection size");
  require(x.inclusion.size() == x.elements.size(), ErrorCode::DimensionMismatch, "inclusion size");
  require(E.order() == x.elements.size() * G.order(), ErrorCode::InvalidInput, "|E| differs from |M| |G|");
  check_group_hom(E, G, x.projection);
  for (std::size_t a = 0; a < x.inclusion.size(); ++a) {
    require(x.projection[x.inclusion[a]] == 0, ErrorCode::InvalidInput, "i(M) is not in the kernel of p");
    for (std::size_t b = 0; b < x.inclusion.size(); ++b) {
      IntVector s = x.m.abelian().add(x.elements.element(a), x.elements.element(b));
      require(E.mul(x.inclusion[a], x.inclusion[b]) == x.inclusion[x.elements.index(s)], ErrorCode::InvalidInput,
              "inclusion is not a homomorphism");
    }
  }
  std::set<std::size_t> image(x.inclusion.begin(), x.inclusion.end());
  require(image.size() == x.inclusion.size(), ErrorCode::InvalidInput, "inclusion is not injective");
  for (std::size_t g : E.generators())
    for (std::size_t a = 0; a < x.inclusion.size(); ++a) {
      IntVector act = x.m.act(x.projection[g], x.elements.element(a));
      require(E.conjugate(g, x.inclusion[a]) == x.embed(act), ErrorCode::InvalidInput,
              "conjugation does not realize the module action");
    }
}

/// E = M x_f G with (m, g)(m', g') = (m + g.m' + f(g, g'), g g'); the pair (m, g)
/// has index idx(m) + |M| g. Without f this is the semidirect product.
inline ConcreteExtension extension_from_cocycle(const GModule& m, const std::optional<Cochain>& f = std::nullopt,
                                                std::size_t order_limit = 4096) {
  const FiniteGroup& G = m.group();
  if (f) {
    require(f->degree == 2 && f->group_order == G.order(), ErrorCode::DimensionMismatch, "expected a 2-cochain on G");
    require(is_normalized(m, *f), ErrorCode::NotACocycle, "factor set must be normalized");
    require(is_cocycle(m, *f), ErrorCode::NotACocycle, "factor set is not a 2-cocycle");
  }
  ElementIndex idx(m.abelian(), order_limit);
  const std::size_t mo = idx.size(), go = G.order(), n = mo * go;
  require(n <= order_limit, ErrorCode::SizeBudgetExceeded, "extension group too large");
  std::vector<IntVector> elems(mo);
  for (std::size_t a = 0; a < mo; ++a) elems[a] = idx.element(a);
  std::vector<std::size_t> add(mo * mo), act(go * mo), fidx(go * go, 0);
  for (std::size_t a = 0; a < mo; ++a)
    for (std::size_t b = 0; b < mo; ++b) add[a * mo + b] = idx.index(m.abelian().add(elems[a], elems[b]));
  for (std::size_t g = 0; g < go; ++g)
    for (std::size_t a = 0; a < mo; ++a) act[g * mo + a] = idx.index(m.act(g, elems[a]));
  if (f)
    for (std::size_t g = 0; g < go; ++g)
      for (std::size_t h = 0; h < go; ++h) fidx[g * go + h] = idx.index((*f)(g, h));
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t a = i % mo, g = i / mo;
    labels[i] = "(" + std::to_string(a) + "," + G.label(g) + ")";
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t b = j % mo, h = j / mo;
      std::size_t v = add[a * mo + act[g * mo + b]];
      v = add[v * mo + fidx[g * go + h]];
      table[i][j] = v + mo * G.mul(g, h);
    }
  }
  std::vector<std::size_t> incl(mo), proj(n);
  for (std::size_t a = 0; a < mo; ++a) incl[a] = a;
  for (std::size_t i = 0; i < n; ++i) proj[i] = i / mo;
  return ConcreteExtension(m, FiniteGroup(table, std::move(labels)), idx, std::move(incl), std::move(proj));
}

/// Section g -> least element of E over g.
inline std::vector<std::size_t> canonical_section(const ConcreteExtension& x) {
  std::vector<std::size_t> s(x.base().order(), FiniteGroup::npos);
  for (std::size_t e = 0; e < x.e.order(); ++e)
    if (s[x.projection[e]] == FiniteGroup::npos) s[x.projection[e]] = e;
  return s;
}

/// f_s with s(g) s(g') = i(f(g, g')) s(g g').
inline Cochain factor_set_of_section(const ConcreteExtension& x, const std::vector<std::size_t>& s) {
  const FiniteGroup& G = x.base();
  const FiniteGroup& E = x.e;
  require(s.size() == G.order(), ErrorCode::SectionInvalid, "section needs one value per group element");
  require(s[0] == 0, ErrorCode::SectionInvalid, "section must send 1 to 1");
  for (std::size_t g = 0; g < G.order(); ++g)
    require(s[g] < E.order() && x.projection[s[g]] == g, ErrorCode::SectionInvalid, "p o s is not the identity");
  Cochain f = Cochain::zero(x.m, 2);
  for (std::size_t g = 0; g < G.order(); ++g)
    for (std::size_t h = 0; h < G.order(); ++h) {
      auto v = x.kernel_element(E.mul3(s[g], s[h], E.inv(s[G.mul(g, h)])));
      require(v.has_value(), ErrorCode::Internal, "factor set value outside i(M)");
      f.at(g, h) = *v;
    }
  return f;
}

inline Cochain factor_set(const ConcreteExtension& x) { return factor_set_of_section(x, canonical_section(x)); }

/// Pull-back along p2 : H -> G: the group {(e, h) : p(e) = p2(h)} with (e, h)
/// indexed by position in the (h, e)-lexicographic enumeration.
inline ConcreteExtension pull_back_extension(const ConcreteExtension& x, const FiniteGroup& h,
                                             const std::vector<std::size_t>& p2) {
  check_group_hom(h, x.base(), p2);
  const FiniteGroup& E = x.e;
  std::vector<std::pair<std::size_t, std::size_t>> elems;  // (e, h)
  std::vector<std::vector<std::size_t>> fibre(x.base().order());
  for (std::size_t e = 0; e < E.order(); ++e) fibre[x.projection[e]].push_back(e);
  for (std::size_t y = 0; y < h.order(); ++y)
    for (std::size_t e : fibre[p2[y]]) elems.push_back({e, y});
  std::vector<std::string> labels;
  for (const auto& [e, y] : elems) labels.push_back("(" + E.label(e) + "," + h.label(y) + ")");
  FiniteGroup group = group_from_elements(
      elems, [&](const auto& a, const auto& b) { return std::pair{E.mul(a.first, b.first), h.mul(a.second, b.second)}; },
      labels);
  std::vector<std::size_t> incl(x.inclusion.size()), proj(elems.size());
  for (std::size_t k = 0; k < elems.size(); ++k) proj[k] = elems[k].second;
  for (std::size_t a = 0; a < incl.size(); ++a)
    incl[a] = static_cast<std::size_t>(std::find(elems.begin(), elems.end(), std::pair{x.inclusion[a], std::size_t{0}}) -
                                       elems.begin());
  return ConcreteExtension(pullback_module(x.m, h, p2), std::move(group), x.elements, std::move(incl), std::move(proj));
}

/// Cocycle form of the pull-back: f o (p2 x p2).
inline Cochain pull_back_cocycle(const Cochain& f, const GModule& m, const FiniteGroup& h,
                                 const std::vector<std::size_t>& p2) {
  return pullback_cochain(f, h.order(), p2, m.abelian(), IntMatrix::identity(m.rank()));
}

inline void check_module_morphism(const GModule& m1, const GModule& m2, const IntMatrix& map) {
  require(m1.group().order() == m2.group().order(), ErrorCode::NotModuleMorphism, "modules over different groups");
  require(is_well_defined_hom(m1.abelian(), m2.abelian(), map), ErrorCode::NotModuleMorphism,
          "map does not respect relations");
  for (std::size_t g : m1.group().generators())
    for (std::size_t j = 0; j < m1.rank(); ++j) {
      IntVector e(m1.rank(), 0);
      e[j] = 1;
      IntVector lhs = apply_hom(m2.abelian(), map, m1.act(g, e));
      IntVector rhs = m2.act(g, apply_hom(m2.abelian(), map, e));
      require(m2.abelian().equal(lhs, rhs), ErrorCode::NotModuleMorphism, "map is not G-equivariant");
    }
}

/// Push-out along i2 : M1 -> M2: the quotient of M2 x| E1 by {(-i2(m1), i1(m1))}.
/// Each coset has exactly one representative (a, s(g)) with s the canonical
/// section of E1; (a, s(g)) gets index idx(a) + |M2| g.
inline ConcreteExtension push_out_extension(const ConcreteExtension& x, const GModule& m2, const IntMatrix& i2,
                                            std::size_t order_limit = 4096) {
  check_module_morphism(x.m, m2, i2);
  const FiniteGroup& G = x.base();
  const FiniteGroup& E = x.e;
  ElementIndex idx(m2.abelian(), order_limit);
  const std::size_t mo = idx.size(), n = mo * G.order();
  require(n <= order_limit, ErrorCode::SizeBudgetExceeded, "push-out group too large");
  auto s = canonical_section(x);
  // (a, y) ~ (a + g.i2(m1), s(g)) where y = s(g) i1(m1)
  auto canonical = [&](const IntVector& a, std::size_t y) {
    const std::size_t g = x.projection[y];
    auto m1 = x.kernel_element(E.mul(E.inv(s[g]), y));
    require(m1.has_value(), ErrorCode::Internal, "fibre element outside the coset of i(M)");
    IntVector shifted = m2.abelian().add(a, m2.act(g, apply_hom(m2.abelian(), i2, *m1)));
    return idx.index(shifted) + mo * g;
  };
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const IntVector a = idx.element(i % mo);
    const std::size_t g = i / mo;
    for (std::size_t j = 0; j < n; ++j) {
      const IntVector b = idx.element(j % mo);
      const std::size_t h = j / mo;
      table[i][j] = canonical(m2.abelian().add(a, m2.act(g, b)), E.mul(s[g], s[h]));
    }
  }
  std::vector<std::size_t> incl(mo), proj(n);
  for (std::size_t a = 0; a < mo; ++a) incl[a] = a;
  for (std::size_t i = 0; i < n; ++i) proj[i] = i / mo;
  return ConcreteExtension(m2, FiniteGroup(table), idx, std::move(incl), std::move(proj));
}

/// Cocycle form of the push-out: i2 o f.
inline Cochain push_out_cocycle(const Cochain& f, const GModule& m2, const IntMatrix& i2) {
  return push_cochain(f, m2.abelian(), i2);
}

// Partial splittings and semi-direct complements over N.

/// A subgroup H of E mapped bijectively onto N by p, as sorted element indices.
using PartialComplement = std::vector<std::size_t>;

inline void check_partial_complement(const ConcreteExtension& x, const NormalPair& pair, const PartialComplement& h) {
  require(is_subgroup(x.e, h), ErrorCode::NotPartiallySplit, "complement is not a subgroup");
  require(h.size() == pair.n().order(), ErrorCode::NotPartiallySplit, "complement has the wrong order");
  std::vector<bool> hit(x.base().order(), false);
  for (std::size_t e : h) {
    const std::size_t g = x.projection[e];
    require(pair.in_n(g) && !hit[g], ErrorCode::NotPartiallySplit, "p does not map the complement onto N");
    hit[g] = true;
  }
}

/// In M x| G: the subgroup {(d(n), n)} of a derivation d on N.
inline PartialComplement sdc_of_derivation(const ConcreteExtension& split, const NormalPair& pair, const Derivation& d) {
  auto s = canonical_section(split);
  PartialComplement h;
  for (std::size_t i = 0; i < pair.n().order(); ++i)
    h.push_back(split.e.mul(split.embed(d.values[i]), s[pair.n_element(i)]));
  std::sort(h.begin(), h.end());
  check_partial_complement(split, pair, h);
  return h;
}

/// Inverse of sdc_of_derivation: d(n) = i^-1(h s0(n)^-1) with s0 the section n -> (0, n).
inline Derivation derivation_of_sdc(const ConcreteExtension& split, const NormalPair& pair, const PartialComplement& h) {
  check_partial_complement(split, pair, h);
  auto s = canonical_section(split);
  Derivation d(1, pair.n().order(), split.m.rank());
  for (std::size_t e : h) {
    const std::size_t n = split.projection[e];
    auto v = split.kernel_element(split.e.mul(e, split.e.inv(s[n])));
    require(v.has_value(), ErrorCode::Internal, "complement element off its fibre");
    d.values[pair.n_index(n)] = *v;
  }
  return d;
}

/// {(h1 + h2, n)}: the complement of the sum of the derivations.
inline PartialComplement sdc_sum(const ConcreteExtension& split, const NormalPair& pair, const PartialComplement& h1,
                                 const PartialComplement& h2) {
  Derivation d = add_cochains(restrict_to_normal(split.m, pair), derivation_of_sdc(split, pair, h1),
                              derivation_of_sdc(split, pair, h2));
  return sdc_of_derivation(split, pair, d);
}

inline PartialComplement conjugate_subgroup(const FiniteGroup& e, std::size_t x, const PartialComplement& h) {
  PartialComplement out;
  for (std::size_t y : h) out.push_back(e.conjugate(x, y));
  std::sort(out.begin(), out.end());
  return out;
}

/// H1 ~ H2 when i(m) H1 i(m)^-1 = H2 for some m in M.
inline bool complements_equivalent(const ConcreteExtension& x, const PartialComplement& h1, const PartialComplement& h2) {
  for (std::size_t m : x.inclusion)
    if (conjugate_subgroup(x.e, m, h1) == h2) return true;
  return false;
}

struct QActionResult {
  std::vector<PartialComplement> conjugates;  // ^{s(alpha(q))} H for each q in Q
  bool is_invariant = true;
};

/// The Q-action ^g H = s(g) H s(g)^-1 on complements up to ~, with s the canonical section.
inline QActionResult q_action_and_invariance(const ConcreteExtension& x, const NormalPair& pair,
                                             const PartialComplement& h) {
  check_partial_complement(x, pair, h);
  auto s = canonical_section(x);
  QActionResult r;
  for (std::size_t q = 0; q < pair.q().order(); ++q) {
    PartialComplement c = conjugate_subgroup(x.e, s[pair.section(q)], h);
    if (!complements_equivalent(x, h, c)) r.is_invariant = false;
    r.conjugates.push_back(std::move(c));
  }
  return r;
}

/// All partial complements over N, by enumerating lifts of the generators of N.
inline std::vector<PartialComplement> partial_complements(const ConcreteExtension& x, const NormalPair& pair) {
  const FiniteGroup& E = x.e;
  std::vector<std::size_t> gens = normal_generators_in_g(pair);
  std::vector<std::vector<std::size_t>> fibres(gens.size());
  for (std::size_t e = 0; e < E.order(); ++e)
    for (std::size_t k = 0; k < gens.size(); ++k)
      if (x.projection[e] == gens[k]) fibres[k].push_back(e);
  std::set<PartialComplement> found;
  std::vector<std::size_t> choice(gens.size(), 0), lifts(gens.size());
  while (true) {
    for (std::size_t k = 0; k < gens.size(); ++k) lifts[k] = fibres[k][choice[k]];
    PartialComplement h = E.generated_subgroup(lifts);
    if (h.size() == pair.n().order()) found.insert(h);
    std::size_t k = 0;
    while (k < gens.size() && ++choice[k] == fibres[k].size()) choice[k++] = 0;
    if (k == gens.size()) break;
  }
  return {found.begin(), found.end()};
}

/// The class of 0 -> M^N -> N_E(H)/H -> Q -> 1 as a factor set over Q with values
/// in M^N coordinates. The section picks the least element of N_E(H) over each q.
inline Cochain omega(const ConcreteExtension& x, const NormalContext& ctx, const PartialComplement& h) {
  const NormalPair& pair = ctx.pair;
  const FiniteGroup& E = x.e;
  require(x.base().order() == pair.g().order(), ErrorCode::DimensionMismatch, "extension over a different group");
  check_partial_complement(x, pair, h);
  std::vector<std::size_t> ne = normalizer(E, h);
  std::vector<bool> covered(pair.g().order(), false);
  for (std::size_t e : ne) covered[x.projection[e]] = true;
  for (bool c : covered)
    require(c, ErrorCode::InvariantViolation, "normalizer of the complement does not map onto G");
  // i(M) meets N_E(H) exactly in i(M^N)
  for (std::size_t a = 0; a < x.inclusion.size(); ++a) {
    const bool in_ne = std::binary_search(ne.begin(), ne.end(), x.inclusion[a]);
    const bool invariant = ctx.inv.subgroup.contains(x.m.abelian(), x.elements.element(a));
    require(in_ne == invariant, ErrorCode::InvariantViolation, "i(M) meets the normalizer outside i(M^N)");
  }
  std::vector<std::size_t> over_n(pair.g().order(), FiniteGroup::npos);  // H element over each n
  for (std::size_t e : h) over_n[x.projection[e]] = e;
  const FiniteGroup& Q = pair.q();
  std::vector<std::size_t> rep(Q.order(), FiniteGroup::npos);
  for (std::size_t e : ne) {
    const std::size_t q = pair.project(x.projection[e]);
    if (rep[q] == FiniteGroup::npos) rep[q] = e;
  }
  Cochain f(2, Q.order(), ctx.inv.module.rank());
  for (std::size_t a = 0; a < Q.order(); ++a)
    for (std::size_t b = 0; b < Q.order(); ++b) {
      const std::size_t y = E.mul3(rep[a], rep[b], E.inv(rep[Q.mul(a, b)]));
      const std::size_t n = x.projection[y];
      auto v = x.kernel_element(E.mul(y, over_n[pair.g().inv(n)]));
      require(v.has_value(), ErrorCode::Internal, "factor set value outside i(M)");
      f.at(a, b) = ctx.to_invariant(*v);
    }
  return f;
}

/// Transgression through the normalizer quotient: omega(M x| G, {(d(n), n)}).
inline Cochain transgression_omega(const NormalContext& ctx, const Derivation& d, std::size_t order_limit = 4096) {
  ConcreteExtension split = extension_from_cocycle(ctx.m, std::nullopt, order_limit);
  return omega(split, ctx, sdc_of_derivation(split, ctx.pair, d));
}

}  // namespace seventerm
