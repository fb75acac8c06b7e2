#pragma once

#include "seventerm/cohomology.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace seventerm {

/// Derivation N -> M stored as a 1-cochain over pair.n().
using Derivation = Cochain;

/// (^g d)(n) = g . d(g^-1 n g) for g in G and a derivation d on N.
inline Derivation conjugate_derivation(const GModule& m, const NormalPair& pair, std::size_t g, const Derivation& d) {
  const FiniteGroup& G = pair.g();
  Derivation out(1, pair.n().order(), m.rank());
  const std::size_t ginv = G.inv(g);
  for (std::size_t i = 0; i < pair.n().order(); ++i) {
    std::size_t n = pair.n_element(i);
    std::size_t inner = pair.n_index(G.mul3(ginv, n, g));
    out.values[i] = m.act(g, d.values[inner]);
  }
  return out;
}

/// Inner derivation n -> n.x - x.
inline Derivation inner_derivation(const GModule& m, const NormalPair& pair, const IntVector& x) {
  Derivation out(1, pair.n().order(), m.rank());
  for (std::size_t i = 0; i < pair.n().order(); ++i)
    out.values[i] = m.abelian().subtract(m.act(pair.n_element(i), x), x);
  return out;
}

/// Solves (n - 1) x = b(n) for x in M simultaneously over a list of elements n of G.
class FixedPointEquation {
 public:
  FixedPointEquation(const GModule& m, std::vector<std::size_t> elements)
      : a_(m.abelian()), elems_(std::move(elements)) {
    const std::size_t k = m.rank();
    IntMatrix a(k * elems_.size(), k);
    std::vector<Integer> row_mods;
    for (std::size_t e = 0; e < elems_.size(); ++e)
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) a(e * k + i, j) = m.action(elems_[e])(i, j) - (i == j ? 1 : 0);
        row_mods.push_back(m.moduli()[i]);
      }
    if (!elems_.empty() && k > 0) solver_ = std::make_shared<LinearSolver>(a, diagonal_relations(row_mods));
  }

  const std::vector<std::size_t>& elements() const noexcept { return elems_; }

  /// rhs[e] is b(elements[e]).
  std::optional<IntVector> solve(const std::vector<IntVector>& rhs) const {
    require(rhs.size() == elems_.size(), ErrorCode::DimensionMismatch, "one right-hand side per element");
    if (!solver_) {
      for (const auto& b : rhs)
        if (!a_.is_zero(b)) return std::nullopt;
      return a_.zero();
    }
    IntVector b;
    for (const auto& v : rhs) b.insert(b.end(), v.begin(), v.end());
    auto x = solver_->solve(b);
    if (!x) return std::nullopt;
    return a_.reduce(*x);
  }

 private:
  FgAbelianGroup a_;
  std::vector<std::size_t> elems_;
  std::shared_ptr<LinearSolver> solver_;
};

/// Der(G, M) as the kernel of the coboundary on 1-cochains, Inn(G, M) as the
/// image of the coboundary on M inside it, and H^1(G, M).
struct DerivationGroups {
  Subgroup der;                         // inside the group of normalized 1-cochains
  std::vector<Derivation> generators;   // one derivation per standard generator of der.group
  Subgroup inn;                         // inside der.group
  std::shared_ptr<Cohomology> h1;
};

namespace detail {

/// Normalized 1-cochains as a direct sum of |G| - 1 copies of M (coordinates
/// of g at position (g - 1) * rank).
inline FgAbelianGroup one_cochain_group(const GModule& m) {
  std::vector<Integer> moduli;
  for (std::size_t g = 1; g < m.group().order(); ++g)
    for (const auto& d : m.abelian().moduli()) moduli.push_back(d);
  return FgAbelianGroup::from_moduli(moduli);
}

inline IntVector flatten_one_cochain(const Cochain& c) {
  IntVector out;
  for (std::size_t g = 1; g < c.values.size(); ++g)
    for (const auto& v : c.values[g]) out.push_back(v);
  return out;
}

inline Cochain unflatten_one_cochain(const GModule& m, const IntVector& x) {
  Cochain c = Cochain::zero(m, 1);
  const std::size_t r = m.rank();
  for (std::size_t g = 1; g < c.values.size(); ++g)
    for (std::size_t j = 0; j < r; ++j) c.values[g][j] = x[(g - 1) * r + j];
  return reduce_cochain(m, c);
}

}  // namespace detail

inline DerivationGroups derivation_groups(const GModule& m, CohomologyOptions options = {}) {
  const std::size_t go = m.group().order(), r = m.rank();
  const FgAbelianGroup c1 = detail::one_cochain_group(m);
  // Derivation law on generators suffices: d(gh) = d(g) + g.d(h) for g a generator.
  std::vector<std::size_t> gens = m.group().generators();
  std::vector<Integer> target_moduli;
  for (std::size_t k = 0; k < gens.size() * go; ++k)
    for (const auto& d : m.abelian().moduli()) target_moduli.push_back(d);
  const FgAbelianGroup c2 = FgAbelianGroup::from_moduli(target_moduli);
  IntMatrix law(c2.rank(), c1.rank());
  for (std::size_t h = 1; h < go; ++h)
    for (std::size_t j = 0; j < r; ++j) {
      Cochain e = Cochain::zero(m, 1);
      e.values[h][j] = 1;
      std::size_t row = 0;
      for (std::size_t g : gens)
        for (std::size_t x = 0; x < go; ++x, row += r) {
          IntVector v = m.abelian().subtract(m.abelian().add(e.values[g], m.act(g, e.values[x])),
                                             e.values[m.group().mul(g, x)]);
          for (std::size_t i = 0; i < r; ++i) law(row + i, (h - 1) * r + j) = v[i];
        }
    }
  DerivationGroups out;
  out.der = kernel_subgroup(c1, c2, law);
  for (std::size_t k = 0; k < out.der.group.rank(); ++k) {
    IntVector x = apply_hom(c1, out.der.inclusion, out.der.group.generator(k));
    out.generators.push_back(detail::unflatten_one_cochain(m, x));
  }
  std::vector<IntVector> inner;
  for (std::size_t j = 0; j < r; ++j) {
    IntVector y = out.der.coordinates(c1, detail::flatten_one_cochain(coboundary(m, [&] {
                                        Cochain z = Cochain::zero(m, 0);
                                        z.values[0] = m.abelian().generator(j);
                                        return z;
                                      }())))
                      .value();
    inner.push_back(std::move(y));
  }
  out.inn = make_subgroup(out.der.group, std::move(inner));
  out.h1 = std::make_shared<Cohomology>(m, 1, options);
  return out;
}

inline std::vector<std::size_t> normal_generators_in_g(const NormalPair& pair) {
  std::vector<std::size_t> out;
  for (std::size_t i : pair.n().generators()) out.push_back(pair.n_element(i));
  return out;
}

/// H^1(N, M) with the Q-action [d] -> [^alpha(q) d], as a Q-module.
struct FirstCohomologyOfNormal {
  std::shared_ptr<Cohomology> h1;  // H^1(N, M)
  GModule q_module;                // same abelian group, acted on by Q
  Subgroup invariants;             // H^1(N, M)^Q inside h1->group()
};

inline FirstCohomologyOfNormal first_cohomology_of_normal(const GModule& m, const NormalPair& pair,
                                                          CohomologyOptions options = {}) {
  FirstCohomologyOfNormal out;
  out.h1 = std::make_shared<Cohomology>(restrict_to_normal(m, pair), 1, options);
  const FgAbelianGroup& h = out.h1->group();
  std::vector<IntMatrix> acts;
  for (std::size_t q = 0; q < pair.q().order(); ++q) {
    IntMatrix a(h.rank(), h.rank());
    for (std::size_t j = 0; j < h.rank(); ++j) {
      Derivation d = conjugate_derivation(m, pair, pair.section(q), out.h1->generator(j));
      IntVector c = out.h1->class_of(d);
      for (std::size_t i = 0; i < h.rank(); ++i) a(i, j) = c[i];
    }
    acts.push_back(std::move(a));
  }
  out.q_module = GModule(pair.q(), h, std::move(acts));
  out.invariants = out.q_module.fixed_points(pair.q().generators());
  return out;
}

}  // namespace seventerm
