#pragma once

#include "seventerm/abelian.hpp"
#include "seventerm/group.hpp"

#include <string>
#include <vector>

namespace seventerm {

/// Finitely generated abelian group with a left action of a finite group.
/// Action matrices act on standard coordinates of the underlying group.
class GModule {
 public:
  using Element = FiniteGroup::Element;

  GModule() = default;

  /// Module with action matrices given for every group element (standard coordinates).
  GModule(FiniteGroup g, FgAbelianGroup m, std::vector<IntMatrix> actions)
      : g_(std::move(g)), m_(std::move(m)), actions_(std::move(actions)) {
    require(actions_.size() == g_.order(), ErrorCode::DimensionMismatch, "one action matrix per group element");
    for (auto& a : actions_) {
      require(is_well_defined_hom(m_, m_, a), ErrorCode::ActionNotHomomorphic,
              "action matrix does not respect the relations of the module");
      a = reduce_hom(m_, std::move(a));
    }
    require(homs_equal(m_, actions_[0], IntMatrix::identity(m_.rank())), ErrorCode::ActionInconsistent,
            "identity does not act trivially");
    for (Element a = 0; a < g_.order(); ++a)
      for (Element b = 0; b < g_.order(); ++b)
        require(homs_equal(m_, actions_[g_.mul(a, b)], actions_[a] * actions_[b]), ErrorCode::ActionInconsistent,
                "action is not compatible with the group multiplication");
  }

  static GModule trivial(FiniteGroup g, FgAbelianGroup m) {
    std::vector<IntMatrix> acts(g.order(), IntMatrix::identity(m.rank()));
    return GModule(std::move(g), std::move(m), std::move(acts));
  }

  /// Module Z^n / relations where generator gens[i] of G acts by the ambient
  /// n x n matrix ambient_actions[i]. The action of other elements is derived
  /// from words in the generators and checked for consistency.
  static GModule from_generator_action(FiniteGroup g, std::size_t n, const IntMatrix& relations,
                                       const std::vector<Element>& gens,
                                       const std::vector<IntMatrix>& ambient_actions) {
    require(gens.size() == ambient_actions.size(), ErrorCode::DimensionMismatch,
            "one action matrix per listed generator");
    FgAbelianGroup m = FgAbelianGroup::from_relations(n, relations);
    std::vector<IntMatrix> std_gen;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      require(gens[i] < g.order(), ErrorCode::InvalidInput, "generator index out of range");
      require(ambient_actions[i].rows() == n && ambient_actions[i].cols() == n, ErrorCode::DimensionMismatch,
              "action matrix size differs from module rank");
      // The ambient matrix must map relations into the relation lattice.
      for (std::size_t j = 0; j < relations.cols(); ++j) {
        IntVector image = ambient_actions[i] * relations.column(j);
        require(m.is_zero(m.to_standard(image)), ErrorCode::ActionNotHomomorphic,
                "action matrix does not preserve the relations");
      }
      std_gen.push_back(reduce_hom(m, m.to_standard_matrix() * ambient_actions[i] * m.from_standard_matrix()));
    }
    std::vector<IntMatrix> acts(g.order());
    std::vector<bool> known(g.order(), false);
    acts[0] = IntMatrix::identity(m.rank());
    known[0] = true;
    std::vector<Element> queue{0};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      Element x = queue[qi];
      for (std::size_t i = 0; i < gens.size(); ++i) {
        Element y = g.mul(x, gens[i]);
        if (known[y]) continue;
        known[y] = true;
        acts[y] = reduce_hom(m, acts[x] * std_gen[i]);
        queue.push_back(y);
      }
    }
    for (Element x = 0; x < g.order(); ++x)
      require(known[x], ErrorCode::InvalidInput, "listed elements do not generate the group");
    return GModule(std::move(g), std::move(m), std::move(acts));
  }

  const FiniteGroup& group() const noexcept { return g_; }
  const FgAbelianGroup& abelian() const noexcept { return m_; }
  std::size_t rank() const noexcept { return m_.rank(); }
  const std::vector<Integer>& moduli() const noexcept { return m_.moduli(); }
  const IntMatrix& action(Element g) const { return actions_[g]; }
  const std::vector<IntMatrix>& actions() const noexcept { return actions_; }

  IntVector act(Element g, const IntVector& y) const { return m_.reduce(actions_[g] * y); }

  bool is_trivial_action() const {
    for (const auto& a : actions_)
      if (!homs_equal(m_, a, IntMatrix::identity(rank()))) return false;
    return true;
  }

  /// Fixed points under the given elements, as a subgroup of the module.
  Subgroup fixed_points(const std::vector<Element>& elems) const {
    const std::size_t k = rank();
    IntMatrix stacked(k * elems.size(), k);
    std::vector<Integer> moduli;
    for (std::size_t e = 0; e < elems.size(); ++e) {
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) stacked(e * k + i, j) = actions_[elems[e]](i, j) - (i == j ? 1 : 0);
        moduli.push_back(m_.moduli()[i]);
      }
    }
    std::vector<IntVector> gens;
    if (elems.empty()) {
      for (std::size_t j = 0; j < k; ++j) gens.push_back(m_.generator(j));
    } else {
      gens = kernel_generators(m_, FgAbelianGroup::from_moduli(moduli), stacked);
    }
    return make_subgroup(m_, std::move(gens));
  }

 private:
  FiniteGroup g_;
  FgAbelianGroup m_;
  std::vector<IntMatrix> actions_;
};

/// Restriction of a module along a group homomorphism phi: H -> G.
inline GModule pullback_module(const GModule& m, const FiniteGroup& h, const std::vector<std::size_t>& phi) {
  require(phi.size() == h.order(), ErrorCode::DimensionMismatch, "homomorphism image count");
  std::vector<IntMatrix> acts;
  for (std::size_t x = 0; x < h.order(); ++x) acts.push_back(m.action(phi[x]));
  return GModule(h, m.abelian(), std::move(acts));
}

/// Restriction of a G-module to N.
inline GModule restrict_to_normal(const GModule& m, const NormalPair& pair) {
  return pullback_module(m, pair.n(), pair.n_elements());
}

/// Inflation of a Q-module to G via the projection.
inline GModule inflate_module(const GModule& mq, const NormalPair& pair) {
  std::vector<std::size_t> proj(pair.g().order());
  for (std::size_t x = 0; x < proj.size(); ++x) proj[x] = pair.project(x);
  return pullback_module(mq, pair.g(), proj);
}

/// M^N as a Q-module together with its inclusion into M (standard coordinates).
struct InvariantModule {
  GModule module;       // over Q
  Subgroup subgroup;    // inside M
};

inline InvariantModule invariants_as_quotient_module(const GModule& m, const NormalPair& pair) {
  std::vector<std::size_t> n_gens;
  for (std::size_t i : pair.n().generators()) n_gens.push_back(pair.n_element(i));
  Subgroup sub = m.fixed_points(n_gens);
  const FgAbelianGroup& a = sub.group;
  std::vector<IntMatrix> acts;
  for (std::size_t q = 0; q < pair.q().order(); ++q) {
    IntMatrix act(a.rank(), a.rank());
    for (std::size_t j = 0; j < a.rank(); ++j) {
      IntVector image = m.act(pair.section(q), apply_hom(m.abelian(), sub.inclusion, a.generator(j)));
      auto coords = sub.coordinates(m.abelian(), image);
      require(coords.has_value(), ErrorCode::Internal, "invariants not preserved by the action");
      for (std::size_t i = 0; i < a.rank(); ++i) act(i, j) = (*coords)[i];
    }
    acts.push_back(std::move(act));
  }
  return InvariantModule{GModule(pair.q(), a, std::move(acts)), std::move(sub)};
}

}  // namespace seventerm
