#pragma once

#include "seventerm/group.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace seventerm {

/// Homomorphism between finite groups given by the image of every element.
struct GroupMorphism {
  const FiniteGroup* source = nullptr;
  const FiniteGroup* target = nullptr;
  std::vector<std::size_t> image;

  GroupMorphism(const FiniteGroup& src, const FiniteGroup& dst, std::vector<std::size_t> img)
      : source(&src), target(&dst), image(std::move(img)) {
    check_group_hom(src, dst, image);
  }
  std::size_t operator()(std::size_t x) const { return image[x]; }
};

/// Smallest subgroup containing gens, as sorted element indices.
inline std::vector<std::size_t> subgroup_closure(const FiniteGroup& g, const std::vector<std::size_t>& gens) {
  for (std::size_t x : gens) require(x < g.order(), ErrorCode::InvalidInput, "element out of range");
  return g.generated_subgroup(gens);
}

inline bool is_subgroup(const FiniteGroup& g, const std::vector<std::size_t>& h) {
  std::vector<bool> in(g.order(), false);
  for (std::size_t x : h) {
    if (x >= g.order()) return false;
    in[x] = true;
  }
  if (h.empty() || !in[0]) return false;
  for (std::size_t a : h)
    for (std::size_t b : h)
      if (!in[g.mul(a, b)]) return false;
  return true;
}

/// {x : x H x^-1 = H}, by exhaustive conjugation.
inline std::vector<std::size_t> normalizer(const FiniteGroup& g, const std::vector<std::size_t>& h) {
  require(is_subgroup(g, h), ErrorCode::InvalidInput, "normalizer needs a subgroup");
  std::vector<bool> in(g.order(), false);
  for (std::size_t x : h) in[x] = true;
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (std::size_t y : h)
      if (!in[g.conjugate(x, y)]) {
        ok = false;
        break;
      }
    if (ok) out.push_back(x);
  }
  return out;
}

inline std::vector<std::size_t> center(const FiniteGroup& g) {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < g.order(); ++x) {
    bool central = true;
    for (std::size_t y : g.generators())
      if (g.mul(x, y) != g.mul(y, x)) {
        central = false;
        break;
      }
    if (central) out.push_back(x);
  }
  return out;
}

inline std::vector<std::size_t> commutator_subgroup(const FiniteGroup& g) {
  std::vector<std::size_t> comms;
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t b = 0; b < g.order(); ++b) comms.push_back(g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))));
  std::sort(comms.begin(), comms.end());
  comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
  return g.generated_subgroup(comms);
}

struct StructuralSubgroups {
  std::vector<std::size_t> center;
  std::vector<std::size_t> commutator;
};

inline StructuralSubgroups structural_subgroups(const FiniteGroup& g) { return {center(g), commutator_subgroup(g)}; }

/// Kernel and image of a homomorphism, as sorted element indices.
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>> morphism_kernel_image(const GroupMorphism& phi) {
  std::vector<std::size_t> ker;
  std::vector<bool> hit(phi.target->order(), false);
  for (std::size_t x = 0; x < phi.source->order(); ++x) {
    if (phi.image[x] == 0) ker.push_back(x);
    hit[phi.image[x]] = true;
  }
  std::vector<std::size_t> im;
  for (std::size_t y = 0; y < hit.size(); ++y)
    if (hit[y]) im.push_back(y);
  return {ker, im};
}

/// M x| G for an abelian group M and an action of G by automorphisms
/// (action[g][m] = g.m). Element (m, g) has index m + |M| g.
struct SemidirectProduct {
  FiniteGroup group;
  std::vector<std::size_t> inclusion;   // M -> M x| G
  std::vector<std::size_t> projection;  // M x| G -> G
};

inline SemidirectProduct semidirect_product(const FiniteGroup& m, const FiniteGroup& g,
                                            const std::vector<std::vector<std::size_t>>& action) {
  require(m.is_abelian(), ErrorCode::InvalidInput, "semidirect product needs an abelian normal factor");
  require(action.size() == g.order(), ErrorCode::DimensionMismatch, "one automorphism per group element expected");
  for (std::size_t x = 0; x < g.order(); ++x) check_group_hom(m, m, action[x]);
  for (std::size_t a = 0; a < m.order(); ++a) {
    require(action[0][a] == a, ErrorCode::ActionNotHomomorphic, "identity must act trivially");
    for (std::size_t x = 0; x < g.order(); ++x)
      for (std::size_t y : g.generators())
        require(action[g.mul(x, y)][a] == action[x][action[y][a]], ErrorCode::ActionNotHomomorphic,
                "action is not a homomorphism");
  }
  const std::size_t mo = m.order(), n = mo * g.order();
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t a = i % mo, x = i / mo;
    labels[i] = "(" + m.label(a) + "," + g.label(x) + ")";
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t b = j % mo, y = j / mo;
      table[i][j] = m.mul(a, action[x][b]) + mo * g.mul(x, y);
    }
  }
  SemidirectProduct out{FiniteGroup(table, std::move(labels)), {}, {}};
  for (std::size_t a = 0; a < mo; ++a) out.inclusion.push_back(a);
  for (std::size_t i = 0; i < n; ++i) out.projection.push_back(i / mo);
  return out;
}

}  // namespace seventerm
