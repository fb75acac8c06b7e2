#pragma once

#include "seventerm/derivations.hpp"

#include <map>
#include <optional>
#include <vector>

namespace seventerm {

/// M^N as a Q-module plus the data needed to move values between M and M^N.
struct NormalContext {
  GModule m;            // over G
  NormalPair pair;
  GModule m_on_n;       // M restricted to N
  InvariantModule inv;  // M^N over Q, with its inclusion into M

  NormalContext(GModule module, NormalPair p)
      : m(std::move(module)), pair(std::move(p)), m_on_n(restrict_to_normal(m, pair)),
        inv(invariants_as_quotient_module(m, pair)) {
    require(m.group().order() == pair.g().order(), ErrorCode::DimensionMismatch, "module over a different group");
  }

  /// Coordinates in M^N of an element of M known to be N-invariant.
  IntVector to_invariant(const IntVector& x) const {
    auto c = inv.subgroup.coordinates(m.abelian(), x);
    require(c.has_value(), ErrorCode::InvariantViolation, "value is not N-invariant");
    return *c;
  }

  IntVector from_invariant(const IntVector& y) const { return apply_hom(m.abelian(), inv.subgroup.inclusion, y); }

  /// Converts a Q-cochain with values in M (all N-invariant) to one over M^N.
  Cochain to_invariant_cochain(const Cochain& c) const {
    Cochain out(c.degree, c.group_order, inv.module.rank());
    for (std::size_t i = 0; i < c.values.size(); ++i) out.values[i] = to_invariant(c.values[i]);
    return out;
  }
};

/// Elements (m, g) of a twisted product M x_f G with
/// (m, g)(m', g') = (m + g.m' + f(g, g'), g g'); f = 0 gives the semidirect product.
class TwistedProduct {
 public:
  struct Element {
    IntVector m;
    std::size_t g = 0;
    bool operator==(const Element&) const = default;
  };

  explicit TwistedProduct(const GModule& m, std::optional<Cochain> f = std::nullopt) : m_(m), f_(std::move(f)) {
    if (f_) {
      require(f_->degree == 2 && f_->group_order == m.group().order(), ErrorCode::DimensionMismatch,
              "twisting cochain must be a 2-cochain over G");
      require(is_normalized(m, *f_), ErrorCode::NotACocycle, "twisting cocycle must be normalized");
    }
  }

  Element mul(const Element& a, const Element& b) const {
    IntVector v = m_.abelian().add(a.m, m_.act(a.g, b.m));
    if (f_) v = m_.abelian().add(v, (*f_)(a.g, b.g));
    return {std::move(v), m_.group().mul(a.g, b.g)};
  }

  Element inv(const Element& a) const {
    // (m, g)^-1 = (-g^-1.(m + f(g, g^-1)), g^-1)
    const std::size_t gi = m_.group().inv(a.g);
    IntVector v = a.m;
    if (f_) v = m_.abelian().add(v, (*f_)(a.g, gi));
    return {m_.abelian().scale(-1, m_.act(gi, v)), gi};
  }

  Element conj(const Element& x, const Element& y) const { return mul(mul(x, y), inv(x)); }
  Element one() const { return {m_.abelian().zero(), 0}; }
  const GModule& module() const { return m_; }

 private:
  const GModule& m_;
  std::optional<Cochain> f_;
};

namespace detail {

inline std::vector<IntVector> module_elements(const GModule& m, std::size_t limit) {
  require(m.abelian().is_finite(), ErrorCode::InfiniteModule, "exhaustive search needs a finite module");
  require(*m.abelian().order() <= Integer(limit), ErrorCode::SizeBudgetExceeded, "module too large to enumerate");
  std::vector<IntVector> out;
  m.abelian().for_each_element([&](const IntVector& y) { out.push_back(y); });
  return out;
}

/// Membership in the normalizer of H = {(d(n), n)} inside M x| G, by direct conjugation.
inline bool normalizes(const TwistedProduct& e, const NormalContext& ctx, const Derivation& d,
                       const TwistedProduct::Element& x) {
  for (std::size_t n : normal_generators_in_g(ctx.pair)) {
    auto y = e.conj(x, {d.values[ctx.pair.n_index(n)], n});
    if (!ctx.pair.in_n(y.g)) return false;
    if (!ctx.m.abelian().equal(y.m, d.values[ctx.pair.n_index(y.g)])) return false;
  }
  return true;
}

}  // namespace detail

/// Transgression through a normalized eta with (^alpha(q) d - d)(n) = n.eta(q) - eta(q):
/// F(q1, q2) = eta(q1) + alpha(q1).eta(q2) - f.eta(q1 q2) - d(f), f = f_alpha(q1, q2).
/// Result is a 2-cocycle over Q with values in M^N.
inline Cochain transgression_eta(const NormalContext& ctx, const Derivation& d) {
  const GModule& m = ctx.m;
  const NormalPair& pair = ctx.pair;
  const FiniteGroup& q = pair.q();
  auto gens = normal_generators_in_g(pair);
  FixedPointEquation eq(m, gens);
  std::vector<IntVector> eta(q.order(), m.abelian().zero());
  for (std::size_t x = 1; x < q.order(); ++x) {
    Derivation cd = conjugate_derivation(m, pair, pair.section(x), d);
    std::vector<IntVector> rhs;
    for (std::size_t n : gens) rhs.push_back(m.abelian().subtract(cd.values[pair.n_index(n)], d.values[pair.n_index(n)]));
    auto sol = eq.solve(rhs);
    require(sol.has_value(), ErrorCode::EtaUnsolvable, "derivation class is not Q-invariant");
    eta[x] = *sol;
  }
  Cochain f(2, q.order(), m.rank());
  for (std::size_t a = 0; a < q.order(); ++a)
    for (std::size_t b = 0; b < q.order(); ++b) {
      std::size_t fab = pair.factor_set(a, b);
      IntVector v = m.abelian().add(eta[a], m.act(pair.section(a), eta[b]));
      v = m.abelian().subtract(v, m.act(fab, eta[q.mul(a, b)]));
      v = m.abelian().subtract(v, d.values[pair.n_index(fab)]);
      f.at(a, b) = v;
    }
  return ctx.to_invariant_cochain(f);
}

/// Transgression through a set-theoretic section s~ : G -> N_E(H) extending
/// s(n) = (d(n), n): F(q1, q2) = f_s(alpha(q1), alpha(q2)) - f_s(f_alpha(q1, q2), alpha(q1 q2)).
inline Cochain transgression_normalizer(const NormalContext& ctx, const Derivation& d,
                                        std::size_t element_limit = 100000) {
  const GModule& m = ctx.m;
  const NormalPair& pair = ctx.pair;
  const FiniteGroup& G = pair.g();
  TwistedProduct e(m);
  auto elems = detail::module_elements(m, element_limit);
  std::vector<TwistedProduct::Element> lift(G.order());
  for (std::size_t g = 0; g < G.order(); ++g) {
    if (pair.in_n(g)) {
      lift[g] = {d.values[pair.n_index(g)], g};
      continue;
    }
    bool found = false;
    for (const auto& x : elems)
      if (detail::normalizes(e, ctx, d, {x, g})) {
        lift[g] = {x, g};
        found = true;
        break;
      }
    require(found, ErrorCode::EtaUnsolvable, "no element of the normalizer lies over a group element");
  }
  auto fs = [&](std::size_t g1, std::size_t g2) {
    auto p = e.mul(e.mul(lift[g1], lift[g2]), e.inv(lift[G.mul(g1, g2)]));
    require(p.g == 0, ErrorCode::Internal, "factor set leaves M");
    return p.m;
  };
  const FiniteGroup& q = pair.q();
  Cochain f(2, q.order(), m.rank());
  for (std::size_t a = 0; a < q.order(); ++a)
    for (std::size_t b = 0; b < q.order(); ++b)
      f.at(a, b) = m.abelian().subtract(fs(pair.section(a), pair.section(b)),
                                        fs(pair.factor_set(a, b), pair.section(q.mul(a, b))));
  return ctx.to_invariant_cochain(f);
}

/// Commutator subgroup of N as sorted elements of G.
inline std::vector<std::size_t> commutator_of_normal(const NormalPair& pair) {
  const FiniteGroup& G = pair.g();
  std::vector<std::size_t> comms;
  for (std::size_t a : pair.n_elements())
    for (std::size_t b : pair.n_elements()) comms.push_back(G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b))));
  return G.generated_subgroup(comms);
}

}  // namespace seventerm
