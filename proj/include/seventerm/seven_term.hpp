#pragma once

#include "seventerm/concrete_extension.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace seventerm {

enum class TransgressionRoute { Eta, Normalizer, Omega };

/// Section of Der(N, M) -> H^1(N, M): class coordinates -> derivation on N.
using DerivationSection = std::function<Derivation(const IntVector&)>;

struct SevenTermOptions {
  CohomologyOptions cohomology;
};

struct JointVerdict {
  std::string name;
  bool exact = false;
  Integer image_order = 0;   // 0 when infinite
  Integer kernel_order = 0;
};

struct ExactnessReport {
  bool inflation_injective = false;
  bool inflation_lands_in_kernel = false;
  std::vector<JointVerdict> joints;
  bool all_exact() const {
    if (!inflation_injective || !inflation_lands_in_kernel) return false;
    for (const auto& j : joints)
      if (!j.exact) return false;
    return true;
  }
};

/// Restriction of a cochain over G to N.
inline Cochain restrict_to_normal_cochain(const NormalContext& ctx, const Cochain& z) {
  const NormalPair& p = ctx.pair;
  return pullback_cochain(z, p.n().order(), p.n_elements(), ctx.m.abelian(), IntMatrix::identity(ctx.m.rank()));
}

/// Moves a 2-cocycle f on G whose restriction to N is a coboundary to a
/// cohomologous cocycle vanishing on N x N. h2n is H^2(N, M).
inline Cochain normalize_partially_split(const NormalContext& ctx, const Cohomology& h2n, const Cochain& f) {
  const GModule& m = ctx.m;
  const NormalPair& p = ctx.pair;
  require(f.degree == 2 && f.group_order == p.g().order(), ErrorCode::DimensionMismatch, "expected a 2-cochain on G");
  require(is_cocycle(m, f), ErrorCode::NotACocycle, "input is not a 2-cocycle");
  Cochain constant = Cochain::zero(m, 1);
  for (auto& v : constant.values) v = f(0, 0);
  Cochain g = subtract_cochains(m, f, coboundary(m, constant));
  auto u = h2n.bounding_cochain(restrict_to_normal_cochain(ctx, g));
  require(u.has_value(), ErrorCode::NotInKernelOfRestriction, "class does not restrict to zero on N");
  Cochain ext = Cochain::zero(m, 1);
  for (std::size_t i = 0; i < p.n().order(); ++i) ext.at(p.n_element(i)) = u->values[i];
  return subtract_cochains(m, g, coboundary(m, ext));
}

/// rho on cocycles: q -> [d_alpha(q)] with d_g(n) = f(g, g^-1 n g) - f(n, g) for a
/// representative f vanishing on N x N. Values are H^1(N, M) coordinates.
inline Cochain rho_cocycle(const NormalContext& ctx, const FirstCohomologyOfNormal& h1n, const Cohomology& h2n,
                           const Cochain& f) {
  const GModule& m = ctx.m;
  const NormalPair& p = ctx.pair;
  const FiniteGroup& G = p.g();
  Cochain fs = normalize_partially_split(ctx, h2n, f);
  Cochain out(1, p.q().order(), h1n.q_module.rank());
  for (std::size_t q = 0; q < p.q().order(); ++q) {
    const std::size_t g = p.section(q);
    Derivation d(1, p.n().order(), m.rank());
    for (std::size_t i = 0; i < p.n().order(); ++i) {
      const std::size_t n = p.n_element(i);
      d.values[i] = m.abelian().subtract(fs(g, G.mul3(G.inv(g), n, g)), fs(n, g));
    }
    out.values[q] = h1n.h1->class_of(d);
  }
  return out;
}

/// Transgression of a Q-invariant class represented by the derivation d.
inline Cochain transgression(const NormalContext& ctx, const Derivation& d,
                             TransgressionRoute route = TransgressionRoute::Eta) {
  require(is_cocycle(ctx.m_on_n, d), ErrorCode::NotACocycle, "input is not a derivation on N");
  switch (route) {
    case TransgressionRoute::Eta: return transgression_eta(ctx, d);
    case TransgressionRoute::Normalizer: return transgression_normalizer(ctx, d);
    case TransgressionRoute::Omega: return transgression_omega(ctx, d);
  }
  fail(ErrorCode::Internal, "unknown transgression route");
}

/// The sequence
/// 0 -> H^1(Q, M^N) -> H^1(G, M) -> H^1(N, M)^Q -> H^2(Q, M^N) -> H^2(G, M)_1
///   -> H^1(Q, H^1(N, M)) -> H^3(Q, M^N)
/// for G, a normal subgroup N, Q = G/N and a G-module M. Every map is
/// available on cocycles and as a matrix between standard coordinates.
class SevenTermSequence {
 public:
  SevenTermSequence(GModule m, NormalPair pair, SevenTermOptions options = {})
      : ctx_(std::make_shared<NormalContext>(std::move(m), std::move(pair))), options_(options) {
    const auto& co = options_.cohomology;
    const NormalContext& c = *ctx_;
    h1q_ = std::make_shared<Cohomology>(c.inv.module, 1, co);
    h1g_ = std::make_shared<Cohomology>(c.m, 1, co);
    h1n_ = std::make_shared<FirstCohomologyOfNormal>(first_cohomology_of_normal(c.m, c.pair, co));
    h2q_ = std::make_shared<Cohomology>(c.inv.module, 2, co);
    h2g_ = std::make_shared<Cohomology>(c.m, 2, co);
    h2n_ = std::make_shared<Cohomology>(c.m_on_n, 2, co);
    h1qh1n_ = std::make_shared<Cohomology>(h1n_->q_module, 1, co);
    h3q_ = std::make_shared<Cohomology>(c.inv.module, 3, co);

    res2_ = IntMatrix(h2n_->rank(), h2g_->rank());
    for (std::size_t j = 0; j < h2g_->rank(); ++j) {
      IntVector cls = h2n_->class_of(restrict_cochain(h2g_->generator(j)));
      for (std::size_t i = 0; i < cls.size(); ++i) res2_(i, j) = cls[i];
    }
    h2g1_ = kernel_subgroup(h2g_->group(), h2n_->group(), res2_);

    infl1_ = build_matrix(h1q_->group(), IntMatrix::identity(h1q_->rank()), h1g_->rank(), [&](const IntVector& cls) {
      return h1g_->class_of(inflation(h1q_->representative(cls)));
    });
    res1_ = build_matrix(h1g_->group(), IntMatrix::identity(h1g_->rank()), h1n_->invariants.group.rank(), [&](const IntVector& cls) {
      auto c2 = h1n_->invariants.coordinates(h1n_->h1->group(), h1n_->h1->class_of(restrict_cochain(h1g_->representative(cls))));
      require(c2.has_value(), ErrorCode::Internal, "restriction is not Q-invariant");
      return *c2;
    });
    tr_ = build_matrix(h1n_->invariants.group, h1n_->invariants.inclusion, h2q_->rank(), [&](const IntVector& cls) {
      return h2q_->class_of(transgression(h1n_->h1->representative(cls)));
    });
    infl2_target_ok_ = true;
    infl2_ = build_matrix(h2q_->group(), IntMatrix::identity(h2q_->rank()), h2g1_.group.rank(), [&](const IntVector& cls) {
      IntVector g = h2g_->class_of(inflation(h2q_->representative(cls)));
      auto c2 = h2g1_.coordinates(h2g_->group(), g);
      if (!c2) {
        infl2_target_ok_ = false;
        return h2g1_.group.zero();
      }
      return *c2;
    });
    rho_ = build_matrix(h2g1_.group, h2g1_.inclusion, h1qh1n_->rank(), [&](const IntVector& cls) {
      return h1qh1n_->class_of(rho(h2g_->representative(cls)));
    });
    lambda_ = build_matrix(h1qh1n_->group(), IntMatrix::identity(h1qh1n_->rank()), h3q_->rank(), [&](const IntVector& cls) {
      return h3q_->class_of(lambda(h1qh1n_->representative(cls)));
    });
  }

  const NormalContext& context() const { return *ctx_; }
  const GModule& module() const { return ctx_->m; }
  const NormalPair& pair() const { return ctx_->pair; }

  const Cohomology& h1_q() const { return *h1q_; }
  const Cohomology& h1_g() const { return *h1g_; }
  const FirstCohomologyOfNormal& h1_n() const { return *h1n_; }
  const Cohomology& h2_q() const { return *h2q_; }
  const Cohomology& h2_g() const { return *h2g_; }
  const Cohomology& h2_n() const { return *h2n_; }
  const Subgroup& h2_g_kernel() const { return h2g1_; }
  const Cohomology& h1_q_h1_n() const { return *h1qh1n_; }
  const Cohomology& h3_q() const { return *h3q_; }

  /// The seven groups in order, as abstract groups in their standard coordinates.
  std::vector<FgAbelianGroup> groups() const {
    return {h1q_->group(), h1g_->group(), h1n_->invariants.group, h2q_->group(),
            h2g1_.group,   h1qh1n_->group(), h3q_->group()};
  }

  /// Matrices of the six maps (infl, res, tr, infl, rho, lambda) between standard coordinates.
  std::vector<IntMatrix> matrices() const { return {infl1_, res1_, tr_, infl2_, rho_, lambda_}; }

  // Cocycle-level maps.

  /// Inflation of a cochain over Q with values in M^N to a cochain over G with values in M.
  Cochain inflation(const Cochain& z) const {
    const NormalPair& p = ctx_->pair;
    std::vector<std::size_t> proj(p.g().order());
    for (std::size_t x = 0; x < proj.size(); ++x) proj[x] = p.project(x);
    return pullback_cochain(z, p.g().order(), proj, ctx_->m.abelian(), ctx_->inv.subgroup.inclusion);
  }

  /// Restriction of a cochain over G to N.
  Cochain restrict_cochain(const Cochain& z) const { return restrict_to_normal_cochain(*ctx_, z); }

  Cochain transgression(const Derivation& d, TransgressionRoute route = TransgressionRoute::Eta) const {
    return seventerm::transgression(*ctx_, d, route);
  }

  /// Moves a 2-cocycle f on G with [f] in ker(res) to a cohomologous cocycle
  /// vanishing on N x N.
  Cochain normalize_partially_split(const Cochain& f) const { return seventerm::normalize_partially_split(*ctx_, *h2n_, f); }

  /// rho on cocycles; the result is a 1-cocycle Q -> H^1(N, M).
  Cochain rho(const Cochain& f) const { return rho_cocycle(*ctx_, *h1n_, *h2n_, f); }

  /// Default section s_2: a class maps to the combination of generator
  /// derivations with its reduced coordinates.
  DerivationSection default_section() const {
    auto h1 = h1n_->h1;
    return [h1](const IntVector& cls) { return h1->representative(cls); };
  }

  /// lambda on cocycles: D is a 1-cocycle Q -> H^1(N, M); returns a 3-cocycle
  /// over Q with values in M^N.
  Cochain lambda(const Cochain& D, const DerivationSection& section = nullptr) const {
    const GModule& m = ctx_->m;
    const NormalPair& p = ctx_->pair;
    const FiniteGroup& Q = p.q();
    const FiniteGroup& G = p.g();
    require(D.degree == 1 && D.group_order == Q.order(), ErrorCode::DimensionMismatch, "expected a 1-cochain on Q");
    require(is_cocycle(h1n_->q_module, D), ErrorCode::NotACocycle, "input is not a 1-cocycle");
    DerivationSection s2 = section ? section : default_section();
    std::vector<Derivation> sd;
    for (std::size_t q = 0; q < Q.order(); ++q) sd.push_back(s2(D.values[q]));
    auto gens = normal_generators_in_g(p);
    FixedPointEquation eq(m, gens);
    // F'(q1, q2) - n.F'(q1, q2) = sD(q1)(n) + (^alpha(q1) sD(q2))(n) - sD(q1 q2)(n)
    std::vector<IntVector> fprime(Q.order() * Q.order(), m.abelian().zero());
    for (std::size_t a = 1; a < Q.order(); ++a)
      for (std::size_t b = 1; b < Q.order(); ++b) {
        Derivation conj = conjugate_derivation(m, p, p.section(a), sd[b]);
        std::vector<IntVector> rhs;
        for (std::size_t n : gens) {
          const std::size_t i = p.n_index(n);
          IntVector r = m.abelian().add(sd[a].values[i], conj.values[i]);
          r = m.abelian().subtract(r, sd[Q.mul(a, b)].values[i]);
          rhs.push_back(m.abelian().scale(-1, r));
        }
        auto sol = eq.solve(rhs);
        require(sol.has_value(), ErrorCode::FPrimeUnsolvable, "defect of the section is not inner");
        fprime[a + Q.order() * b] = *sol;
      }
    auto F = [&](std::size_t a, std::size_t b) -> const IntVector& { return fprime[a + Q.order() * b]; };
    Cochain c(3, Q.order(), m.rank());
    for (std::size_t a = 0; a < Q.order(); ++a)
      for (std::size_t b = 0; b < Q.order(); ++b) {
        const std::size_t ab = Q.mul(a, b);
        const std::size_t fab = p.factor_set(a, b);
        const std::size_t g = p.section(ab);
        for (std::size_t x = 0; x < Q.order(); ++x) {
          IntVector v = m.act(p.section(a), F(b, x));
          v = m.abelian().subtract(v, F(ab, x));
          v = m.abelian().add(v, F(a, Q.mul(b, x)));
          v = m.abelian().subtract(v, F(a, b));
          // (^g sD(x))(f) = g . sD(x)(g^-1 f g)
          IntVector last = m.act(g, sd[x].values[p.n_index(G.mul3(G.inv(g), fab, g))]);
          c.at(a, b, x) = m.abelian().add(v, last);
        }
      }
    Cochain result = ctx_->to_invariant_cochain(c);
    require(is_cocycle(ctx_->inv.module, result), ErrorCode::InvariantViolation, "lambda output is not a 3-cocycle");
    return result;
  }

  /// Image equals kernel at the five inner joints, plus injectivity of the first inflation.
  ExactnessReport verify_exactness() const {
    ExactnessReport r;
    auto gs = groups();
    auto ms = matrices();
    r.inflation_injective = kernel_subgroup(gs[0], gs[1], ms[0]).group.is_trivial();
    r.inflation_lands_in_kernel = infl2_target_ok_;
    const char* names[] = {"H1(G,M)", "H1(N,M)^Q", "H2(Q,M^N)", "H2(G,M)_1", "H1(Q,H1(N,M))"};
    for (std::size_t j = 0; j < 5; ++j) {
      const FgAbelianGroup& src = gs[j];
      const FgAbelianGroup& mid = gs[j + 1];
      const FgAbelianGroup& dst = gs[j + 2];
      Subgroup im = image_subgroup(src, mid, ms[j]);
      Subgroup ker = kernel_subgroup(mid, dst, ms[j + 1]);
      JointVerdict v;
      v.name = names[j];
      v.exact = subgroups_equal(mid, im.generators, ker.generators);
      v.image_order = im.group.order().value_or(0);
      v.kernel_order = ker.group.order().value_or(0);
      r.joints.push_back(v);
    }
    return r;
  }

 private:
  template <class Fn>
  static IntMatrix build_matrix(const FgAbelianGroup& source, const IntMatrix& inclusion, std::size_t target_rank,
                                Fn&& image) {
    std::vector<IntVector> cols;
    for (std::size_t j = 0; j < source.rank(); ++j) {
      IntVector ambient(inclusion.rows());
      for (std::size_t i = 0; i < inclusion.rows(); ++i) ambient[i] = inclusion(i, j);
      cols.push_back(image(ambient));
    }
    IntMatrix a(target_rank, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < cols[j].size(); ++i) a(i, j) = cols[j][i];
    return a;
  }

  std::shared_ptr<NormalContext> ctx_;
  SevenTermOptions options_;
  std::shared_ptr<Cohomology> h1q_, h1g_, h2q_, h2g_, h2n_, h1qh1n_, h3q_;
  std::shared_ptr<FirstCohomologyOfNormal> h1n_;
  Subgroup h2g1_;
  IntMatrix res2_, infl1_, res1_, tr_, infl2_, rho_, lambda_;
  bool infl2_target_ok_ = true;
};

}  // namespace seventerm
