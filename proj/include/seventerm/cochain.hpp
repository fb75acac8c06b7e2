#pragma once

#include "seventerm/gmodule.hpp"

#include <functional>
#include <vector>

namespace seventerm {

/// Inhomogeneous n-cochain G^n -> M stored as a full table. The tuple
/// (g_1, .., g_n) has index g_1 + |G| g_2 + .. + |G|^(n-1) g_n.
struct Cochain {
  std::size_t degree = 0;
  std::size_t group_order = 1;
  std::vector<IntVector> values;

  Cochain() = default;
  Cochain(std::size_t deg, std::size_t order, std::size_t rank) : degree(deg), group_order(order) {
    std::size_t count = 1;
    for (std::size_t i = 0; i < deg; ++i) count *= order;
    values.assign(count, zero_vector(rank));
  }

  static Cochain zero(const GModule& m, std::size_t deg) { return Cochain(deg, m.group().order(), m.rank()); }

  std::size_t index(const std::vector<std::size_t>& tuple) const {
    std::size_t idx = 0, scale = 1;
    for (std::size_t g : tuple) {
      idx += g * scale;
      scale *= group_order;
    }
    return idx;
  }

  std::vector<std::size_t> tuple(std::size_t idx) const {
    std::vector<std::size_t> t(degree);
    for (std::size_t i = 0; i < degree; ++i) {
      t[i] = idx % group_order;
      idx /= group_order;
    }
    return t;
  }

  IntVector& at(const std::vector<std::size_t>& t) { return values[index(t)]; }
  const IntVector& at(const std::vector<std::size_t>& t) const { return values[index(t)]; }
  const IntVector& operator()(std::size_t a) const { return values[a]; }
  const IntVector& operator()(std::size_t a, std::size_t b) const { return values[a + group_order * b]; }
  const IntVector& operator()(std::size_t a, std::size_t b, std::size_t c) const {
    return values[a + group_order * (b + group_order * c)];
  }
  IntVector& at(std::size_t a) { return values[a]; }
  IntVector& at(std::size_t a, std::size_t b) { return values[a + group_order * b]; }
  IntVector& at(std::size_t a, std::size_t b, std::size_t c) { return values[a + group_order * (b + group_order * c)]; }
};

/// Calls f(index, tuple) for every tuple in G^n.
inline void for_each_tuple(std::size_t order, std::size_t n,
                           const std::function<void(std::size_t, const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> t(n, 0);
  std::size_t idx = 0;
  for (;;) {
    f(idx, t);
    ++idx;
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (++t[i] < order) break;
      t[i] = 0;
    }
    if (i == n) return;
  }
}

inline bool cochains_equal(const GModule& m, const Cochain& a, const Cochain& b) {
  if (a.degree != b.degree || a.values.size() != b.values.size()) return false;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    if (!m.abelian().equal(a.values[i], b.values[i])) return false;
  return true;
}

inline Cochain reduce_cochain(const GModule& m, Cochain c) {
  for (auto& v : c.values) v = m.abelian().reduce(std::move(v));
  return c;
}

inline Cochain add_cochains(const GModule& m, const Cochain& a, const Cochain& b) {
  require(a.degree == b.degree && a.values.size() == b.values.size(), ErrorCode::DimensionMismatch,
          "cochain degrees differ");
  Cochain c = a;
  for (std::size_t i = 0; i < c.values.size(); ++i) c.values[i] = m.abelian().add(a.values[i], b.values[i]);
  return c;
}

inline Cochain subtract_cochains(const GModule& m, const Cochain& a, const Cochain& b) {
  require(a.degree == b.degree && a.values.size() == b.values.size(), ErrorCode::DimensionMismatch,
          "cochain degrees differ");
  Cochain c = a;
  for (std::size_t i = 0; i < c.values.size(); ++i) c.values[i] = m.abelian().subtract(a.values[i], b.values[i]);
  return c;
}

inline Cochain scale_cochain(const GModule& m, const Integer& k, const Cochain& a) {
  Cochain c = a;
  for (auto& v : c.values) v = m.abelian().scale(k, v);
  return c;
}

/// (du)(g_0, .., g_n) = g_0 u(g_1, .., g_n) + sum_j (-1)^j u(.., g_{j-1} g_j, ..) + (-1)^(n+1) u(g_0, .., g_{n-1})
inline Cochain coboundary(const GModule& m, const Cochain& u) {
  const FiniteGroup& g = m.group();
  const std::size_t n = u.degree;
  require(u.group_order == g.order(), ErrorCode::DimensionMismatch, "cochain over a different group");
  Cochain out = Cochain::zero(m, n + 1);
  std::vector<std::size_t> inner(n);
  for_each_tuple(g.order(), n + 1, [&](std::size_t idx, const std::vector<std::size_t>& t) {
    for (std::size_t i = 0; i < n; ++i) inner[i] = t[i + 1];
    IntVector acc = m.act(t[0], u.at(inner));
    for (std::size_t j = 1; j <= n; ++j) {
      for (std::size_t i = 0, w = 0; i <= n; ++i) {
        if (i == j) continue;
        inner[w++] = i == j - 1 ? g.mul(t[j - 1], t[j]) : t[i];
      }
      const IntVector& v = u.at(inner);
      for (std::size_t r = 0; r < acc.size(); ++r) acc[r] += (j % 2 ? -v[r] : v[r]);
    }
    for (std::size_t i = 0; i < n; ++i) inner[i] = t[i];
    const IntVector& last = u.at(inner);
    for (std::size_t r = 0; r < acc.size(); ++r) acc[r] += ((n + 1) % 2 ? -last[r] : last[r]);
    out.values[idx] = m.abelian().reduce(std::move(acc));
  });
  return out;
}

inline bool is_zero_cochain(const GModule& m, const Cochain& c) {
  for (const auto& v : c.values)
    if (!m.abelian().is_zero(v)) return false;
  return true;
}

inline bool is_cocycle(const GModule& m, const Cochain& c) { return is_zero_cochain(m, coboundary(m, c)); }

/// Normalized: vanishes whenever some argument is the identity.
inline bool is_normalized(const GModule& m, const Cochain& c) {
  bool ok = true;
  for_each_tuple(c.group_order, c.degree, [&](std::size_t idx, const std::vector<std::size_t>& t) {
    for (std::size_t x : t)
      if (x == 0 && !m.abelian().is_zero(c.values[idx])) ok = false;
  });
  return ok;
}

/// Pullback of a cochain along a group homomorphism phi: H -> G, composed with
/// a module map given in standard coordinates (target.rank x source.rank).
inline Cochain pullback_cochain(const Cochain& c, std::size_t h_order, const std::vector<std::size_t>& phi,
                                const FgAbelianGroup& target, const IntMatrix& module_map) {
  Cochain out(c.degree, h_order, target.rank());
  std::vector<std::size_t> image(c.degree);
  for_each_tuple(h_order, c.degree, [&](std::size_t idx, const std::vector<std::size_t>& t) {
    for (std::size_t i = 0; i < t.size(); ++i) image[i] = phi[t[i]];
    out.values[idx] = apply_hom(target, module_map, c.at(image));
  });
  return out;
}

/// Applies a module map to every value of a cochain.
inline Cochain push_cochain(const Cochain& c, const FgAbelianGroup& target, const IntMatrix& module_map) {
  Cochain out(c.degree, c.group_order, target.rank());
  for (std::size_t i = 0; i < c.values.size(); ++i) out.values[i] = apply_hom(target, module_map, c.values[i]);
  return out;
}

/// 0-cochain holding a single module element.
inline Cochain constant_cochain(const GModule& m, const IntVector& value) {
  Cochain c = Cochain::zero(m, 0);
  c.values[0] = m.abelian().reduce(value);
  return c;
}

}  // namespace seventerm
