#pragma once

// Independent reference computations used by the tests. Nothing here calls
// the linear-algebra code of the library; everything is plain enumeration.

#include "seventerm/gmodule.hpp"

#include <cstdint>
#include <algorithm>
#include <functional>
#include <vector>

namespace oracle {

/// Small finite module with elements encoded as mixed-radix integers.
struct SmallModule {
  std::size_t group_order = 1;
  std::vector<std::int64_t> moduli;                        // per coordinate, all >= 1
  std::vector<std::vector<std::vector<std::int64_t>>> act;  // act[g][i][j]
  std::vector<std::vector<std::size_t>> mul;               // group table

  std::size_t size() const {
    std::size_t s = 1;
    for (auto m : moduli) s *= static_cast<std::size_t>(m);
    return s;
  }
  std::vector<std::int64_t> decode(std::size_t x) const {
    std::vector<std::int64_t> v(moduli.size());
    for (std::size_t i = 0; i < moduli.size(); ++i) {
      v[i] = static_cast<std::int64_t>(x % static_cast<std::size_t>(moduli[i]));
      x /= static_cast<std::size_t>(moduli[i]);
    }
    return v;
  }
  std::size_t encode(const std::vector<std::int64_t>& v) const {
    std::size_t x = 0, scale = 1;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
      std::int64_t r = ((v[i] % moduli[i]) + moduli[i]) % moduli[i];
      x += static_cast<std::size_t>(r) * scale;
      scale *= static_cast<std::size_t>(moduli[i]);
    }
    return x;
  }
  std::size_t add(std::size_t a, std::size_t b) const {
    auto va = decode(a), vb = decode(b);
    for (std::size_t i = 0; i < va.size(); ++i) va[i] += vb[i];
    return encode(va);
  }
  std::size_t neg(std::size_t a) const {
    auto va = decode(a);
    for (auto& x : va) x = -x;
    return encode(va);
  }
  std::size_t act_on(std::size_t g, std::size_t a) const {
    auto va = decode(a);
    std::vector<std::int64_t> out(va.size(), 0);
    for (std::size_t i = 0; i < va.size(); ++i)
      for (std::size_t j = 0; j < va.size(); ++j) out[i] += act[g][i][j] * va[j];
    return encode(out);
  }
};

inline SmallModule from_gmodule(const seventerm::GModule& m) {
  SmallModule s;
  s.group_order = m.group().order();
  for (const auto& q : m.moduli()) s.moduli.push_back(static_cast<std::int64_t>(q));
  for (std::size_t g = 0; g < s.group_order; ++g) {
    std::vector<std::vector<std::int64_t>> a(m.rank(), std::vector<std::int64_t>(m.rank()));
    for (std::size_t i = 0; i < m.rank(); ++i)
      for (std::size_t j = 0; j < m.rank(); ++j) a[i][j] = static_cast<std::int64_t>(m.action(g)(i, j));
    s.act.push_back(a);
  }
  s.mul = m.group().table();
  return s;
}

/// Number of normalized n-cocycles, counted by backtracking over cochain
/// values with every cocycle condition checked as soon as it is determined.
inline std::uint64_t count_cocycles(const SmallModule& m, std::size_t n,
                                    std::vector<std::vector<std::size_t>>* collect = nullptr) {
  const std::size_t o = m.group_order;
  if (n == 0) {
    std::uint64_t c = 0;
    for (std::size_t a = 0; a < m.size(); ++a) {
      bool fixed = true;
      for (std::size_t g = 0; g < o; ++g) fixed = fixed && m.act_on(g, a) == a;
      c += fixed;
      if (fixed && collect) collect->push_back({a});
    }
    return c;
  }
  // Positions: tuples of non-identity elements, index sum (h_i - 1)(o - 1)^(i-1).
  std::size_t positions = 1;
  for (std::size_t i = 0; i < n; ++i) positions *= o - 1;
  auto pos_of = [&](const std::vector<std::size_t>& t) -> long {
    long idx = 0, scale = 1;
    for (std::size_t x : t) {
      if (x == 0) return -1;
      idx += static_cast<long>(x - 1) * scale;
      scale *= static_cast<long>(o - 1);
    }
    return idx;
  };
  struct Term {
    long pos;
    std::size_t act_by;  // group element acting on the value (0 = none)
    int sign;
  };
  std::vector<std::vector<std::vector<Term>>> checks(positions);
  std::vector<std::size_t> t(n + 1, 1);
  std::function<void(std::size_t)> rec = [&](std::size_t d) {
    if (d <= n) {
      for (std::size_t x = 1; x < o; ++x) {
        t[d] = x;
        rec(d + 1);
      }
      return;
    }
    std::vector<Term> terms;
    std::vector<std::size_t> face(t.begin() + 1, t.end());
    terms.push_back({pos_of(face), t[0], 1});
    for (std::size_t j = 1; j <= n; ++j) {
      std::vector<std::size_t> f;
      for (std::size_t i = 0; i <= n; ++i) {
        if (i == j) continue;
        f.push_back(i == j - 1 ? m.mul[t[j - 1]][t[j]] : t[i]);
      }
      terms.push_back({pos_of(f), 0, j % 2 ? -1 : 1});
    }
    std::vector<std::size_t> last(t.begin(), t.end() - 1);
    terms.push_back({pos_of(last), 0, (n + 1) % 2 ? -1 : 1});
    long maxpos = -1;
    for (const auto& term : terms) maxpos = std::max(maxpos, term.pos);
    if (maxpos >= 0) checks[static_cast<std::size_t>(maxpos)].push_back(terms);
  };
  if (o > 1) rec(0);
  std::vector<std::size_t> value(positions, 0);
  std::uint64_t count = 0;
  std::function<void(std::size_t)> assign = [&](std::size_t p) {
    if (p == positions) {
      ++count;
      if (collect) collect->push_back(value);
      return;
    }
    for (std::size_t a = 0; a < m.size(); ++a) {
      value[p] = a;
      bool ok = true;
      for (const auto& terms : checks[p]) {
        std::size_t acc = 0;
        for (const auto& term : terms) {
          if (term.pos < 0) continue;
          std::size_t v = value[static_cast<std::size_t>(term.pos)];
          if (term.act_by) v = m.act_on(term.act_by, v);
          acc = m.add(acc, term.sign > 0 ? v : m.neg(v));
        }
        if (acc != 0) {
          ok = false;
          break;
        }
      }
      if (ok) assign(p + 1);
    }
  };
  assign(0);
  return count;
}

/// |H^n| = |Z^n| |Z^(n-1)| / |C^(n-1)| using normalized cochains.
inline std::uint64_t cohomology_order(const SmallModule& m, std::size_t n) {
  std::uint64_t zn = count_cocycles(m, n);
  if (n == 0) return zn;
  std::uint64_t zprev = count_cocycles(m, n - 1);
  std::size_t positions = 1;
  for (std::size_t i = 0; i + 1 < n; ++i) positions *= m.group_order - 1;
  std::uint64_t cprev = 1;
  for (std::size_t i = 0; i < positions; ++i) cprev *= m.size();
  return zn * zprev / cprev;
}

/// Value of a normalized cochain (one value per tuple of non-identity
/// elements) at an arbitrary tuple.
inline std::size_t cochain_at(const SmallModule& m, const std::vector<std::size_t>& c,
                              const std::vector<std::size_t>& tuple) {
  std::size_t idx = 0, scale = 1;
  for (std::size_t x : tuple) {
    if (x == 0) return 0;
    idx += (x - 1) * scale;
    scale *= m.group_order - 1;
  }
  return c[idx];
}

/// All n-coboundaries as value vectors, obtained by applying the standard
/// coboundary formula to every normalized (n-1)-cochain.
inline std::vector<std::vector<std::size_t>> all_coboundaries(const SmallModule& m, std::size_t n) {
  const std::size_t o = m.group_order;
  std::size_t in_positions = 1, out_positions = 1;
  for (std::size_t i = 0; i + 1 < n; ++i) in_positions *= o - 1;
  for (std::size_t i = 0; i < n; ++i) out_positions *= o - 1;
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> c(in_positions, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t p) {
    if (p < in_positions) {
      for (std::size_t a = 0; a < m.size(); ++a) {
        c[p] = a;
        rec(p + 1);
      }
      return;
    }
    std::vector<std::size_t> d(out_positions, 0);
    for (std::size_t q = 0; q < out_positions; ++q) {
      std::vector<std::size_t> g(n);
      std::size_t r = q;
      for (std::size_t i = 0; i < n; ++i) {
        g[i] = r % (o - 1) + 1;
        r /= o - 1;
      }
      std::vector<std::size_t> tail(g.begin() + 1, g.end());
      std::size_t acc = m.act_on(g[0], cochain_at(m, c, tail));
      for (std::size_t j = 0; j + 1 < n; ++j) {
        std::vector<std::size_t> f;
        for (std::size_t i = 0; i < n; ++i) {
          if (i == j + 1) continue;
          f.push_back(i == j ? m.mul[g[j]][g[j + 1]] : g[i]);
        }
        std::size_t v = cochain_at(m, c, f);
        acc = m.add(acc, (j + 1) % 2 ? m.neg(v) : v);
      }
      std::vector<std::size_t> head(g.begin(), g.end() - 1);
      std::size_t v = cochain_at(m, c, head);
      acc = m.add(acc, n % 2 ? m.neg(v) : v);
      d[q] = acc;
    }
    out.push_back(std::move(d));
  };
  if (n >= 1 && o > 1) rec(0);
  return out;
}

/// For k = 1..kmax, the number of classes h in H^n with k h = 0. These counts
/// determine a finite abelian group up to isomorphism once kmax reaches its
/// exponent.
inline std::vector<std::uint64_t> cohomology_torsion_counts(const SmallModule& m, std::size_t n, std::size_t kmax) {
  std::vector<std::vector<std::size_t>> cocycles;
  count_cocycles(m, n, &cocycles);
  std::vector<std::vector<std::size_t>> bounds;
  if (n == 0) {
    bounds.push_back({0});
  } else if (m.group_order == 1) {
    bounds.push_back({});
  } else {
    bounds = all_coboundaries(m, n);
  }
  std::sort(bounds.begin(), bounds.end());
  bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());
  std::vector<std::uint64_t> counts;
  for (std::size_t k = 1; k <= kmax; ++k) {
    std::uint64_t hits = 0;
    for (const auto& z : cocycles) {
      std::vector<std::size_t> kz(z.size(), 0);
      for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t t = 0; t < k; ++t) kz[i] = m.add(kz[i], z[i]);
      hits += std::binary_search(bounds.begin(), bounds.end(), kz);
    }
    counts.push_back(hits / bounds.size());
  }
  return counts;
}

}  // namespace oracle
