#pragma once

#include "seventerm/group.hpp"

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace seventerm::groups {

/// Z_n with element k at index k.
inline FiniteGroup cyclic(std::size_t n) {
  require(n >= 1, ErrorCode::BadParams, "cyclic group order must be positive");
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < n; ++a) {
    labels.push_back(std::to_string(a));
    for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  }
  return FiniteGroup(t, labels);
}

/// Dihedral group of order 2n; element r^i s^j has index i + n*j.
inline FiniteGroup dihedral(std::size_t n) {
  require(n >= 1, ErrorCode::BadParams, "dihedral parameter must be positive");
  const std::size_t ord = 2 * n;
  std::vector<std::vector<std::size_t>> t(ord, std::vector<std::size_t>(ord));
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < ord; ++a) {
    std::size_t i = a % n, j = a / n;
    labels.push_back((i ? "r^" + std::to_string(i) : std::string()) + (j ? "s" : "") + (a == 0 ? "1" : ""));
    for (std::size_t b = 0; b < ord; ++b) {
      std::size_t k = b % n, l = b / n;
      // r^i s^j r^k s^l = r^(i + (-1)^j k) s^(j + l)
      std::size_t rot = j == 0 ? (i + k) % n : (i + n - k) % n;
      t[a][b] = rot + n * ((j + l) % 2);
    }
  }
  return FiniteGroup(t, labels);
}

/// Quaternion group {±1, ±i, ±j, ±k}; index 1 is -1.
inline FiniteGroup quaternion8() {
  // unit u in {1, i, j, k} with sign; encode as (sign, unit)
  using Q = std::pair<int, int>;
  static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int unit_sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  std::vector<Q> elems;
  std::vector<std::string> labels;
  const char* names[4] = {"1", "i", "j", "k"};
  for (int u = 0; u < 4; ++u)
    for (int s : {1, -1}) {
      elems.push_back({s, u});
      labels.push_back(std::string(s < 0 ? "-" : "") + names[u]);
    }
  auto mul = [](const Q& a, const Q& b) {
    return Q{a.first * b.first * unit_sign[a.second][b.second], unit_mul[a.second][b.second]};
  };
  return group_from_elements(elems, mul, labels);
}

/// Symmetric group on {0, .., n-1}; permutations listed in lexicographic order.
inline FiniteGroup symmetric(std::size_t n) {
  require(n >= 1 && n <= 6, ErrorCode::BadParams, "symmetric group degree must be in 1..6");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<int>(i);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::string> labels;
  for (const auto& q : perms) {
    std::string s = "[";
    for (std::size_t i = 0; i < n; ++i) s += (i ? "," : "") + std::to_string(q[i]);
    labels.push_back(s + "]");
  }
  // (a*b)(x) = a(b(x))
  auto mul = [n](const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> c(n);
    for (std::size_t x = 0; x < n; ++x) c[x] = a[static_cast<std::size_t>(b[x])];
    return c;
  };
  return group_from_elements(perms, mul, labels);
}

/// Sign of a permutation given by its image list.
inline int permutation_sign(const std::vector<int>& p) {
  int s = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) s = -s;
  return s;
}

/// Upper unitriangular 3x3 matrices over Z/p; element (a, b, c) stands for
/// [[1, a, c], [0, 1, b], [0, 0, 1]] and has index a + p*b + p^2*c.
inline FiniteGroup heisenberg(std::size_t p) {
  require(p >= 2 && p <= 16, ErrorCode::BadParams, "heisenberg modulus must be in 2..16");
  const std::size_t ord = p * p * p;
  std::vector<std::vector<std::size_t>> t(ord, std::vector<std::size_t>(ord));
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < ord; ++x) {
    std::size_t a = x % p, b = (x / p) % p, c = x / (p * p);
    labels.push_back("(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")");
    for (std::size_t y = 0; y < ord; ++y) {
      std::size_t a2 = y % p, b2 = (y / p) % p, c2 = y / (p * p);
      std::size_t na = (a + a2) % p, nb = (b + b2) % p, nc = (c + c2 + a * b2) % p;
      t[x][y] = na + p * nb + p * p * nc;
    }
  }
  return FiniteGroup(t, labels);
}

/// Direct product; (a, b) has index a + |A| * b.
inline FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const std::size_t na = a.order(), nb = b.order();
  std::vector<std::vector<std::size_t>> t(na * nb, std::vector<std::size_t>(na * nb));
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < na * nb; ++x) {
    labels.push_back("(" + a.label(x % na) + "," + b.label(x / na) + ")");
    for (std::size_t y = 0; y < na * nb; ++y)
      t[x][y] = a.mul(x % na, y % na) + na * b.mul(x / na, y / na);
  }
  return FiniteGroup(t, labels);
}

}  // namespace seventerm::groups
