#pragma once

#include "seventerm/errors.hpp"
#include "seventerm/integer.hpp"

#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>

// Coefficient rings for the elimination kernels. Each policy exposes the same
// small vocabulary so that the Smith normal form code is written once:
//   add/sub/mul/neg, is_zero, canonical_unit, smaller, exact_div, gcdex.
// gcdex(a, b) returns g, s, t, u, v with s*a + t*b = g, u = a/g, v = b/g, so
// [[s, t], [-v, u]] is unimodular and sends (a, b) to (g, 0).

namespace seventerm::ring {

template <class V>
struct Bezout {
  V g, s, t, u, v;
};

/// Thrown by CheckedIntegerRing when an intermediate leaves int64 range.
struct Overflow {};

struct BigIntegerRing {
  using value_type = Integer;

  value_type from(const Integer& x) const { return x; }
  Integer to_integer(const value_type& x) const { return x; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  bool is_zero(const value_type& a) const { return a == 0; }
  bool is_unit(const value_type& a) const { return a == 1 || a == -1; }

  std::pair<value_type, value_type> canonical_unit(const value_type& a) const {
    return a < 0 ? std::pair<value_type, value_type>{-1, -1} : std::pair<value_type, value_type>{1, 1};
  }
  bool smaller(const value_type& a, const value_type& b) const { return abs_value(a) < abs_value(b); }

  std::optional<value_type> exact_div(const value_type& b, const value_type& a) const {
    if (b % a != 0) return std::nullopt;
    return b / a;
  }

  Bezout<value_type> gcdex(const value_type& a, const value_type& b) const {
    value_type old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
      value_type q = old_r / r;
      value_type tmp = old_r - q * r;
      old_r = r;
      r = tmp;
      tmp = old_s - q * s;
      old_s = s;
      s = tmp;
      tmp = old_t - q * t;
      old_t = t;
      t = tmp;
    }
    if (old_r < 0) {
      old_r = -old_r;
      old_s = -old_s;
      old_t = -old_t;
    }
    return {old_r, old_s, old_t, a / old_r, b / old_r};
  }
};

/// int64 arithmetic that refuses to wrap; callers retry on BigIntegerRing.
struct CheckedIntegerRing {
  using value_type = std::int64_t;

  value_type from(const Integer& x) const {
    if (!fits_int64(x)) throw Overflow{};
    return static_cast<value_type>(x);
  }
  Integer to_integer(value_type x) const { return Integer(x); }
  value_type add(value_type a, value_type b) const {
    value_type r;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  value_type sub(value_type a, value_type b) const {
    value_type r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  value_type mul(value_type a, value_type b) const {
    value_type r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  value_type neg(value_type a) const { return sub(0, a); }
  bool is_zero(value_type a) const { return a == 0; }
  bool is_unit(value_type a) const { return a == 1 || a == -1; }

  std::pair<value_type, value_type> canonical_unit(value_type a) const {
    return a < 0 ? std::pair<value_type, value_type>{-1, -1} : std::pair<value_type, value_type>{1, 1};
  }
  bool smaller(value_type a, value_type b) const {
    // |INT64_MIN| is not representable; treat it as the largest.
    auto mag = [](value_type x) -> std::uint64_t {
      return x < 0 ? std::uint64_t(0) - static_cast<std::uint64_t>(x) : static_cast<std::uint64_t>(x);
    };
    return mag(a) < mag(b);
  }

  std::optional<value_type> exact_div(value_type b, value_type a) const {
    if (a == -1 && b == std::numeric_limits<value_type>::min()) throw Overflow{};
    if (b % a != 0) return std::nullopt;
    return b / a;
  }

  Bezout<value_type> gcdex(value_type a, value_type b) const {
    value_type old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
      value_type q = old_r / r;
      value_type tmp = sub(old_r, mul(q, r));
      old_r = r;
      r = tmp;
      tmp = sub(old_s, mul(q, s));
      old_s = s;
      s = tmp;
      tmp = sub(old_t, mul(q, t));
      old_t = t;
      t = tmp;
    }
    if (old_r < 0) {
      old_r = neg(old_r);
      old_s = neg(old_s);
      old_t = neg(old_t);
    }
    return {old_r, old_s, old_t, a / old_r, b / old_r};
  }
};

/// Z/eZ with representatives in [0, e). Requires 2 <= e < 2^31 so products fit.
class ModularRing {
 public:
  using value_type = std::int64_t;

  explicit ModularRing(std::int64_t modulus) : e_(modulus) {
    require(modulus >= 2 && modulus < (std::int64_t(1) << 31), ErrorCode::Internal, "modulus out of range");
  }

  std::int64_t modulus() const noexcept { return e_; }

  value_type from(const Integer& x) const { return static_cast<value_type>(floor_mod(x, Integer(e_))); }
  value_type from(std::int64_t x) const { return floor_mod(x, e_); }
  Integer to_integer(value_type x) const { return Integer(x); }
  value_type add(value_type a, value_type b) const {
    value_type r = a + b;
    return r >= e_ ? r - e_ : r;
  }
  value_type sub(value_type a, value_type b) const {
    value_type r = a - b;
    return r < 0 ? r + e_ : r;
  }
  value_type mul(value_type a, value_type b) const { return (a * b) % e_; }
  value_type neg(value_type a) const { return a == 0 ? 0 : e_ - a; }
  bool is_zero(value_type a) const { return a == 0; }
  bool is_unit(value_type a) const { return std::gcd(a, e_) == 1; }

  /// Unit u with u*a == gcd(a, e) (mod e), and its inverse.
  std::pair<value_type, value_type> canonical_unit(value_type a) const {
    const value_type g = std::gcd(a, e_);
    const value_type ep = e_ / g;
    value_type u = ep == 1 ? 1 : inverse_mod((a / g) % ep, ep);
    while (std::gcd(u, e_) != 1) u += ep;
    u %= e_;
    return {u, inverse_mod(u, e_)};
  }

  bool smaller(value_type a, value_type b) const {
    const value_type ga = std::gcd(a, e_), gb = std::gcd(b, e_);
    return ga != gb ? ga < gb : a < b;
  }

  /// `a` must already be canonical, i.e. a divisor of e.
  std::optional<value_type> exact_div(value_type b, value_type a) const {
    if (b % a != 0) return std::nullopt;
    return b / a;
  }

  Bezout<value_type> gcdex(value_type a, value_type b) const {
    value_type old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
      value_type q = old_r / r;
      value_type tmp = old_r - q * r;
      old_r = r;
      r = tmp;
      tmp = old_s - q * s;
      old_s = s;
      s = tmp;
      tmp = old_t - q * t;
      old_t = t;
      t = tmp;
    }
    return {old_r, from(old_s), from(old_t), a / old_r, b / old_r};
  }

 private:
  static value_type inverse_mod(value_type a, value_type m) {
    value_type old_r = a, r = m, old_s = 1, s = 0;
    while (r != 0) {
      value_type q = old_r / r;
      value_type tmp = old_r - q * r;
      old_r = r;
      r = tmp;
      tmp = old_s - q * s;
      old_s = s;
      s = tmp;
    }
    return floor_mod(old_s, m);
  }

  std::int64_t e_;
};

}  // namespace seventerm::ring
