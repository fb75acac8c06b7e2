#pragma once

#include "seventerm/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace seventerm {

using Integer = boost::multiprecision::cpp_int;
using IntVector = std::vector<Integer>;

inline Integer abs_value(const Integer& a) { return a < 0 ? Integer(-a) : a; }

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(abs_value(a), abs_value(b));
}

inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs_value(a) / gcd(a, b) * abs_value(b);
}

/// Residue in [0, m) for m > 0; the value itself when m == 0 (free coordinate).
inline Integer floor_mod(const Integer& a, const Integer& m) {
  if (m == 0) return a;
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

inline std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline std::string to_string(const Integer& a) { return a.str(); }

/// Parses a base-10 integer with an optional leading minus sign.
inline Integer parse_integer(const std::string& text) {
  std::size_t start = !text.empty() && text[0] == '-' ? 1 : 0;
  bool digits = text.size() > start;
  for (std::size_t i = start; i < text.size() && digits; ++i) digits = text[i] >= '0' && text[i] <= '9';
  require(digits, ErrorCode::InvalidInput, "not a decimal integer: '" + text + "'");
  return Integer(text);
}

inline bool fits_int64(const Integer& a) {
  return a >= std::numeric_limits<std::int64_t>::min() && a <= std::numeric_limits<std::int64_t>::max();
}

inline IntVector zero_vector(std::size_t n) { return IntVector(n, Integer(0)); }

inline bool is_zero_vector(const IntVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace seventerm
