#pragma once

#include "seventerm/errors.hpp"
#include "seventerm/integer.hpp"
#include "seventerm/matrix.hpp"
#include "seventerm/smith.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace seventerm {

/// Finitely generated abelian group Z^n / (column span of a relation matrix).
///
/// Elements are handled in standard coordinates: a vector y with one entry per
/// cyclic factor, entry j taken modulo moduli()[j] (0 means a free factor).
/// Conversion to and from the ambient Z^n goes through to_standard/from_standard.
class FgAbelianGroup {
 public:
  FgAbelianGroup() = default;

  /// Direct sum of cyclic groups Z_{m_j}; m_j == 0 gives Z. Coordinates are
  /// kept as given whenever no modulus equals 1.
  static FgAbelianGroup from_moduli(const std::vector<Integer>& moduli) {
    bool plain = true;
    for (const auto& m : moduli) {
      require(m >= 0, ErrorCode::InvalidInput, "negative modulus");
      if (m == 1) plain = false;
    }
    if (!plain) return from_relations(moduli.size(), diagonal_relations(moduli));
    FgAbelianGroup g;
    g.ambient_ = moduli.size();
    g.moduli_ = moduli;
    g.to_std_ = IntMatrix::identity(moduli.size());
    g.from_std_ = IntMatrix::identity(moduli.size());
    return g;
  }

  /// Z^n modulo the columns of `relations` (an n x r matrix).
  static FgAbelianGroup from_relations(std::size_t n, const IntMatrix& relations) {
    require(relations.cols() == 0 || relations.rows() == n, ErrorCode::DimensionMismatch,
            "relation matrix must have one row per generator");
    FgAbelianGroup g;
    g.ambient_ = n;
    if (relations.cols() == 0) {
      g.moduli_.assign(n, Integer(0));
      g.to_std_ = IntMatrix::identity(n);
      g.from_std_ = IntMatrix::identity(n);
      return g;
    }
    auto res = integer_smith(relations, SmithOptions{.left = true, .left_inverse = true});
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < n; ++i) {
      Integer s = i < res.pivots.size() ? res.pivots[i] : Integer(0);
      if (s == 1) continue;
      keep.push_back(i);
      g.moduli_.push_back(s);
    }
    g.to_std_ = IntMatrix(keep.size(), n);
    g.from_std_ = IntMatrix(n, keep.size());
    for (std::size_t a = 0; a < keep.size(); ++a)
      for (std::size_t j = 0; j < n; ++j) {
        g.to_std_(a, j) = res.U(keep[a], j);
        g.from_std_(j, a) = res.Uinv(j, keep[a]);
      }
    return g;
  }

  std::size_t rank() const noexcept { return moduli_.size(); }
  std::size_t ambient_rank() const noexcept { return ambient_; }
  const std::vector<Integer>& moduli() const noexcept { return moduli_; }
  const IntMatrix& to_standard_matrix() const noexcept { return to_std_; }
  const IntMatrix& from_standard_matrix() const noexcept { return from_std_; }

  bool is_finite() const {
    for (const auto& m : moduli_)
      if (m == 0) return false;
    return true;
  }

  bool is_trivial() const { return moduli_.empty(); }

  std::size_t free_rank() const {
    std::size_t r = 0;
    for (const auto& m : moduli_)
      if (m == 0) ++r;
    return r;
  }

  /// Order of the torsion subgroup.
  Integer torsion_order() const {
    Integer o = 1;
    for (const auto& m : moduli_)
      if (m != 0) o *= m;
    return o;
  }

  /// Order of a finite group; nullopt for infinite groups.
  std::optional<Integer> order() const {
    if (!is_finite()) return std::nullopt;
    return torsion_order();
  }

  /// Exponent of the torsion part (1 for torsion-free groups).
  Integer torsion_exponent() const {
    Integer e = 1;
    for (const auto& m : moduli_)
      if (m != 0) e = lcm(e, m);
    return e;
  }

  /// Torsion invariant factors d_1 | d_2 | ... (all > 1).
  std::vector<Integer> invariant_factors() const {
    std::vector<Integer> finite;
    for (const auto& m : moduli_)
      if (m != 0) finite.push_back(m);
    if (finite.empty()) return {};
    auto res = integer_smith(diagonal_relations(finite), SmithOptions{});
    std::vector<Integer> out;
    for (const auto& p : res.pivots)
      if (p != 1) out.push_back(p);
    return out;
  }

  IntVector zero() const { return zero_vector(rank()); }

  IntVector reduce(IntVector y) const {
    require(y.size() == rank(), ErrorCode::DimensionMismatch, "element has wrong length");
    for (std::size_t j = 0; j < y.size(); ++j) y[j] = floor_mod(y[j], moduli_[j]);
    return y;
  }

  bool is_zero(const IntVector& y) const { return is_zero_vector(reduce(y)); }

  bool equal(const IntVector& a, const IntVector& b) const { return is_zero(subtract(a, b)); }

  IntVector add(const IntVector& a, const IntVector& b) const {
    require(a.size() == rank() && b.size() == rank(), ErrorCode::DimensionMismatch, "element length");
    IntVector c(rank());
    for (std::size_t j = 0; j < rank(); ++j) c[j] = a[j] + b[j];
    return reduce(std::move(c));
  }

  IntVector subtract(const IntVector& a, const IntVector& b) const {
    require(a.size() == rank() && b.size() == rank(), ErrorCode::DimensionMismatch, "element length");
    IntVector c(rank());
    for (std::size_t j = 0; j < rank(); ++j) c[j] = a[j] - b[j];
    return reduce(std::move(c));
  }

  IntVector scale(const Integer& k, const IntVector& a) const {
    IntVector c(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) c[j] = k * a[j];
    return reduce(std::move(c));
  }

  /// Additive order of an element; nullopt for elements of infinite order.
  std::optional<Integer> element_order(const IntVector& y) const {
    IntVector r = reduce(y);
    Integer o = 1;
    for (std::size_t j = 0; j < rank(); ++j) {
      if (r[j] == 0) continue;
      if (moduli_[j] == 0) return std::nullopt;
      o = lcm(o, moduli_[j] / gcd(r[j], moduli_[j]));
    }
    return o;
  }

  IntVector to_standard(const IntVector& x) const {
    require(x.size() == ambient_, ErrorCode::DimensionMismatch, "ambient vector length");
    return reduce(to_std_ * x);
  }

  IntVector from_standard(const IntVector& y) const {
    require(y.size() == rank(), ErrorCode::DimensionMismatch, "element length");
    return from_std_ * y;
  }

  /// Unit vector of the j-th standard generator.
  IntVector generator(std::size_t j) const {
    IntVector e = zero();
    e[j] = 1;
    return e;
  }

  /// Calls f on every element of a finite group, in lexicographic order.
  void for_each_element(const std::function<void(const IntVector&)>& f) const {
    require(is_finite(), ErrorCode::InfiniteModule, "cannot enumerate an infinite group");
    IntVector y = zero();
    for (;;) {
      f(y);
      std::size_t j = 0;
      for (; j < rank(); ++j) {
        y[j] += 1;
        if (y[j] < moduli_[j]) break;
        y[j] = 0;
      }
      if (j == rank()) return;
    }
  }

  /// Relation matrix of the standard presentation (diag of finite moduli).
  IntMatrix standard_relations() const { return diagonal_relations(moduli_); }

 private:
  std::size_t ambient_ = 0;
  std::vector<Integer> moduli_;
  IntMatrix to_std_;
  IntMatrix from_std_;
};

/// Checks that an integer matrix (target.rank x source.rank, standard
/// coordinates) induces a well-defined homomorphism source -> target.
inline bool is_well_defined_hom(const FgAbelianGroup& source, const FgAbelianGroup& target, const IntMatrix& a) {
  if (a.rows() != target.rank() || a.cols() != source.rank()) return false;
  for (std::size_t j = 0; j < source.rank(); ++j) {
    const Integer& m = source.moduli()[j];
    if (m == 0) continue;
    for (std::size_t i = 0; i < target.rank(); ++i) {
      const Integer& t = target.moduli()[i];
      Integer v = a(i, j) * m;
      if (t == 0 ? v != 0 : v % t != 0) return false;
    }
  }
  return true;
}

/// Reduces each row of a homomorphism matrix modulo the target moduli.
inline IntMatrix reduce_hom(const FgAbelianGroup& target, IntMatrix a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = floor_mod(a(i, j), target.moduli()[i]);
  return a;
}

inline IntVector apply_hom(const FgAbelianGroup& target, const IntMatrix& a, const IntVector& x) {
  return target.reduce(a * x);
}

inline bool homs_equal(const FgAbelianGroup& target, const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (floor_mod(a(i, j) - b(i, j), target.moduli()[i]) != 0) return false;
  return true;
}

inline IntMatrix generators_matrix(std::size_t rank, const std::vector<IntVector>& gens) {
  IntMatrix w(rank, gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j) {
    require(gens[j].size() == rank, ErrorCode::DimensionMismatch, "generator length");
    for (std::size_t i = 0; i < rank; ++i) w(i, j) = gens[j][i];
  }
  return w;
}

/// True when x lies in the subgroup of g generated by gens.
inline bool in_subgroup(const FgAbelianGroup& g, const std::vector<IntVector>& gens, const IntVector& x) {
  if (g.is_zero(x)) return true;
  if (gens.empty()) return false;
  return solve_modular_linear(generators_matrix(g.rank(), gens), g.standard_relations(), x).has_value();
}

/// Coefficients c with sum c_i gens_i == x in g, if any.
inline std::optional<IntVector> express_in_subgroup(const FgAbelianGroup& g, const std::vector<IntVector>& gens,
                                                    const IntVector& x) {
  if (gens.empty()) {
    if (g.is_zero(x)) return IntVector{};
    return std::nullopt;
  }
  auto sol = solve_modular_linear(generators_matrix(g.rank(), gens), g.standard_relations(), x);
  if (!sol) return std::nullopt;
  return sol->particular;
}

inline bool subgroups_equal(const FgAbelianGroup& g, const std::vector<IntVector>& a, const std::vector<IntVector>& b) {
  for (const auto& x : a)
    if (!in_subgroup(g, b, x)) return false;
  for (const auto& x : b)
    if (!in_subgroup(g, a, x)) return false;
  return true;
}

/// Generators of the kernel of a homomorphism (standard coordinates of source).
inline std::vector<IntVector> kernel_generators(const FgAbelianGroup& source, const FgAbelianGroup& target,
                                                const IntMatrix& a) {
  std::vector<IntVector> out;
  if (source.rank() == 0) return out;
  if (target.rank() == 0) {
    for (std::size_t j = 0; j < source.rank(); ++j) out.push_back(source.generator(j));
    return out;
  }
  auto sol = solve_modular_linear(a, target.standard_relations(), zero_vector(target.rank()));
  require(sol.has_value(), ErrorCode::Internal, "homogeneous system without solution");
  for (auto& k : sol->kernel) {
    IntVector r = source.reduce(k);
    if (!is_zero_vector(r)) out.push_back(std::move(r));
  }
  return out;
}

/// Subgroup of an ambient group together with its own presentation.
struct Subgroup {
  std::vector<IntVector> generators;  // in the ambient group
  FgAbelianGroup group;               // abstract presentation, ambient rank = generators.size()
  IntMatrix inclusion;                // ambient.rank x group.rank, standard coordinates
  std::shared_ptr<const LinearSolver> solver;  // expresses ambient elements in the generators

  /// Standard coordinates (in `group`) of an ambient element lying in the subgroup.
  std::optional<IntVector> coordinates(const FgAbelianGroup& ambient, const IntVector& x) const {
    if (!solver) {
      if (ambient.is_zero(x)) return group.zero();
      return std::nullopt;
    }
    auto c = solver->solve(ambient.reduce(x));
    if (!c) return std::nullopt;
    return group.to_standard(*c);
  }

  bool contains(const FgAbelianGroup& ambient, const IntVector& x) const {
    return coordinates(ambient, x).has_value();
  }
};

inline Subgroup make_subgroup(const FgAbelianGroup& ambient, std::vector<IntVector> gens) {
  Subgroup s;
  for (auto& x : gens) {
    IntVector r = ambient.reduce(std::move(x));
    if (!is_zero_vector(r)) s.generators.push_back(std::move(r));
  }
  const std::size_t n = s.generators.size();
  if (n == 0) {
    s.group = FgAbelianGroup::from_moduli({});
    s.inclusion = IntMatrix(ambient.rank(), 0);
    return s;
  }
  IntMatrix w = generators_matrix(ambient.rank(), s.generators);
  s.solver = std::make_shared<const LinearSolver>(w, ambient.standard_relations());
  s.group = FgAbelianGroup::from_relations(n, generators_matrix(n, s.solver->kernel()));
  s.inclusion = reduce_hom(ambient, w * s.group.from_standard_matrix());
  return s;
}

inline Subgroup image_subgroup(const FgAbelianGroup& source, const FgAbelianGroup& target, const IntMatrix& a) {
  std::vector<IntVector> gens;
  for (std::size_t j = 0; j < source.rank(); ++j) gens.push_back(apply_hom(target, a, source.generator(j)));
  return make_subgroup(target, std::move(gens));
}

inline Subgroup kernel_subgroup(const FgAbelianGroup& source, const FgAbelianGroup& target, const IntMatrix& a) {
  return make_subgroup(source, kernel_generators(source, target, a));
}

/// Human-readable structure such as "Z^2 + Z_2 + Z_6" or "0".
inline std::string describe_group(const FgAbelianGroup& g) {
  std::string out;
  auto append = [&](const std::string& part) {
    if (!out.empty()) out += " + ";
    out += part;
  };
  std::size_t free = g.free_rank();
  if (free == 1) append("Z");
  if (free > 1) append("Z^" + std::to_string(free));
  for (const auto& d : g.invariant_factors()) append("Z_" + to_string(d));
  return out.empty() ? "0" : out;
}

}  // namespace seventerm
