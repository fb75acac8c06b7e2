#pragma once

#include "seventerm/errors.hpp"
#include "seventerm/matrix.hpp"
#include "seventerm/ring.hpp"

#include <optional>
#include <algorithm>
#include <vector>

namespace seventerm {

struct SmithOptions {
  bool left = false;           // U
  bool left_inverse = false;   // U^-1
  bool right = false;          // V
  bool right_inverse = false;  // V^-1
};

/// Output of the generic reducer: U*A*V = diag(pivots) padded with zeros.
template <class Ring>
struct SmithResult {
  using value_type = typename Ring::value_type;
  std::size_t rows = 0, cols = 0;
  std::vector<value_type> pivots;  // canonical, nonzero, each divides the next
  Matrix<value_type> U, Uinv, V, Vinv;
};

namespace detail {

template <class Ring>
class SmithReducer {
 public:
  using value_type = typename Ring::value_type;

  SmithReducer(const Ring& ring, Matrix<value_type> a, SmithOptions options)
      : R_(ring), A_(std::move(a)), opt_(options), r_(A_.rows()), c_(A_.cols()) {
    if (opt_.left) U_ = identity(r_);
    if (opt_.left_inverse) UinvT_ = identity(r_);
    if (opt_.right) VT_ = identity(c_);
    if (opt_.right_inverse) Vinv_ = identity(c_);
  }

  SmithResult<Ring> run() {
    const std::size_t limit = std::min(r_, c_);
    std::size_t t = 0;
    for (; t < limit; ++t) {
      if (!bring_pivot(t)) break;
      reduce_at(t);
      result_.pivots.push_back(A_(t, t));
    }
    result_.rows = r_;
    result_.cols = c_;
    if (opt_.left) result_.U = std::move(U_);
    if (opt_.left_inverse) result_.Uinv = UinvT_.transpose();
    if (opt_.right) result_.V = VT_.transpose();
    if (opt_.right_inverse) result_.Vinv = std::move(Vinv_);
    return std::move(result_);
  }

 private:
  Matrix<value_type> identity(std::size_t n) const {
    Matrix<value_type> m(n, n, value_type(0));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = value_type(1);
    return m;
  }

  // Moves the preferred nonzero entry of the trailing block to (t, t).
  bool bring_pivot(std::size_t t) {
    std::size_t bi = r_, bj = c_;
    for (std::size_t i = t; i < r_; ++i) {
      auto row = A_.row(i);
      for (std::size_t j = t; j < c_; ++j) {
        if (R_.is_zero(row[j])) continue;
        if (bi == r_ || R_.smaller(row[j], A_(bi, bj))) {
          bi = i;
          bj = j;
          if (R_.is_unit(row[j])) goto found;
        }
      }
    }
    if (bi == r_) return false;
  found:
    swap_rows(t, bi);
    swap_cols(t, bj);
    return true;
  }

  void reduce_at(std::size_t t) {
    for (;;) {
      auto [unit, unit_inv] = R_.canonical_unit(A_(t, t));
      if (unit != value_type(1)) scale_row(t, unit, unit_inv);

      // Clear column t below the pivot.
      for (std::size_t i = t + 1; i < r_; ++i) {
        if (R_.is_zero(A_(i, t))) continue;
        if (auto q = R_.exact_div(A_(i, t), A_(t, t))) {
          row_addmul(i, t, R_.neg(*q));
        } else {
          row_bezout(t, i, R_.gcdex(A_(t, t), A_(i, t)));
        }
      }
      // Clear row t right of the pivot. Column t is zero below t here.
      bool column_dirty = false;
      for (std::size_t j = t + 1; j < c_; ++j) {
        if (R_.is_zero(A_(t, j))) continue;
        if (auto q = R_.exact_div(A_(t, j), A_(t, t))) {
          col_addmul(j, t, R_.neg(*q), column_dirty);
        } else {
          col_bezout(t, j, R_.gcdex(A_(t, t), A_(t, j)));
          column_dirty = true;
        }
      }
      if (column_dirty) continue;
      if (R_.is_unit(A_(t, t))) return;
      // The pivot must divide the whole trailing block.
      std::size_t bad_row = r_;
      for (std::size_t i = t + 1; i < r_ && bad_row == r_; ++i) {
        auto row = A_.row(i);
        for (std::size_t j = t + 1; j < c_; ++j)
          if (!R_.is_zero(row[j]) && !R_.exact_div(row[j], A_(t, t))) {
            bad_row = i;
            break;
          }
      }
      if (bad_row == r_) return;
      row_addmul(t, bad_row, value_type(1));
    }
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    A_.swap_rows(a, b);
    if (opt_.left) U_.swap_rows(a, b);
    if (opt_.left_inverse) UinvT_.swap_rows(a, b);
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    A_.swap_cols(a, b);
    if (opt_.right) VT_.swap_rows(a, b);
    if (opt_.right_inverse) Vinv_.swap_rows(a, b);
  }

  // row_i += q * row_src
  void row_addmul(std::size_t i, std::size_t src, const value_type& q) {
    axpy(A_.row(i), A_.row(src), q);
    if (opt_.left) axpy(U_.row(i), U_.row(src), q);
    if (opt_.left_inverse) axpy(UinvT_.row(src), UinvT_.row(i), R_.neg(q));
  }

  // col_j += q * col_src; when the source column is clean only row `src` is touched.
  void col_addmul(std::size_t j, std::size_t src, const value_type& q, bool column_dirty) {
    if (column_dirty) {
      for (std::size_t i = 0; i < r_; ++i)
        if (!R_.is_zero(A_(i, src))) A_(i, j) = R_.add(A_(i, j), R_.mul(q, A_(i, src)));
    } else {
      A_(src, j) = R_.add(A_(src, j), R_.mul(q, A_(src, src)));
    }
    if (opt_.right) axpy(VT_.row(j), VT_.row(src), q);
    if (opt_.right_inverse) axpy(Vinv_.row(src), Vinv_.row(j), R_.neg(q));
  }

  void scale_row(std::size_t t, const value_type& unit, const value_type& unit_inv) {
    scale(A_.row(t), unit);
    if (opt_.left) scale(U_.row(t), unit);
    if (opt_.left_inverse) scale(UinvT_.row(t), unit_inv);
  }

  // rows (t, i) <- [[s, x], [-v, u]] * rows (t, i)
  void row_bezout(std::size_t t, std::size_t i, const ring::Bezout<value_type>& b) {
    combine(A_.row(t), A_.row(i), b.s, b.t, R_.neg(b.v), b.u);
    if (opt_.left) combine(U_.row(t), U_.row(i), b.s, b.t, R_.neg(b.v), b.u);
    // Uinv <- Uinv * P^-1 with P^-1 = [[u, -x], [v, s]].
    if (opt_.left_inverse) combine(UinvT_.row(t), UinvT_.row(i), b.u, b.v, R_.neg(b.t), b.s);
  }

  // cols (t, j) <- cols (t, j) * [[s, -v], [x, u]]
  void col_bezout(std::size_t t, std::size_t j, const ring::Bezout<value_type>& b) {
    for (std::size_t i = 0; i < r_; ++i) {
      value_type a = A_(i, t), c = A_(i, j);
      if (R_.is_zero(a) && R_.is_zero(c)) continue;
      A_(i, t) = R_.add(R_.mul(b.s, a), R_.mul(b.t, c));
      A_(i, j) = R_.add(R_.mul(R_.neg(b.v), a), R_.mul(b.u, c));
    }
    if (opt_.right) combine(VT_.row(t), VT_.row(j), b.s, b.t, R_.neg(b.v), b.u);
    // Vinv <- P^-1 * Vinv with P^-1 = [[u, v], [-x, s]].
    if (opt_.right_inverse) combine(Vinv_.row(t), Vinv_.row(j), b.u, b.v, R_.neg(b.t), b.s);
  }

  void axpy(std::span<value_type> y, std::span<const value_type> x, const value_type& q) {
    if (R_.is_zero(q)) return;
    for (std::size_t k = 0; k < y.size(); ++k)
      if (!R_.is_zero(x[k])) y[k] = R_.add(y[k], R_.mul(q, x[k]));
  }
  void axpy(std::span<value_type> y, std::span<value_type> x, const value_type& q) {
    axpy(y, std::span<const value_type>(x.data(), x.size()), q);
  }

  void scale(std::span<value_type> y, const value_type& q) {
    for (auto& v : y)
      if (!R_.is_zero(v)) v = R_.mul(q, v);
  }

  // (x, y) <- (a*x + b*y, c*x + d*y)
  void combine(std::span<value_type> x, std::span<value_type> y, const value_type& a, const value_type& b,
               const value_type& c, const value_type& d) {
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (R_.is_zero(x[k]) && R_.is_zero(y[k])) continue;
      value_type nx = R_.add(R_.mul(a, x[k]), R_.mul(b, y[k]));
      value_type ny = R_.add(R_.mul(c, x[k]), R_.mul(d, y[k]));
      x[k] = nx;
      y[k] = ny;
    }
  }

  Ring R_;
  Matrix<value_type> A_;
  SmithOptions opt_;
  std::size_t r_, c_;
  Matrix<value_type> U_, UinvT_, VT_, Vinv_;
  SmithResult<Ring> result_;
};

}  // namespace detail

template <class Ring>
SmithResult<Ring> smith_reduce(const Ring& ring, Matrix<typename Ring::value_type> a, SmithOptions options) {
  return detail::SmithReducer<Ring>(ring, std::move(a), options).run();
}

template <class Ring>
Matrix<typename Ring::value_type> convert_matrix(const Ring& ring, const IntMatrix& a) {
  Matrix<typename Ring::value_type> out(a.rows(), a.cols(), typename Ring::value_type(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = ring.from(a(i, j));
  return out;
}

template <class Ring>
IntMatrix to_int_matrix(const Ring& ring, const Matrix<typename Ring::value_type>& a) {
  IntMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = ring.to_integer(a(i, j));
  return out;
}

/// Smith normal form over Z, tries int64 first and falls back to big integers.
inline SmithResult<ring::BigIntegerRing> integer_smith(const IntMatrix& a, SmithOptions options) {
  try {
    ring::CheckedIntegerRing fast;
    auto small = smith_reduce(fast, convert_matrix(fast, a), options);
    SmithResult<ring::BigIntegerRing> out;
    out.rows = small.rows;
    out.cols = small.cols;
    for (auto p : small.pivots) out.pivots.emplace_back(p);
    out.U = to_int_matrix(fast, small.U);
    out.Uinv = to_int_matrix(fast, small.Uinv);
    out.V = to_int_matrix(fast, small.V);
    out.Vinv = to_int_matrix(fast, small.Vinv);
    return out;
  } catch (const ring::Overflow&) {
    return smith_reduce(ring::BigIntegerRing{}, a, options);
  }
}

struct SnfDecomposition {
  IntMatrix U, S, V;
  std::vector<Integer> invariant_factors;  // diagonal of S, zeros trailing
  std::size_t rank = 0;
};

/// U*A*V = S with U, V unimodular and S diagonal with a divisibility chain.
inline SnfDecomposition smith_normal_form(const IntMatrix& a) {
  auto res = integer_smith(a, SmithOptions{.left = true, .right = true});
  SnfDecomposition out;
  out.U = std::move(res.U);
  out.V = std::move(res.V);
  out.S = IntMatrix(a.rows(), a.cols());
  out.rank = res.pivots.size();
  const std::size_t diag = std::min(a.rows(), a.cols());
  out.invariant_factors.assign(diag, Integer(0));
  for (std::size_t i = 0; i < res.pivots.size(); ++i) {
    out.S(i, i) = res.pivots[i];
    out.invariant_factors[i] = res.pivots[i];
  }
  return out;
}

struct LinearSolution {
  IntVector particular;
  std::vector<IntVector> kernel;  // generators of {x : A x in col(R)}
};

/// Solves A x = b modulo the column lattice of R for many right-hand sides,
/// reusing one Smith decomposition of [A | R].
class LinearSolver {
 public:
  LinearSolver(const IntMatrix& a, const IntMatrix& relations) : rows_(a.rows()), unknowns_(a.cols()) {
    require(relations.rows() == a.rows() || relations.cols() == 0, ErrorCode::DimensionMismatch,
            "relation matrix row count");
    IntMatrix stacked = relations.cols() == 0 ? a : hconcat(a, relations);
    snf_ = integer_smith(stacked, SmithOptions{.left = true, .right = true});
    total_ = stacked.cols();
  }

  std::optional<IntVector> solve(const IntVector& b) const {
    require(b.size() == rows_, ErrorCode::DimensionMismatch, "right-hand side length");
    const std::size_t rank = snf_.pivots.size();
    IntVector y = snf_.U * b;
    IntVector z(total_, Integer(0));
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (i < rank) {
        if (y[i] % snf_.pivots[i] != 0) return std::nullopt;
        z[i] = y[i] / snf_.pivots[i];
      } else if (y[i] != 0) {
        return std::nullopt;
      }
    }
    IntVector x(unknowns_, Integer(0));
    for (std::size_t i = 0; i < unknowns_; ++i)
      for (std::size_t j = 0; j < rank; ++j)
        if (z[j] != 0) x[i] += snf_.V(i, j) * z[j];
    return x;
  }

  std::vector<IntVector> kernel() const {
    std::vector<IntVector> out;
    for (std::size_t j = snf_.pivots.size(); j < total_; ++j) {
      IntVector k(unknowns_);
      for (std::size_t i = 0; i < unknowns_; ++i) k[i] = snf_.V(i, j);
      if (!is_zero_vector(k)) out.push_back(std::move(k));
    }
    return out;
  }

 private:
  std::size_t rows_, unknowns_, total_ = 0;
  SmithResult<ring::BigIntegerRing> snf_;
};

/// Solves A x = b modulo the column lattice of R. Returns nullopt when no
/// solution exists.
inline std::optional<LinearSolution> solve_modular_linear(const IntMatrix& a, const IntMatrix& relations,
                                                          const IntVector& b) {
  require(b.size() == a.rows(), ErrorCode::DimensionMismatch, "right-hand side length");
  LinearSolver solver(a, relations);
  auto x = solver.solve(b);
  if (!x) return std::nullopt;
  return LinearSolution{std::move(*x), solver.kernel()};
}

/// Diagonal relation matrix with the given moduli, skipping free (0) entries.
inline IntMatrix diagonal_relations(const std::vector<Integer>& moduli) {
  std::size_t count = 0;
  for (const auto& m : moduli)
    if (m != 0) ++count;
  IntMatrix r(moduli.size(), count);
  std::size_t j = 0;
  for (std::size_t i = 0; i < moduli.size(); ++i)
    if (moduli[i] != 0) r(i, j++) = moduli[i];
  return r;
}

}  // namespace seventerm
