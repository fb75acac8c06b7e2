#pragma once

#include "seventerm/cochain.hpp"
#include "seventerm/ring.hpp"
#include "seventerm/smith.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace seventerm {

struct CohomologyOptions {
  enum class Method { Automatic, Generic };
  /// Upper bound on the number of unknowns (normalized n-cochain coordinates).
  std::size_t max_unknowns = 4096;
  Method method = Method::Automatic;
};

namespace detail {

/// Enumerates normalized cochain coordinates: tuples avoiding the identity.
/// Tuple (h_1, .., h_n) has index sum (h_i - 1) (|G| - 1)^(i-1).
struct TupleLayout {
  std::size_t order = 1, degree = 0, rank = 0;
  std::size_t tuples = 1;               // (|G| - 1)^degree
  std::vector<std::size_t> full_index;  // layout index -> Cochain table index

  TupleLayout() = default;
  TupleLayout(std::size_t order_, std::size_t degree_, std::size_t rank_)
      : order(order_), degree(degree_), rank(rank_) {
    for (std::size_t i = 0; i < degree; ++i) tuples *= order - 1;
    full_index.resize(tuples);
    for (std::size_t a = 0; a < tuples; ++a) {
      std::size_t rest = a, full = 0, scale = 1;
      for (std::size_t i = 0; i < degree; ++i) {
        full += (rest % (order - 1) + 1) * scale;
        rest /= order - 1;
        scale *= order;
      }
      full_index[a] = full;
    }
  }

  std::size_t columns() const { return tuples * rank; }

  /// Layout index of a tuple, or npos if it contains the identity.
  std::size_t index_of(const std::size_t* t, std::size_t len) const {
    std::size_t idx = 0, scale = 1;
    for (std::size_t i = 0; i < len; ++i) {
      if (t[i] == 0) return FiniteGroup::npos;
      idx += (t[i] - 1) * scale;
      scale *= order - 1;
    }
    return idx;
  }

  IntVector to_column(const Cochain& c) const {
    IntVector x(columns());
    for (std::size_t a = 0; a < tuples; ++a)
      for (std::size_t i = 0; i < rank; ++i) x[a * rank + i] = c.values[full_index[a]][i];
    return x;
  }

  Cochain to_cochain(const IntVector& x) const {
    Cochain c(degree, order, rank);
    for (std::size_t a = 0; a < tuples; ++a)
      for (std::size_t i = 0; i < rank; ++i) c.values[full_index[a]][i] = x[a * rank + i];
    return c;
  }
};

/// Matrix of the coboundary on normalized d-cochains, restricted to rows whose
/// first argument lies in `first` (all other arguments non-identity).
/// Row ((a + |first| * rest) * k + i), column (tuple * k + j).
inline Matrix<std::int64_t> coboundary_matrix(const GModule& m, std::size_t d, const std::vector<std::size_t>& first) {
  const FiniteGroup& g = m.group();
  const std::size_t k = m.rank();
  TupleLayout src(g.order(), d, k), rest(g.order(), d, k);
  Matrix<std::int64_t> out(first.size() * rest.tuples * k, src.columns(), 0);
  std::vector<Matrix<std::int64_t>> acts;
  for (std::size_t x = 0; x < g.order(); ++x) {
    Matrix<std::int64_t> a(k, k, 0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        require(fits_int64(m.action(x)(i, j)), ErrorCode::SizeBudgetExceeded, "action entry too large");
        a(i, j) = static_cast<std::int64_t>(m.action(x)(i, j));
      }
    acts.push_back(std::move(a));
  }
  std::vector<std::size_t> t(d + 1), face(d);
  for (std::size_t r = 0; r < rest.tuples; ++r) {
    // decode rest tuple (g_1, .., g_d)
    std::size_t code = r;
    for (std::size_t i = 0; i < d; ++i) {
      t[i + 1] = code % (g.order() - 1) + 1;
      code /= g.order() - 1;
    }
    for (std::size_t a = 0; a < first.size(); ++a) {
      t[0] = first[a];
      const std::size_t row0 = (a + first.size() * r) * k;
      // g_0 . c(g_1, .., g_d)
      std::size_t blk = src.index_of(t.data() + 1, d);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) out(row0 + i, blk * k + j) += acts[t[0]](i, j);
      for (std::size_t j = 1; j <= d; ++j) {
        for (std::size_t i = 0, w = 0; i <= d; ++i) {
          if (i == j) continue;
          face[w++] = i == j - 1 ? g.mul(t[j - 1], t[j]) : t[i];
        }
        std::size_t b = src.index_of(face.data(), d);
        if (b == FiniteGroup::npos) continue;
        for (std::size_t i = 0; i < k; ++i) out(row0 + i, b * k + i) += (j % 2 ? -1 : 1);
      }
      std::size_t b = src.index_of(t.data(), d);
      if (b != FiniteGroup::npos)
        for (std::size_t i = 0; i < k; ++i) out(row0 + i, b * k + i) += ((d + 1) % 2 ? -1 : 1);
    }
  }
  return out;
}

inline std::vector<std::size_t> non_identity_elements(const FiniteGroup& g) {
  std::vector<std::size_t> v;
  for (std::size_t x = 1; x < g.order(); ++x) v.push_back(x);
  return v;
}

inline IntMatrix to_integer_matrix(const Matrix<std::int64_t>& a) {
  IntMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  return out;
}

}  // namespace detail

/// H^n(G, M) for n >= 0 with explicit cocycle representatives.
///
/// Classes are standard coordinates of group(). Cocycles passed to class_of
/// must be normalized for n >= 3; degree 1 and 2 cocycles are normalized
/// automatically.
class Cohomology {
 public:
  Cohomology(GModule m, std::size_t degree, CohomologyOptions options = {})
      : m_(std::move(m)), n_(degree), options_(options) {
    require(degree <= 4, ErrorCode::DegreeOverflow, "cohomology degree must be at most 4");
    if (n_ == 0) {
      init_degree_zero();
      return;
    }
    layout_ = detail::TupleLayout(m_.group().order(), n_, m_.rank());
    prev_layout_ = detail::TupleLayout(m_.group().order(), n_ - 1, m_.rank());
    require(layout_.columns() <= options_.max_unknowns, ErrorCode::SizeBudgetExceeded,
            "cochain space exceeds the size budget (" + std::to_string(layout_.columns()) + " unknowns)");
    const auto& gens = m_.group().generators();
    kernel_matrix_ = detail::coboundary_matrix(m_, n_, gens);
    prev_matrix_ = detail::coboundary_matrix(m_, n_ - 1, detail::non_identity_elements(m_.group()));

    const auto& mods = m_.moduli();
    bool all_free = true, all_finite = true;
    for (const auto& q : mods) {
      if (q == 0) all_finite = false;
      else all_free = false;
    }
    const Integer e = m_.abelian().torsion_exponent();
    if (options_.method == CohomologyOptions::Method::Generic || m_.rank() == 0) {
      init_generic();
    } else if (all_free) {
      init_free();
    } else if (all_finite && e < (Integer(1) << 31)) {
      init_finite(static_cast<std::int64_t>(e));
    } else {
      init_generic();
    }
  }

  const GModule& module() const noexcept { return m_; }
  std::size_t degree() const noexcept { return n_; }
  const FgAbelianGroup& group() const noexcept { return h_; }
  std::size_t rank() const noexcept { return h_.rank(); }

  /// Cohomology class of a cocycle, in standard coordinates of group().
  IntVector class_of(const Cochain& z) const {
    require(z.degree == n_ && z.group_order == m_.group().order(), ErrorCode::DimensionMismatch,
            "cochain has the wrong degree or group");
    if (n_ == 0) {
      auto c = fixed_.coordinates(m_.abelian(), z.values[0]);
      require(c.has_value(), ErrorCode::NotACocycle, "0-cochain is not invariant");
      return h_.reduce(*c);
    }
    Cochain normalized = normalize(z);
    IntVector x = layout_.to_column(normalized);
    require(in_kernel(x), ErrorCode::NotACocycle, "cochain is not a cocycle");
    return h_.reduce(coordinates(x));
  }

  /// Normalized cocycle representing the class with the given coordinates.
  Cochain representative(const IntVector& cls) const {
    IntVector c = h_.reduce(cls);
    Cochain out = Cochain::zero(m_, n_);
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i] != 0) out = add_cochains(m_, out, scale_cochain(m_, c[i], generators_[i]));
    return out;
  }

  const Cochain& generator(std::size_t i) const { return generators_[i]; }
  const std::vector<Cochain>& generators() const { return generators_; }

  /// A normalized (n-1)-cochain u with du = z, or nullopt if z is not a coboundary.
  std::optional<Cochain> bounding_cochain(const Cochain& z) const {
    require(n_ >= 1, ErrorCode::DegreeOverflow, "no coboundaries in degree 0");
    if (!h_.is_zero(class_of(z))) return std::nullopt;
    Cochain normalized = normalize(z);
    IntVector x = layout_.to_column(normalized);
    std::optional<IntVector> u = solve_bounding(x);
    require(u.has_value(), ErrorCode::Internal, "zero class without bounding cochain");
    Cochain result = reduce_cochain(m_, prev_layout_.to_cochain(*u));
    if (z.degree == 2) result = add_cochains(m_, result, normalization_offset(z));
    require(cochains_equal(m_, coboundary(m_, result), z), ErrorCode::Internal, "bounding cochain check failed");
    return result;
  }

  bool is_coboundary(const Cochain& z) const { return h_.is_zero(class_of(z)); }

 private:
  // For degree 2, z - d(constant z(1,1)) is normalized; degree 1 cocycles are normalized already.
  Cochain normalization_offset(const Cochain& z) const {
    Cochain u = Cochain::zero(m_, 1);
    if (z.degree == 2)
      for (auto& v : u.values) v = m_.abelian().reduce(z(0, 0));
    return u;
  }

  Cochain normalize(const Cochain& z) const {
    if (n_ >= 3) require(is_normalized(m_, z), ErrorCode::NotACocycle, "cocycles of degree 3 must be normalized");
    if (n_ == 2 && !m_.abelian().is_zero(z(0, 0)))
      return subtract_cochains(m_, z, coboundary(m_, normalization_offset(z)));
    return z;
  }

  bool in_kernel(const IntVector& x) const {
    const auto& mods = m_.moduli();
    const std::size_t k = m_.rank();
    for (std::size_t r = 0; r < kernel_matrix_.rows(); ++r) {
      Integer acc = 0;
      auto row = kernel_matrix_.row(r);
      for (std::size_t c = 0; c < row.size(); ++c)
        if (row[c] != 0 && x[c] != 0) acc += Integer(row[c]) * x[c];
      if (floor_mod(acc, mods[r % k]) != 0) return false;
    }
    return true;
  }

  void init_degree_zero() {
    fixed_ = m_.fixed_points(m_.group().generators());
    h_ = fixed_.group;
    for (std::size_t j = 0; j < h_.rank(); ++j)
      generators_.push_back(constant_cochain(m_, apply_hom(m_.abelian(), fixed_.inclusion, h_.generator(j))));
  }

  // Torsion-free coefficients: H^n is the torsion of C^n / B^n.
  void init_free() {
    IntMatrix dprev = detail::to_integer_matrix(prev_matrix_);
    auto res = integer_smith(dprev, SmithOptions{.left = true, .left_inverse = true, .right = true});
    free_ = std::make_shared<FreeData>();
    std::vector<Integer> mods;
    for (std::size_t i = 0; i < res.pivots.size(); ++i)
      if (res.pivots[i] > 1) {
        free_->torsion_rows.push_back(i);
        mods.push_back(res.pivots[i]);
      }
    h_ = FgAbelianGroup::from_moduli(mods);
    for (std::size_t t : free_->torsion_rows) {
      IntVector col = res.Uinv.column(t);
      generators_.push_back(reduce_cochain(m_, layout_.to_cochain(col)));
    }
    free_->pivots = std::move(res.pivots);
    free_->U = std::move(res.U);
    free_->V = std::move(res.V);
  }

  // Finite coefficients of exponent e: linear algebra over Z/e.
  void init_finite(std::int64_t e) {
    ring::ModularRing zr(e);
    const auto& mods = m_.moduli();
    const std::size_t k = m_.rank();
    std::vector<std::int64_t> scale(k);
    for (std::size_t i = 0; i < k; ++i) scale[i] = e / static_cast<std::int64_t>(mods[i]);
    Matrix<std::int64_t> a = kernel_matrix_;
    for (std::size_t r = 0; r < a.rows(); ++r)
      for (auto& v : a.row(r)) v = floor_mod(v * scale[r % k], e);
    auto res = smith_reduce(zr, std::move(a), SmithOptions{.right = true, .right_inverse = true});
    fin_ = std::make_shared<FiniteData>();
    fin_->e = e;
    fin_->scale = scale;
    const std::size_t cols = layout_.columns();
    for (std::size_t i = 0; i < cols; ++i) {
      std::int64_t g = i < res.pivots.size() ? res.pivots[i] : e;
      if (g > 1) {
        fin_->kept.push_back(i);
        fin_->orders.push_back(g);
      }
    }
    fin_->V = std::move(res.V);
    fin_->Vinv = std::move(res.Vinv);
    fin_->cols = cols;

    // Relations: coboundaries and multiples m_j e_j of unknowns with m_j < e.
    std::vector<IntVector> rels;
    for (std::size_t c = 0; c < prev_matrix_.cols(); ++c) {
      std::vector<std::int64_t> v(cols, 0);
      bool any = false;
      for (std::size_t r = 0; r < prev_matrix_.rows(); ++r)
        if (prev_matrix_(r, c) != 0) {
          v[r] = floor_mod(prev_matrix_(r, c), e);
          any = any || v[r] != 0;
        }
      if (any) rels.push_back(kernel_coords(v));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      std::int64_t mj = static_cast<std::int64_t>(mods[c % k]);
      if (mj == e) continue;
      std::vector<std::int64_t> v(cols, 0);
      v[c] = mj;
      rels.push_back(kernel_coords(v));
    }
    const std::size_t h0 = fin_->kept.size();
    IntMatrix rel(h0, rels.size() + h0);
    for (std::size_t j = 0; j < rels.size(); ++j)
      for (std::size_t i = 0; i < h0; ++i) rel(i, j) = rels[j][i];
    for (std::size_t i = 0; i < h0; ++i) rel(i, rels.size() + i) = fin_->orders[i];
    h_ = FgAbelianGroup::from_relations(h0, rel);
    for (std::size_t a = 0; a < h_.rank(); ++a) {
      IntVector t(h0);
      for (std::size_t i = 0; i < h0; ++i) t[i] = h_.from_standard_matrix()(i, a);
      generators_.push_back(cocycle_from_kernel_coords(t));
    }
  }

  // Coordinates t of an element x of the kernel over Z/e.
  IntVector kernel_coords(const std::vector<std::int64_t>& x) const {
    const std::int64_t e = fin_->e;
    const std::size_t cols = fin_->cols;
    std::vector<std::int64_t> y(cols, 0);
    for (std::size_t j = 0; j < cols; ++j) {
      if (x[j] == 0) continue;
      for (std::size_t i = 0; i < cols; ++i)
        if (fin_->Vinv(i, j) != 0) y[i] = (y[i] + fin_->Vinv(i, j) * x[j]) % e;
    }
    IntVector t(fin_->kept.size());
    std::size_t next = 0;
    for (std::size_t i = 0; i < cols; ++i) {
      if (next < fin_->kept.size() && fin_->kept[next] == i) {
        std::int64_t step = e / fin_->orders[next];
        require(y[i] % step == 0, ErrorCode::Internal, "kernel coordinate not divisible");
        t[next++] = y[i] / step;
      } else {
        require(y[i] == 0, ErrorCode::Internal, "vector outside the cocycle kernel");
      }
    }
    return t;
  }

  Cochain cocycle_from_kernel_coords(const IntVector& t) const {
    const std::int64_t e = fin_->e;
    const std::size_t cols = fin_->cols;
    IntVector x(cols, Integer(0));
    std::vector<std::int64_t> acc(cols, 0);
    for (std::size_t p = 0; p < fin_->kept.size(); ++p) {
      std::int64_t coef = static_cast<std::int64_t>(floor_mod(t[p], Integer(fin_->orders[p]))) *
                          (e / fin_->orders[p]) % e;
      if (coef == 0) continue;
      const std::size_t i = fin_->kept[p];
      for (std::size_t r = 0; r < cols; ++r)
        if (fin_->V(r, i) != 0) acc[r] = (acc[r] + coef * fin_->V(r, i)) % e;
    }
    for (std::size_t r = 0; r < cols; ++r) x[r] = acc[r];
    return reduce_cochain(m_, layout_.to_cochain(x));
  }

  // Generic route: kernel lattice and relations over Z with big integers.
  void init_generic() {
    const auto& mods = m_.moduli();
    const std::size_t k = m_.rank();
    const std::size_t cols = layout_.columns();
    std::vector<Integer> row_mods(kernel_matrix_.rows());
    for (std::size_t r = 0; r < row_mods.size(); ++r) row_mods[r] = mods[r % k];
    std::vector<Integer> col_mods(cols);
    for (std::size_t c = 0; c < cols; ++c) col_mods[c] = mods[c % k];
    gen_ = std::make_shared<GenericData>();
    gen_->cochains = FgAbelianGroup::from_moduli(col_mods);
    IntMatrix dk = detail::to_integer_matrix(kernel_matrix_);
    std::vector<IntVector> kernel;
    if (dk.rows() == 0) {
      for (std::size_t c = 0; c < cols; ++c) kernel.push_back(gen_->cochains.generator(c));
    } else {
      LinearSolver solver(dk, diagonal_relations(row_mods));
      kernel = solver.kernel();
    }
    gen_->cocycles = make_subgroup(gen_->cochains, std::move(kernel));
    const FgAbelianGroup& zg = gen_->cocycles.group;
    std::vector<IntVector> rels;
    for (std::size_t c = 0; c < prev_matrix_.cols(); ++c) {
      IntVector v(cols);
      for (std::size_t r = 0; r < cols; ++r) v[r] = prev_matrix_(r, c);
      auto coords = gen_->cocycles.coordinates(gen_->cochains, v);
      require(coords.has_value(), ErrorCode::Internal, "coboundary outside the cocycles");
      rels.push_back(*coords);
    }
    IntMatrix rel = hconcat(generators_matrix(zg.rank(), rels), zg.standard_relations());
    h_ = FgAbelianGroup::from_relations(zg.rank(), rel);
    for (std::size_t a = 0; a < h_.rank(); ++a) {
      IntVector t(zg.rank());
      for (std::size_t i = 0; i < zg.rank(); ++i) t[i] = h_.from_standard_matrix()(i, a);
      IntVector x = gen_->cochains.reduce(gen_->cocycles.inclusion * t);
      generators_.push_back(reduce_cochain(m_, layout_.to_cochain(x)));
    }
  }

  IntVector coordinates(const IntVector& x) const {
    if (free_) {
      IntVector y = free_->U * x;
      IntVector c;
      for (std::size_t t : free_->torsion_rows) c.push_back(y[t]);
      return c;
    }
    if (fin_) {
      std::vector<std::int64_t> v(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) v[i] = static_cast<std::int64_t>(floor_mod(x[i], Integer(fin_->e)));
      return h_.to_standard(kernel_coords(v));
    }
    auto c = gen_->cocycles.coordinates(gen_->cochains, x);
    require(c.has_value(), ErrorCode::Internal, "cocycle outside the kernel lattice");
    return h_.to_standard(*c);
  }

  std::optional<IntVector> solve_bounding(const IntVector& x) const {
    if (free_) {
      IntVector y = free_->U * x;
      IntVector w(free_->V.rows(), Integer(0));
      for (std::size_t i = 0; i < y.size(); ++i) {
        if (i < free_->pivots.size()) {
          if (y[i] % free_->pivots[i] != 0) return std::nullopt;
          w[i] = y[i] / free_->pivots[i];
        } else if (y[i] != 0) {
          return std::nullopt;
        }
      }
      return free_->V * w;
    }
    std::call_once(*bounding_once_, [this] {
      const auto& mods = m_.moduli();
      const std::size_t k = m_.rank();
      std::vector<Integer> row_mods(prev_matrix_.rows());
      for (std::size_t r = 0; r < row_mods.size(); ++r) row_mods[r] = mods[r % k];
      bounding_solver_ = std::make_shared<LinearSolver>(detail::to_integer_matrix(prev_matrix_),
                                                        diagonal_relations(row_mods));
    });
    return bounding_solver_->solve(x);
  }

  struct FreeData {
    std::vector<Integer> pivots;
    std::vector<std::size_t> torsion_rows;
    IntMatrix U, V;
  };
  struct FiniteData {
    std::int64_t e = 1;
    std::vector<std::int64_t> scale;
    std::vector<std::size_t> kept;
    std::vector<std::int64_t> orders;
    std::size_t cols = 0;
    Matrix<std::int64_t> V, Vinv;
  };
  struct GenericData {
    FgAbelianGroup cochains;
    Subgroup cocycles;
  };

  GModule m_;
  std::size_t n_;
  CohomologyOptions options_;
  detail::TupleLayout layout_, prev_layout_;
  Matrix<std::int64_t> kernel_matrix_, prev_matrix_;
  FgAbelianGroup h_;
  std::vector<Cochain> generators_;
  Subgroup fixed_;
  std::shared_ptr<FreeData> free_;
  std::shared_ptr<FiniteData> fin_;
  std::shared_ptr<GenericData> gen_;
  std::shared_ptr<std::once_flag> bounding_once_ = std::make_shared<std::once_flag>();
  mutable std::shared_ptr<LinearSolver> bounding_solver_;
};

}  // namespace seventerm
