#pragma once

#include "seventerm/errors.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace seventerm {

/// Finite group given by a dense multiplication table. Element 0 is the identity.
class FiniteGroup {
 public:
  using Element = std::size_t;
  static constexpr Element npos = std::numeric_limits<Element>::max();
  /// Orders up to this bound get an exhaustive associativity check; larger
  /// tables are checked on kAssociativitySamples random triples.
  static constexpr std::size_t kExhaustiveAssociativity = 512;
  static constexpr std::size_t kAssociativitySamples = 1u << 20;

  FiniteGroup() : FiniteGroup(std::vector<std::vector<Element>>{{0}}) {}

  /// Validates closure, identity at index 0, inverses and associativity.
  explicit FiniteGroup(const std::vector<std::vector<Element>>& table, std::vector<std::string> labels = {})
      : n_(table.size()) {
    require(n_ > 0, ErrorCode::InvalidGroup, "group table is empty");
    require(n_ <= 100000, ErrorCode::SizeBudgetExceeded, "group order too large");
    mul_.resize(n_ * n_);
    for (Element a = 0; a < n_; ++a) {
      require(table[a].size() == n_, ErrorCode::InvalidGroup, "group table is not square");
      std::vector<bool> seen(n_, false);
      for (Element b = 0; b < n_; ++b) {
        Element c = table[a][b];
        require(c < n_, ErrorCode::InvalidGroup, "group table entry out of range");
        require(!seen[c], ErrorCode::InvalidGroup, "group table row is not a permutation");
        seen[c] = true;
        mul_[a * n_ + b] = static_cast<std::uint32_t>(c);
      }
    }
    for (Element a = 0; a < n_; ++a)
      require(mul(0, a) == a && mul(a, 0) == a, ErrorCode::InvalidGroup, "element 0 is not the identity");
    inv_.assign(n_, 0);
    for (Element a = 0; a < n_; ++a) {
      Element found = npos;
      for (Element b = 0; b < n_; ++b)
        if (mul(a, b) == 0) found = b;
      require(found != npos && mul(found, a) == 0, ErrorCode::InvalidGroup, "element without two-sided inverse");
      inv_[a] = static_cast<std::uint32_t>(found);
    }
    if (n_ <= kExhaustiveAssociativity) {
      for (Element a = 0; a < n_; ++a)
        for (Element b = 0; b < n_; ++b) {
          Element ab = mul(a, b);
          for (Element c = 0; c < n_; ++c)
            require(mul(ab, c) == mul(a, mul(b, c)), ErrorCode::InvalidGroup, "multiplication is not associative");
        }
    } else {
      std::mt19937_64 rng(n_);
      std::uniform_int_distribution<Element> pick(0, n_ - 1);
      for (std::size_t t = 0; t < kAssociativitySamples; ++t) {
        Element a = pick(rng), b = pick(rng), c = pick(rng);
        require(mul(mul(a, b), c) == mul(a, mul(b, c)), ErrorCode::InvalidGroup, "multiplication is not associative");
      }
    }
    if (labels.empty()) {
      for (Element a = 0; a < n_; ++a) labels.push_back("g" + std::to_string(a));
    }
    require(labels.size() == n_, ErrorCode::DimensionMismatch, "label count differs from group order");
    labels_ = std::move(labels);
    generators_ = compute_generators();
  }

  std::size_t order() const noexcept { return n_; }
  Element identity() const noexcept { return 0; }
  Element mul(Element a, Element b) const { return mul_[a * n_ + b]; }
  Element inv(Element a) const { return inv_[a]; }
  Element mul3(Element a, Element b, Element c) const { return mul(mul(a, b), c); }
  /// g * x * g^-1
  Element conjugate(Element g, Element x) const { return mul3(g, x, inv(g)); }
  const std::string& label(Element a) const { return labels_[a]; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// A small generating set (greedy, in index order).
  const std::vector<Element>& generators() const { return generators_; }

  Element power(Element a, long long k) const {
    Element base = k < 0 ? inv(a) : a;
    unsigned long long e = k < 0 ? static_cast<unsigned long long>(-k) : static_cast<unsigned long long>(k);
    Element r = 0;
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  std::size_t element_order(Element a) const {
    std::size_t k = 1;
    for (Element x = a; x != 0; x = mul(x, a)) ++k;
    return k;
  }

  bool is_abelian() const {
    for (Element a = 0; a < n_; ++a)
      for (Element b = 0; b < n_; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  std::vector<std::vector<Element>> table() const {
    std::vector<std::vector<Element>> t(n_, std::vector<Element>(n_));
    for (Element a = 0; a < n_; ++a)
      for (Element b = 0; b < n_; ++b) t[a][b] = mul(a, b);
    return t;
  }

  /// Sorted element list of the subgroup generated by gens.
  std::vector<Element> generated_subgroup(const std::vector<Element>& gens) const {
    std::vector<bool> in(n_, false);
    std::vector<Element> elems{0};
    in[0] = true;
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (Element g : gens) {
        Element x = mul(elems[i], g);
        if (!in[x]) {
          in[x] = true;
          elems.push_back(x);
        }
      }
    std::sort(elems.begin(), elems.end());
    return elems;
  }

 private:
  std::vector<Element> compute_generators() const {
    std::vector<Element> gens;
    std::vector<bool> in(n_, false);
    in[0] = true;
    std::size_t covered = 1;
    for (Element a = 1; a < n_ && covered < n_; ++a) {
      if (in[a]) continue;
      gens.push_back(a);
      auto sub = generated_subgroup(gens);
      std::fill(in.begin(), in.end(), false);
      for (Element x : sub) in[x] = true;
      covered = sub.size();
    }
    return gens;
  }

  std::size_t n_ = 0;
  std::vector<std::uint32_t> mul_;
  std::vector<std::uint32_t> inv_;
  std::vector<std::string> labels_;
  std::vector<Element> generators_;
};

/// Builds a group from an element list (identity first) and a multiplication.
template <class T, class Mul>
FiniteGroup group_from_elements(const std::vector<T>& elements, Mul mul, std::vector<std::string> labels = {}) {
  std::map<T, std::size_t> index;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    bool inserted = index.emplace(elements[i], i).second;
    require(inserted, ErrorCode::InvalidGroup, "duplicate group element");
  }
  std::vector<std::vector<std::size_t>> table(elements.size(), std::vector<std::size_t>(elements.size()));
  for (std::size_t a = 0; a < elements.size(); ++a)
    for (std::size_t b = 0; b < elements.size(); ++b) {
      auto it = index.find(mul(elements[a], elements[b]));
      require(it != index.end(), ErrorCode::InvalidGroup, "element set is not closed under multiplication");
      table[a][b] = it->second;
    }
  return FiniteGroup(table, std::move(labels));
}

/// Closure of a generating set under mul; identity placed first.
template <class T, class Mul>
std::vector<T> close_under(const T& identity, const std::vector<T>& gens, Mul mul) {
  std::vector<T> elems{identity};
  std::map<T, bool> seen{{identity, true}};
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const T& g : gens) {
      T x = mul(elems[i], g);
      if (seen.emplace(x, true).second) elems.push_back(x);
    }
  return elems;
}

/// Group homomorphism given by images of all elements; validated on construction.
inline void check_group_hom(const FiniteGroup& source, const FiniteGroup& target,
                            const std::vector<std::size_t>& map) {
  require(map.size() == source.order(), ErrorCode::DimensionMismatch, "homomorphism image count");
  for (std::size_t a = 0; a < source.order(); ++a) {
    require(map[a] < target.order(), ErrorCode::InvalidInput, "homomorphism image out of range");
    for (std::size_t b = 0; b < source.order(); ++b)
      require(map[source.mul(a, b)] == target.mul(map[a], map[b]), ErrorCode::NotAMorphismOfExtensions,
              "map is not a group homomorphism");
  }
}

/// G together with a normal subgroup N, quotient Q = G/N and the canonical
/// section alpha (least element index in each coset, alpha(1) = 1).
class NormalPair {
 public:
  using Element = std::size_t;

  NormalPair(FiniteGroup g, std::vector<Element> n_elements) : g_(std::move(g)) {
    std::sort(n_elements.begin(), n_elements.end());
    n_elements.erase(std::unique(n_elements.begin(), n_elements.end()), n_elements.end());
    require(!n_elements.empty() && n_elements.front() == 0, ErrorCode::NotNormal, "subgroup must contain identity");
    const std::size_t ord = g_.order();
    n_index_.assign(ord, FiniteGroup::npos);
    for (std::size_t i = 0; i < n_elements.size(); ++i) {
      require(n_elements[i] < ord, ErrorCode::InvalidInput, "subgroup element out of range");
      n_index_[n_elements[i]] = i;
    }
    for (Element a : n_elements)
      for (Element b : n_elements)
        require(in_n(g_.mul(a, b)), ErrorCode::NotNormal, "subgroup is not closed under multiplication");
    for (Element x = 0; x < ord; ++x)
      for (Element a : n_elements)
        require(in_n(g_.conjugate(x, a)), ErrorCode::NotNormal, "subgroup is not normal");
    n_elems_ = n_elements;

    // N as an abstract group with its own table.
    std::vector<std::vector<std::size_t>> nt(n_elems_.size(), std::vector<std::size_t>(n_elems_.size()));
    std::vector<std::string> nl;
    for (std::size_t i = 0; i < n_elems_.size(); ++i) {
      nl.push_back(g_.label(n_elems_[i]));
      for (std::size_t j = 0; j < n_elems_.size(); ++j) nt[i][j] = n_index_[g_.mul(n_elems_[i], n_elems_[j])];
    }
    n_ = FiniteGroup(nt, nl);

    // Cosets gN ordered by least element.
    proj_.assign(ord, FiniteGroup::npos);
    for (Element x = 0; x < ord; ++x) {
      if (proj_[x] != FiniteGroup::npos) continue;
      std::size_t q = section_.size();
      section_.push_back(x);
      for (Element a : n_elems_) proj_[g_.mul(x, a)] = q;
    }
    const std::size_t qo = section_.size();
    std::vector<std::vector<std::size_t>> qt(qo, std::vector<std::size_t>(qo));
    std::vector<std::string> ql;
    for (std::size_t a = 0; a < qo; ++a) {
      ql.push_back(g_.label(section_[a]) + "N");
      for (std::size_t b = 0; b < qo; ++b) qt[a][b] = proj_[g_.mul(section_[a], section_[b])];
    }
    q_ = FiniteGroup(qt, ql);
  }

  const FiniteGroup& g() const noexcept { return g_; }
  const FiniteGroup& n() const noexcept { return n_; }
  const FiniteGroup& q() const noexcept { return q_; }

  bool in_n(Element x) const { return n_index_[x] != FiniteGroup::npos; }
  /// Index in n() of an element of G lying in N.
  std::size_t n_index(Element x) const { return n_index_[x]; }
  /// Element of G for an index of n().
  Element n_element(std::size_t i) const { return n_elems_[i]; }
  const std::vector<Element>& n_elements() const { return n_elems_; }
  std::size_t project(Element x) const { return proj_[x]; }
  Element section(std::size_t q) const { return section_[q]; }
  const std::vector<Element>& section_table() const { return section_; }

  /// f_alpha(q1, q2) = alpha(q1) alpha(q2) alpha(q1 q2)^-1 as an element of G (in N).
  Element factor_set(std::size_t q1, std::size_t q2) const {
    return g_.mul3(section_[q1], section_[q2], g_.inv(section_[q_.mul(q1, q2)]));
  }

 private:
  FiniteGroup g_, n_, q_;
  std::vector<Element> n_elems_;
  std::vector<std::size_t> n_index_;
  std::vector<std::size_t> proj_;
  std::vector<Element> section_;
};

}  // namespace seventerm
