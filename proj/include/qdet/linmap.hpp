#ifndef QDET_LINMAP_HPP
#define QDET_LINMAP_HPP

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "errors.hpp"
#include "grid.hpp"
#include "scalar.hpp"

namespace qdet {

/// Linear mapping of an algebra in standard representation
/// f = sum_{k,l} f^{kl} e_k (x) e_l, acting as x -> sum f^{kl} e_k x e_l.
///
/// Equality compares coefficients. For algebras where `maps_faithful()` is
/// false (the commutative ones with dim > 1), distinct coefficient grids can
/// act identically; use `same_mapping` to compare actions.
class LinMap {
public:
  LinMap() = default;
  LinMap(AlgebraPtr alg, std::vector<Scalar> coeffs) : alg_(std::move(alg)), coeffs_(std::move(coeffs)) {
    if (!alg_)
      throw dimension_error("mapping without algebra");
    const std::size_t n = alg_->dim();
    if (coeffs_.size() != n * n)
      throw dimension_error("mapping coefficient grid must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  LinMap(AlgebraPtr alg, const Grid& coeffs) : alg_(std::move(alg)) {
    if (!alg_)
      throw dimension_error("mapping without algebra");
    const std::size_t n = alg_->dim();
    if (coeffs.rows() != n || coeffs.cols() != n)
      throw dimension_error("mapping coefficient grid must be " + std::to_string(n) + "x" + std::to_string(n));
    coeffs_.reserve(n * n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l)
        coeffs_.push_back(coeffs(k, l));
  }

  static LinMap zero(const AlgebraPtr& alg) { return {alg, std::vector<Scalar>(alg->dim() * alg->dim())}; }
  static LinMap identity(const AlgebraPtr& alg) {
    LinMap f = zero(alg);
    f.coeffs_[0] = 1;
    return f;
  }

  const AlgebraPtr& algebra() const noexcept { return alg_; }
  std::size_t dim() const noexcept { return alg_ ? alg_->dim() : 0; }
  const Scalar& coeff(std::size_t k, std::size_t l) const { return coeffs_[k * dim() + l]; }
  const std::vector<Scalar>& coeffs() const noexcept { return coeffs_; }

  Grid coeff_grid() const {
    const std::size_t n = dim();
    Grid g(n, n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l)
        g(k, l) = coeff(k, l);
    return g;
  }

  bool is_zero() const {
    for (const auto& s : coeffs_)
      if (sgn(s) != 0)
        return false;
    return true;
  }

  friend bool operator==(const LinMap& f, const LinMap& g) {
    return f.coeffs_ == g.coeffs_ && Algebra::same(f.alg_, g.alg_);
  }

  friend LinMap operator+(const LinMap& f, const LinMap& g) {
    require_same_algebra(f.alg_, g.alg_, "map_add");
    LinMap r = f;
    for (std::size_t i = 0; i < r.coeffs_.size(); ++i)
      r.coeffs_[i] += g.coeffs_[i];
    return r;
  }

  friend LinMap operator-(const LinMap& f, const LinMap& g) {
    require_same_algebra(f.alg_, g.alg_, "map_sub");
    LinMap r = f;
    for (std::size_t i = 0; i < r.coeffs_.size(); ++i)
      r.coeffs_[i] -= g.coeffs_[i];
    return r;
  }

  friend LinMap operator-(const LinMap& f) { return Scalar(-1) * f; }

  friend LinMap operator*(const Scalar& s, const LinMap& f) {
    LinMap r = f;
    for (auto& c : r.coeffs_)
      c *= s;
    return r;
  }

private:
  AlgebraPtr alg_;
  std::vector<Scalar> coeffs_;
};

/// The rank-1 mapping a (x) b : x -> a x b.
struct TensorTerm {
  AlgElement left;
  AlgElement right;
};

/// f^{kl} = sum_s (a_s)^k (b_s)^l. An empty term list gives the zero mapping.
inline LinMap from_terms(const AlgebraPtr& alg, std::span<const TensorTerm> terms) {
  const std::size_t n = alg->dim();
  std::vector<Scalar> c(n * n);
  for (const auto& [a, b] : terms) {
    require_same_algebra(alg, a.algebra(), "from_terms");
    require_same_algebra(alg, b.algebra(), "from_terms");
    for (std::size_t k = 0; k < n; ++k) {
      if (sgn(a[k]) == 0)
        continue;
      for (std::size_t l = 0; l < n; ++l)
        c[k * n + l] += a[k] * b[l];
    }
  }
  return {alg, std::move(c)};
}

inline LinMap from_terms(const AlgebraPtr& alg, std::initializer_list<TensorTerm> terms) {
  return from_terms(alg, std::span<const TensorTerm>(terms.begin(), terms.size()));
}

inline LinMap tensor(const AlgElement& a, const AlgElement& b) {
  const TensorTerm t{a, b};
  return from_terms(a.algebra(), std::span<const TensorTerm>(&t, 1));
}

/// x -> a x, the mapping identified with the element a.
inline LinMap left_mul(const AlgElement& a) { return tensor(a, AlgElement::unit(a.algebra())); }

/// x -> x b
inline LinMap right_mul(const AlgElement& b) { return tensor(AlgElement::unit(b.algebra()), b); }

inline LinMap map_add(const LinMap& f, const LinMap& g) { return f + g; }
inline LinMap map_scale(const Scalar& s, const LinMap& f) { return s * f; }

/// sum_{k,l} f^{kl} e_k x e_l, expanded through the structure constants.
inline AlgElement apply(const LinMap& f, const AlgElement& x) {
  require_same_algebra(f.algebra(), x.algebra(), "apply");
  const auto& alg = f.algebra();
  const std::size_t n = alg->dim();

  // e_k x for every k with a nonzero row in f.
  std::vector<Scalar> out(n);
  std::vector<Scalar> kx(n);
  for (std::size_t k = 0; k < n; ++k) {
    bool row_used = false;
    for (std::size_t l = 0; l < n && !row_used; ++l)
      row_used = sgn(f.coeff(k, l)) != 0;
    if (!row_used)
      continue;
    std::fill(kx.begin(), kx.end(), Scalar(0));
    for (std::size_t i = 0; i < n; ++i)
      if (sgn(x[i]) != 0)
        for (const auto& [m, c] : alg->products(k, i))
          kx[m] += x[i] * c;
    for (std::size_t l = 0; l < n; ++l) {
      const Scalar& fkl = f.coeff(k, l);
      if (sgn(fkl) == 0)
        continue;
      for (std::size_t m = 0; m < n; ++m)
        if (sgn(kx[m]) != 0)
          for (const auto& [j, c] : alg->products(m, l))
            out[j] += fkl * kx[m] * c;
    }
  }
  return {alg, std::move(out)};
}

/// f after g: apply(compose(f, g), x) == apply(f, apply(g, x)).
///
/// On rank-1 terms (a (x) b) o (c (x) d) = (a c) (x) (d b), so in standard
/// representation h^{rs} = sum f^{kl} g^{pq} C^r_{kp} C^s_{ql}.
inline LinMap compose(const LinMap& f, const LinMap& g) {
  require_same_algebra(f.algebra(), g.algebra(), "compose");
  const auto& alg = f.algebra();
  const std::size_t n = alg->dim();
  std::vector<Scalar> h(n * n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      const Scalar& fkl = f.coeff(k, l);
      if (sgn(fkl) == 0)
        continue;
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) {
          const Scalar& gpq = g.coeff(p, q);
          if (sgn(gpq) == 0)
            continue;
          const Scalar fg = fkl * gpq;
          for (const auto& [r, ckp] : alg->products(k, p))
            for (const auto& [s, cql] : alg->products(q, l))
              h[r * n + s] += fg * ckp * cql;
        }
    }
  return {alg, std::move(h)};
}

/// Coordinate matrix of f: coords(apply(f, x)) == operator_matrix(f) * coords(x).
inline Grid operator_matrix(const LinMap& f) {
  const auto& alg = f.algebra();
  const std::size_t n = alg->dim();
  Grid m(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      const Scalar& fkl = f.coeff(k, l);
      if (sgn(fkl) == 0)
        continue;
      const Grid& b = alg->basis_operator(k, l);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
          if (sgn(b(j, i)) != 0)
            m(j, i) += fkl * b(j, i);
    }
  return m;
}

/// Standard representation of the operator with coordinate matrix m.
/// Free variables of the underlying n^2 x n^2 system are set to zero.
/// Throws not_representable_error when m is outside the span of the maps
/// x -> e_k x e_l.
inline LinMap from_operator_matrix(const AlgebraPtr& alg, const Grid& m) {
  const std::size_t n = alg->dim();
  if (m.rows() != n || m.cols() != n)
    throw dimension_error("operator matrix must be " + std::to_string(n) + "x" + std::to_string(n));
  std::vector<Scalar> rhs(n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      rhs[j * n + i] = m(j, i);
  LinearSolution sol = solve_eliminated(alg->representation_system(), rhs);
  if (!sol.consistent)
    throw not_representable_error("operator is not a combination of maps x -> a x b in algebra '" +
                                  alg->name() + "'");
  return {alg, std::move(sol.particular)};
}

/// Compares actions rather than coefficients.
inline bool same_mapping(const LinMap& f, const LinMap& g) {
  return Algebra::same(f.algebra(), g.algebra()) && operator_matrix(f) == operator_matrix(g);
}

inline bool is_invertible(const LinMap& f) { return eliminate(operator_matrix(f)).full_rank_square(); }

/// Throws singular_error when the operator is not invertible.
inline LinMap invert_map(const LinMap& f) {
  const auto inv = inverse(operator_matrix(f));
  if (!inv)
    throw singular_error("linear mapping is not invertible");
  return from_operator_matrix(f.algebra(), *inv);
}

} // namespace qdet

#endif // QDET_LINMAP_HPP
