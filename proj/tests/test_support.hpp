#ifndef QDET_TESTS_TEST_SUPPORT_HPP
#define QDET_TESTS_TEST_SUPPORT_HPP

// Random generators and independent oracles shared by the test binaries.
// Oracles here work from raw structure constants and plain rational
// matrices; none of them call into the code paths they check.

#include <cstddef>
#include <random>
#include <vector>

#include <qdet/qdet.hpp>

namespace qdet::testing {

using Rng = std::mt19937_64;

inline Scalar random_scalar(Rng& rng, int lo = -3, int hi = 3) {
  return Scalar(std::uniform_int_distribution<int>(lo, hi)(rng));
}

inline AlgElement random_element(Rng& rng, const AlgebraPtr& alg, int lo = -3, int hi = 3) {
  std::vector<Scalar> c;
  for (std::size_t i = 0; i < alg->dim(); ++i)
    c.push_back(random_scalar(rng, lo, hi));
  return {alg, std::move(c)};
}

/// Random coefficient grid with entries in [lo, hi].
inline LinMap random_map(Rng& rng, const AlgebraPtr& alg, int lo = -3, int hi = 3) {
  std::vector<Scalar> c;
  for (std::size_t i = 0; i < alg->dim() * alg->dim(); ++i)
    c.push_back(random_scalar(rng, lo, hi));
  return {alg, std::move(c)};
}

/// Sum of 1..max_terms random rank-1 terms a (x) b.
inline LinMap random_term_map(Rng& rng, const AlgebraPtr& alg, int max_terms = 2, int lo = -2, int hi = 2) {
  const int count = std::uniform_int_distribution<int>(1, max_terms)(rng);
  std::vector<TensorTerm> terms;
  for (int t = 0; t < count; ++t)
    terms.push_back({random_element(rng, alg, lo, hi), random_element(rng, alg, lo, hi)});
  return from_terms(alg, terms);
}

inline MapMatrix random_term_matrix(Rng& rng, const AlgebraPtr& alg, std::size_t rows, std::size_t cols,
                                    int max_terms = 2) {
  MapMatrix a(alg, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      a.set(i, j, random_term_map(rng, alg, max_terms));
  return a;
}

inline MapMatrix random_map_matrix(Rng& rng, const AlgebraPtr& alg, std::size_t rows, std::size_t cols) {
  MapMatrix a(alg, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      a.set(i, j, random_map(rng, alg, -2, 2));
  return a;
}

/// Scalar matrix as a matrix of mappings over the one-dimensional field algebra.
inline MapMatrix field_matrix(const std::vector<std::vector<Scalar>>& rows) {
  const AlgebraPtr f = builtin_algebra("field");
  MapMatrix a(f, rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      a.set(i, j, LinMap(f, std::vector<Scalar>{rows[i][j]}));
  return a;
}

inline std::vector<std::vector<Scalar>> random_rational_rows(Rng& rng, std::size_t n, int lo = -5, int hi = 5) {
  std::vector<std::vector<Scalar>> r(n, std::vector<Scalar>(n));
  for (auto& row : r)
    for (auto& v : row)
      v = random_scalar(rng, lo, hi);
  return r;
}

// ---- oracles ---------------------------------------------------------------

/// x*y straight from the constants, no product table.
inline std::vector<Scalar> naive_mul(const StructureConstants& c, const std::vector<Scalar>& x,
                                     const std::vector<Scalar>& y) {
  const std::size_t n = c.dim();
  std::vector<Scalar> r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        r[k] += x[i] * y[j] * c(i, j, k);
  return r;
}

inline std::vector<Scalar> basis_vec(std::size_t n, std::size_t i) {
  std::vector<Scalar> v(n);
  v[i] = 1;
  return v;
}

/// Brute force: every (e_i e_j) e_k == e_i (e_j e_k) and e_0 is a unit.
inline bool naive_associative_unital(const StructureConstants& c) {
  const std::size_t n = c.dim();
  for (std::size_t i = 0; i < n; ++i) {
    const auto ei = basis_vec(n, i);
    if (naive_mul(c, basis_vec(n, 0), ei) != ei || naive_mul(c, ei, basis_vec(n, 0)) != ei)
      return false;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const auto ej = basis_vec(n, j), ek = basis_vec(n, k);
        if (naive_mul(c, naive_mul(c, ei, ej), ek) != naive_mul(c, ei, naive_mul(c, ej, ek)))
          return false;
      }
  }
  return true;
}

/// x -> sum_s a_s x b_s evaluated with element products.
inline AlgElement apply_terms(const std::vector<TensorTerm>& terms, const AlgElement& x) {
  AlgElement r = AlgElement::zero(x.algebra());
  for (const auto& [a, b] : terms)
    r = r + (a * x) * b;
  return r;
}

/// Determinant by cofactor expansion along the first row.
inline Scalar cofactor_det(const std::vector<std::vector<Scalar>>& m) {
  const std::size_t n = m.size();
  if (n == 1)
    return m[0][0];
  Scalar d = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<Scalar>> sub;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Scalar> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c)
          row.push_back(m[r][k]);
      sub.push_back(std::move(row));
    }
    const Scalar term = m[0][c] * cofactor_det(sub);
    d += (c % 2 == 0) ? term : Scalar(-term);
  }
  return d;
}

inline std::vector<std::vector<Scalar>> drop(const std::vector<std::vector<Scalar>>& m, std::size_t row,
                                             std::size_t col) {
  std::vector<std::vector<Scalar>> out;
  for (std::size_t r = 0; r < m.size(); ++r) {
    if (r == row)
      continue;
    std::vector<Scalar> v;
    for (std::size_t c = 0; c < m.size(); ++c)
      if (c != col)
        v.push_back(m[r][c]);
    out.push_back(std::move(v));
  }
  return out;
}

/// Classical inverse through the adjugate: inv[i][j] = (-1)^{i+j} det(drop(j,i)) / det.
inline std::vector<std::vector<Scalar>> adjugate_inverse(const std::vector<std::vector<Scalar>>& m) {
  const std::size_t n = m.size();
  const Scalar d = cofactor_det(m);
  std::vector<std::vector<Scalar>> inv(n, std::vector<Scalar>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Scalar cof = n == 1 ? Scalar(1) : cofactor_det(drop(m, j, i));
      inv[i][j] = ((i + j) % 2 == 0 ? cof : Scalar(-cof)) / d;
    }
  return inv;
}

/// Rank by fraction-free (Bareiss-style) elimination over the integers;
/// the input is scaled row-wise to integers first.
inline std::size_t bareiss_rank(const Grid& g) {
  std::vector<std::vector<mpz_class>> a(g.rows(), std::vector<mpz_class>(g.cols()));
  for (std::size_t r = 0; r < g.rows(); ++r) {
    mpz_class l = 1;
    for (std::size_t c = 0; c < g.cols(); ++c)
      l = lcm(l, g(r, c).get_den());
    for (std::size_t c = 0; c < g.cols(); ++c)
      a[r][c] = g(r, c).get_num() * (l / g(r, c).get_den());
  }
  std::size_t rank = 0;
  mpz_class prev = 1;
  for (std::size_t col = 0; col < g.cols() && rank < g.rows(); ++col) {
    std::size_t p = rank;
    while (p < g.rows() && a[p][col] == 0)
      ++p;
    if (p == g.rows())
      continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = rank + 1; r < g.rows(); ++r) {
      for (std::size_t c = col + 1; c < g.cols(); ++c)
        a[r][c] = (a[rank][col] * a[r][c] - a[r][col] * a[rank][c]) / prev;
      a[r][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

} // namespace qdet::testing

#endif // QDET_TESTS_TEST_SUPPORT_HPP
