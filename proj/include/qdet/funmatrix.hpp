#ifndef QDET_FUNMATRIX_HPP
#define QDET_FUNMATRIX_HPP

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "errors.hpp"
#include "grid.hpp"
#include "linmap.hpp"

namespace qdet {

using Index = std::size_t;
using Permutation = std::vector<Index>;

/// Matrix whose entries are linear mappings of one algebra. Entry (i,j)
/// is a^i_j: row i, column j.
class MapMatrix {
public:
  MapMatrix() = default;
  MapMatrix(AlgebraPtr alg, Index rows, Index cols) : alg_(std::move(alg)), rows_(rows), cols_(cols) {
    if (!alg_)
      throw dimension_error("matrix without algebra");
    if (rows == 0 || cols == 0)
      throw dimension_error("matrix must have at least one row and one column");
    entries_.assign(rows * cols, LinMap::zero(alg_));
  }
  MapMatrix(AlgebraPtr alg, Index rows, Index cols, std::vector<LinMap> entries) : MapMatrix(alg, rows, cols) {
    if (entries.size() != rows * cols)
      throw dimension_error("matrix entry count does not match its shape");
    for (const auto& f : entries)
      require_same_algebra(alg_, f.algebra(), "matrix entry");
    entries_ = std::move(entries);
  }

  const AlgebraPtr& algebra() const noexcept { return alg_; }
  Index rows() const noexcept { return rows_; }
  Index cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  const LinMap& operator()(Index i, Index j) const { return entries_.at(i * cols_ + j); }

  void set(Index i, Index j, LinMap f) {
    require_same_algebra(alg_, f.algebra(), "matrix entry");
    entries_.at(i * cols_ + j) = std::move(f);
  }

  MapMatrix transpose() const {
    MapMatrix t(alg_, cols_, rows_);
    for (Index i = 0; i < rows_; ++i)
      for (Index j = 0; j < cols_; ++j)
        t.entries_[j * rows_ + i] = (*this)(i, j);
    return t;
  }

  friend bool operator==(const MapMatrix& a, const MapMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

  friend MapMatrix operator+(const MapMatrix& a, const MapMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw dimension_error("matrix sum: shape mismatch");
    MapMatrix s = a;
    for (Index i = 0; i < s.entries_.size(); ++i)
      s.entries_[i] = a.entries_[i] + b.entries_[i];
    return s;
  }

  friend MapMatrix operator-(const MapMatrix& a) {
    MapMatrix s = a;
    for (auto& f : s.entries_)
      f = -f;
    return s;
  }

  friend MapMatrix operator-(const MapMatrix& a, const MapMatrix& b) { return a + (-b); }

private:
  AlgebraPtr alg_;
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<LinMap> entries_;
};

inline MapMatrix zero_matrix(const AlgebraPtr& alg, Index rows, Index cols) { return {alg, rows, cols}; }

/// e_0 (x) e_0 on the diagonal, the zero mapping elsewhere.
inline MapMatrix identity_matrix(const AlgebraPtr& alg, Index m) {
  MapMatrix e(alg, m, m);
  for (Index i = 0; i < m; ++i)
    e.set(i, i, LinMap::identity(alg));
  return e;
}

/// (A o B)^i_j = sum_k A^i_k o B^k_j
inline MapMatrix rc_product(const MapMatrix& a, const MapMatrix& b) {
  require_same_algebra(a.algebra(), b.algebra(), "rc_product");
  if (a.cols() != b.rows())
    throw dimension_error("rc_product: left has " + std::to_string(a.cols()) + " columns, right has " +
                          std::to_string(b.rows()) + " rows");
  MapMatrix p(a.algebra(), a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < b.cols(); ++j) {
      LinMap sum = LinMap::zero(a.algebra());
      for (Index k = 0; k < a.cols(); ++k)
        if (!a(i, k).is_zero() && !b(k, j).is_zero())
          sum = sum + compose(a(i, k), b(k, j));
      p.set(i, j, std::move(sum));
    }
  return p;
}

/// Row-by-column pattern with the per-entry composition order reversed:
/// result^i_j = sum_k B^k_j o A^i_k, so that
/// cr_product(A, B) == transpose(rc_product(transpose(B), transpose(A))).
inline MapMatrix cr_product(const MapMatrix& a, const MapMatrix& b) {
  require_same_algebra(a.algebra(), b.algebra(), "cr_product");
  if (a.cols() != b.rows())
    throw dimension_error("cr_product: left has " + std::to_string(a.cols()) + " columns, right has " +
                          std::to_string(b.rows()) + " rows");
  MapMatrix p(a.algebra(), a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < b.cols(); ++j) {
      LinMap sum = LinMap::zero(a.algebra());
      for (Index k = 0; k < a.cols(); ++k)
        if (!a(i, k).is_zero() && !b(k, j).is_zero())
          sum = sum + compose(b(k, j), a(i, k));
      p.set(i, j, std::move(sum));
    }
  return p;
}

/// result^i = sum_j apply(A^i_j, x^j)
inline std::vector<AlgElement> apply_matrix(const MapMatrix& a, std::span<const AlgElement> x) {
  if (x.size() != a.cols())
    throw dimension_error("apply_matrix: vector length " + std::to_string(x.size()) + " but matrix has " +
                          std::to_string(a.cols()) + " columns");
  std::vector<AlgElement> y;
  y.reserve(a.rows());
  for (Index i = 0; i < a.rows(); ++i) {
    AlgElement sum = AlgElement::zero(a.algebra());
    for (Index j = 0; j < a.cols(); ++j)
      sum = sum + apply(a(i, j), x[j]);
    y.push_back(std::move(sum));
  }
  return y;
}

/// Rows and columns picked in the given order.
inline MapMatrix submatrix(const MapMatrix& a, std::span<const Index> rows, std::span<const Index> cols) {
  MapMatrix s(a.algebra(), rows.size(), cols.size());
  for (Index i = 0; i < rows.size(); ++i)
    for (Index j = 0; j < cols.size(); ++j) {
      if (rows[i] >= a.rows() || cols[j] >= a.cols())
        throw std::out_of_range("submatrix index out of range");
      s.set(i, j, a(rows[i], cols[j]));
    }
  return s;
}

namespace detail {

inline std::vector<Index> complement(Index n, std::span<const Index> drop, const char* what) {
  std::vector<bool> dropped(n, false);
  for (Index d : drop) {
    if (d >= n)
      throw std::out_of_range(std::string(what) + " index " + std::to_string(d) + " out of range");
    if (dropped[d])
      throw std::invalid_argument(std::string(what) + " index " + std::to_string(d) + " listed twice");
    dropped[d] = true;
  }
  std::vector<Index> keep;
  for (Index i = 0; i < n; ++i)
    if (!dropped[i])
      keep.push_back(i);
  return keep;
}

} // namespace detail

/// Removes the listed rows and columns, preserving the order of the rest.
inline MapMatrix minor(const MapMatrix& a, std::span<const Index> drop_rows, std::span<const Index> drop_cols) {
  const auto rows = detail::complement(a.rows(), drop_rows, "row");
  const auto cols = detail::complement(a.cols(), drop_cols, "column");
  if (rows.empty() || cols.empty())
    throw std::invalid_argument("minor would be empty");
  return submatrix(a, rows, cols);
}

inline MapMatrix minor(const MapMatrix& a, std::initializer_list<Index> drop_rows,
                       std::initializer_list<Index> drop_cols) {
  return minor(a, std::span<const Index>(drop_rows.begin(), drop_rows.size()),
               std::span<const Index>(drop_cols.begin(), drop_cols.size()));
}

/// Block grid of operator matrices: block (i,k) is operator_matrix(A^i_k).
/// A maps x to y = A x iff concat(coords(y)) = operator_grid(A) concat(coords(x)).
inline Grid operator_grid(const MapMatrix& a) {
  const Index n = a.algebra()->dim();
  Grid g(a.rows() * n, a.cols() * n);
  for (Index i = 0; i < a.rows(); ++i)
    for (Index k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero())
        continue;
      const Grid op = operator_matrix(a(i, k));
      for (Index r = 0; r < n; ++r)
        for (Index c = 0; c < n; ++c)
          g(i * n + r, k * n + c) = op(r, c);
    }
  return g;
}

/// The authoritative invertibility criterion for square matrices of mappings.
inline bool field_nonsingular(const MapMatrix& a) {
  return a.square() && eliminate(operator_grid(a)).full_rank_square();
}

inline bool same_mappings(const MapMatrix& a, const MapMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    return false;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (!same_mapping(a(i, j), b(i, j)))
        return false;
  return true;
}

/// RC-inverse together with how it was obtained. When the entrywise
/// quasideterminant formula applies, the permutations are the identity and
/// `pivoted` is false. Otherwise rows row_perm[0..k) and columns
/// col_perm[0..k) formed the invertible pivot block of the Schur-complement
/// step at the top level.
struct InverseResult {
  MapMatrix value;
  Permutation row_perm;
  Permutation col_perm;
  bool pivoted = false;
};

struct QuasidetResult {
  Index pivot_row = 0;
  Index pivot_col = 0;
  LinMap value;
  // Permutations (in the indices of A) used to invert the minor.
  Permutation row_perm;
  Permutation col_perm;
};

namespace detail {

inline std::optional<InverseResult> try_inverse(const MapMatrix& a);

inline std::vector<std::vector<Index>> combinations(Index n, Index k) {
  std::vector<std::vector<Index>> out;
  std::vector<Index> c(k);
  std::iota(c.begin(), c.end(), Index{0});
  while (true) {
    out.push_back(c);
    Index i = k;
    while (i > 0 && c[i - 1] == n - k + i - 1)
      --i;
    if (i == 0)
      break;
    ++c[i - 1];
    for (Index j = i; j < k; ++j)
      c[j] = c[j - 1] + 1;
  }
  return out;
}

inline Permutation identity_perm(Index n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), Index{0});
  return p;
}

// Expression A^p_q - sum_{k != q, l != p} A^p_k o (M^{-1})^k_l o A^l_q with
// M the minor without row p and column q. nullopt when M cannot be inverted.
inline std::optional<QuasidetResult> try_quasidet(const MapMatrix& a, Index p, Index q) {
  const Index n = a.rows();
  if (n == 1)
    return QuasidetResult{p, q, a(0, 0), {0}, {0}};
  const std::vector<Index> rows = complement(n, std::span<const Index>(&p, 1), "row");
  const std::vector<Index> cols = complement(n, std::span<const Index>(&q, 1), "column");
  const auto inv = try_inverse(submatrix(a, rows, cols));
  if (!inv)
    return std::nullopt;

  // inv->value is indexed (column of M, row of M).
  LinMap value = a(p, q);
  for (Index kk = 0; kk < cols.size(); ++kk) {
    const LinMap& left = a(p, cols[kk]);
    if (left.is_zero())
      continue;
    for (Index ll = 0; ll < rows.size(); ++ll) {
      const LinMap& mid = inv->value(kk, ll);
      const LinMap& right = a(rows[ll], q);
      if (mid.is_zero() || right.is_zero())
        continue;
      value = value - compose(left, compose(mid, right));
    }
  }
  QuasidetResult r{p, q, std::move(value), {}, {}};
  for (Index i : inv->row_perm)
    r.row_perm.push_back(rows[i]);
  for (Index j : inv->col_perm)
    r.col_perm.push_back(cols[j]);
  return r;
}

// Entrywise form: (A^{-1})^i_j = (det^j_i A)^{-1}.
inline std::optional<MapMatrix> try_entrywise_inverse(const MapMatrix& a) {
  const Index n = a.rows();
  MapMatrix inv(a.algebra(), n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const auto qd = try_quasidet(a, j, i);
      if (!qd || !is_invertible(qd->value))
        return std::nullopt;
      inv.set(i, j, invert_map(qd->value));
    }
  return inv;
}

// Schur-complement step with pivot block A[R][C] (|R| = |C| = k). With
// A' = [[P, B], [L, D]] the rows R,R' and columns C,C' of A, and
// S = D - L P^{-1} B:
//   A'^{-1} = [[P^{-1} + P^{-1} B S^{-1} L P^{-1}, -P^{-1} B S^{-1}],
//              [-S^{-1} L P^{-1},                  S^{-1}]]
// and (A^{-1})^{C_all[i]}_{R_all[j]} = (A'^{-1})^i_j.
inline std::optional<MapMatrix> try_pivot_block(const MapMatrix& a, const std::vector<Index>& r,
                                                const std::vector<Index>& c) {
  const Index n = a.rows();
  const auto pinv = try_inverse(submatrix(a, r, c));
  if (!pinv)
    return std::nullopt;
  const std::vector<Index> r2 = complement(n, r, "row");
  const std::vector<Index> c2 = complement(n, c, "column");
  const MapMatrix b = submatrix(a, r, c2);
  const MapMatrix l = submatrix(a, r2, c);
  const MapMatrix d = submatrix(a, r2, c2);
  const MapMatrix& p_inv = pinv->value;

  const MapMatrix pinv_b = rc_product(p_inv, b);
  const MapMatrix l_pinv = rc_product(l, p_inv);
  const MapMatrix s = d - rc_product(l, pinv_b);
  const auto sinv = try_inverse(s);
  if (!sinv)
    return std::nullopt;
  const MapMatrix& s_inv = sinv->value;

  const MapMatrix top_right = -rc_product(pinv_b, s_inv);
  const MapMatrix bottom_left = -rc_product(s_inv, l_pinv);
  const MapMatrix top_left = p_inv + rc_product(rc_product(pinv_b, s_inv), l_pinv);

  const Index k = r.size();
  std::vector<Index> rows_all = r, cols_all = c;
  rows_all.insert(rows_all.end(), r2.begin(), r2.end());
  cols_all.insert(cols_all.end(), c2.begin(), c2.end());

  MapMatrix inv(a.algebra(), n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const LinMap& v = i < k ? (j < k ? top_left(i, j) : top_right(i, j - k))
                              : (j < k ? bottom_left(i - k, j) : s_inv(i - k, j - k));
      inv.set(cols_all[i], rows_all[j], v);
    }
  return inv;
}

inline void check_inverse(const MapMatrix& a, const MapMatrix& inv) {
  const MapMatrix e = identity_matrix(a.algebra(), a.rows());
  if (!same_mappings(rc_product(a, inv), e) || !same_mappings(rc_product(inv, a), e))
    throw std::logic_error("rc_inverse: computed matrix is not a two-sided inverse");
}

// nullopt when A is singular at field level or no pivot sequence works.
inline std::optional<InverseResult> try_inverse(const MapMatrix& a) {
  if (!field_nonsingular(a))
    return std::nullopt;
  const Index n = a.rows();
  if (n == 1)
    return InverseResult{MapMatrix(a.algebra(), 1, 1, {invert_map(a(0, 0))}), {0}, {0}, false};

  if (auto inv = try_entrywise_inverse(a)) {
    check_inverse(a, *inv);
    return InverseResult{std::move(*inv), identity_perm(n), identity_perm(n), false};
  }

  // Pivot blocks in order of size, then lexicographic row set, column set.
  for (Index k = 1; k < n; ++k) {
    const auto subsets = combinations(n, k);
    for (const auto& r : subsets)
      for (const auto& c : subsets)
        if (auto inv = try_pivot_block(a, r, c)) {
          check_inverse(a, *inv);
          Permutation rp = r, cp = c;
          for (Index i : complement(n, r, "row"))
            rp.push_back(i);
          for (Index j : complement(n, c, "column"))
            cp.push_back(j);
          return InverseResult{std::move(*inv), std::move(rp), std::move(cp), true};
        }
  }
  return std::nullopt;
}

} // namespace detail

/// RC-inverse with the record of the pivoting used.
///
/// Throws singular_error when the field-level operator grid is singular,
/// pivot_failure_error when it is not but no pivot sequence of the
/// quasideterminant recursion succeeds, and not_representable_error from
/// invert_map for algebras whose maps are not all of the form sum a x b.
inline InverseResult rc_inverse_detailed(const MapMatrix& a) {
  if (!a.square())
    throw dimension_error("rc_inverse: matrix is not square");
  if (!field_nonsingular(a))
    throw singular_error("matrix of linear mappings is singular");
  auto inv = detail::try_inverse(a);
  if (!inv)
    throw pivot_failure_error("no pivot block sequence inverts a field-level nonsingular matrix");
  return std::move(*inv);
}

inline MapMatrix rc_inverse(const MapMatrix& a) { return rc_inverse_detailed(a).value; }

/// (p,q)-quasideterminant. Throws not_defined_error when the minor without
/// row p and column q has no RC-inverse.
inline QuasidetResult quasideterminant_detailed(const MapMatrix& a, Index p, Index q) {
  if (!a.square())
    throw dimension_error("quasideterminant: matrix is not square");
  if (p >= a.rows() || q >= a.cols())
    throw std::out_of_range("quasideterminant: pivot index out of range");
  auto r = detail::try_quasidet(a, p, q);
  if (!r)
    throw not_defined_error("quasideterminant (" + std::to_string(p) + "," + std::to_string(q) +
                            ") needs the inverse of a singular minor");
  return std::move(*r);
}

inline LinMap quasideterminant(const MapMatrix& a, Index p, Index q) {
  return quasideterminant_detailed(a, p, q).value;
}

/// All (p,q) quasideterminants; undefined entries are nullopt.
class QuasidetMatrix {
public:
  explicit QuasidetMatrix(Index n) : n_(n), entries_(n * n) {}
  Index size() const noexcept { return n_; }
  const std::optional<LinMap>& operator()(Index p, Index q) const { return entries_.at(p * n_ + q); }
  std::optional<LinMap>& operator()(Index p, Index q) { return entries_.at(p * n_ + q); }

private:
  Index n_;
  std::vector<std::optional<LinMap>> entries_;
};

inline QuasidetMatrix quasideterminant_matrix(const MapMatrix& a) {
  if (!a.square())
    throw dimension_error("quasideterminant_matrix: matrix is not square");
  QuasidetMatrix out(a.rows());
  for (Index p = 0; p < a.rows(); ++p)
    for (Index q = 0; q < a.cols(); ++q)
      if (auto r = detail::try_quasidet(a, p, q))
        out(p, q) = std::move(r->value);
  return out;
}

/// Minor of the RC-inverse with rows `inv_rows` and columns `inv_cols`
/// (rows of the inverse are columns of A and vice versa), from the block
/// formula
///   (A^{-1})[I][J] = (A[J][I] - A[J][I'] (A[J'][I'])^{-1} A[J'][I])^{-1}
/// without forming the full inverse. Throws not_defined_error when either
/// intermediate inverse is missing.
inline MapMatrix block_inverse_minor(const MapMatrix& a, std::span<const Index> inv_rows,
                                     std::span<const Index> inv_cols) {
  if (!a.square())
    throw dimension_error("block_inverse_minor: matrix is not square");
  if (inv_rows.size() != inv_cols.size() || inv_rows.empty())
    throw std::invalid_argument("block_inverse_minor: index sets must be nonempty and of equal size");
  const Index n = a.rows();
  const std::vector<Index> i_set(inv_rows.begin(), inv_rows.end());
  const std::vector<Index> j_set(inv_cols.begin(), inv_cols.end());
  const std::vector<Index> i_rest = detail::complement(n, i_set, "column");
  const std::vector<Index> j_rest = detail::complement(n, j_set, "row");

  MapMatrix s = submatrix(a, j_set, i_set);
  if (!i_rest.empty()) {
    const auto q = detail::try_inverse(submatrix(a, j_rest, i_rest));
    if (!q)
      throw not_defined_error("block_inverse_minor: complementary block is not invertible");
    s = s - rc_product(submatrix(a, j_set, i_rest), rc_product(q->value, submatrix(a, j_rest, i_set)));
  }
  const auto sinv = detail::try_inverse(s);
  if (!sinv)
    throw not_defined_error("block_inverse_minor: Schur complement is not invertible");
  return sinv->value;
}

} // namespace qdet

#endif // QDET_FUNMATRIX_HPP
