#ifndef QDET_GRID_HPP
#define QDET_GRID_HPP

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "scalar.hpp"

namespace qdet {

/// Dense row-major matrix of exact rationals.
class Grid {
public:
  Grid() = default;
  Grid(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  Grid(std::initializer_list<std::initializer_list<Scalar>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_)
        throw dimension_error("ragged initializer for Grid");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Grid identity(std::size_t n) {
    Grid g(n, n);
    for (std::size_t i = 0; i < n; ++i)
      g(i, i) = 1;
    return g;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const {
    for (const auto& s : data_)
      if (sgn(s) != 0)
        return false;
    return true;
  }

  Grid transpose() const {
    Grid t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        t(c, r) = (*this)(r, c);
    return t;
  }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Grid operator+(const Grid& a, const Grid& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw dimension_error("Grid sum: shape mismatch");
    Grid s(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i)
      s.data_[i] = a.data_[i] + b.data_[i];
    return s;
  }

  friend Grid operator*(const Grid& a, const Grid& b) {
    if (a.cols_ != b.rows_)
      throw dimension_error("Grid product: shape mismatch");
    Grid p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& aik = a(i, k);
        if (sgn(aik) == 0)
          continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          p(i, j) += aik * b(k, j);
      }
    return p;
  }

  friend std::vector<Scalar> operator*(const Grid& a, const std::vector<Scalar>& x) {
    if (a.cols_ != x.size())
      throw dimension_error("Grid-vector product: shape mismatch");
    std::vector<Scalar> y(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k)
        if (sgn(a(i, k)) != 0)
          y[i] += a(i, k) * x[k];
    return y;
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Gauss-Jordan elimination record: transform * input == reduced, where
/// reduced is in reduced row echelon form. Pivots are chosen as the first
/// nonzero entry in each column scanning rows top-down, so the result is
/// deterministic.
struct Elimination {
  Grid reduced;
  Grid transform;
  std::vector<std::size_t> pivot_cols; // pivot column of row r, r < rank

  std::size_t rank() const noexcept { return pivot_cols.size(); }
  std::size_t nullity() const noexcept { return reduced.cols() - rank(); }

  bool full_rank_square() const noexcept {
    return reduced.square() && rank() == reduced.rows();
  }
};

inline Elimination eliminate(const Grid& input) {
  Elimination e{input, Grid::identity(input.rows()), {}};
  Grid& m = e.reduced;
  Grid& t = e.transform;
  const std::size_t rows = m.rows();
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < rows; ++col) {
    std::size_t pivot = row;
    while (pivot < rows && sgn(m(pivot, col)) == 0)
      ++pivot;
    if (pivot == rows)
      continue;
    if (pivot != row) {
      for (std::size_t c = 0; c < m.cols(); ++c)
        std::swap(m(row, c), m(pivot, c));
      for (std::size_t c = 0; c < t.cols(); ++c)
        std::swap(t(row, c), t(pivot, c));
    }

    const Scalar inv = 1 / m(row, col);
    for (std::size_t c = 0; c < m.cols(); ++c)
      m(row, c) *= inv;
    for (std::size_t c = 0; c < t.cols(); ++c)
      t(row, c) *= inv;

    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || sgn(m(r, col)) == 0)
        continue;
      const Scalar factor = m(r, col);
      for (std::size_t c = 0; c < m.cols(); ++c)
        if (sgn(m(row, c)) != 0)
          m(r, c) -= factor * m(row, c);
      for (std::size_t c = 0; c < t.cols(); ++c)
        if (sgn(t(row, c)) != 0)
          t(r, c) -= factor * t(row, c);
    }
    e.pivot_cols.push_back(col);
    ++row;
  }
  return e;
}

inline std::size_t rank(const Grid& g) { return eliminate(g).rank(); }

inline std::optional<Grid> inverse(const Grid& g) {
  if (!g.square())
    throw dimension_error("inverse of non-square Grid");
  Elimination e = eliminate(g);
  if (!e.full_rank_square())
    return std::nullopt;
  return std::move(e.transform);
}

/// Solution set of a linear system over the rationals.
struct LinearSolution {
  bool consistent = false;
  std::vector<Scalar> particular;            // free variables set to zero
  std::vector<std::vector<Scalar>> nullspace; // one vector per free column
};

/// Solves a*x = b from a precomputed elimination of a.
inline LinearSolution solve_eliminated(const Elimination& e, const std::vector<Scalar>& b) {
  if (b.size() != e.transform.cols())
    throw dimension_error("solve: right-hand side length mismatch");
  LinearSolution sol;
  const std::vector<Scalar> y = e.transform * b;
  const std::size_t r = e.rank();
  for (std::size_t i = r; i < y.size(); ++i)
    if (sgn(y[i]) != 0)
      return sol;
  sol.consistent = true;
  const std::size_t n = e.reduced.cols();
  sol.particular.assign(n, Scalar(0));
  for (std::size_t i = 0; i < r; ++i)
    sol.particular[e.pivot_cols[i]] = y[i];

  std::vector<bool> is_pivot(n, false);
  for (auto c : e.pivot_cols)
    is_pivot[c] = true;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f])
      continue;
    std::vector<Scalar> v(n, Scalar(0));
    v[f] = 1;
    for (std::size_t i = 0; i < r; ++i)
      v[e.pivot_cols[i]] = -e.reduced(i, f);
    sol.nullspace.push_back(std::move(v));
  }
  return sol;
}

inline LinearSolution solve(const Grid& a, const std::vector<Scalar>& b) {
  return solve_eliminated(eliminate(a), b);
}

} // namespace qdet

#endif // QDET_GRID_HPP
