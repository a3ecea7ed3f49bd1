#ifndef QDET_SOLVER_HPP
#define QDET_SOLVER_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "errors.hpp"
#include "funmatrix.hpp"
#include "grid.hpp"
#include "linmap.hpp"

namespace qdet {

/// a x = b with a square m x m matrix of mappings and b of length m.
struct LinearSystem {
  MapMatrix a;
  std::vector<AlgElement> b;

  LinearSystem(MapMatrix matrix, std::vector<AlgElement> rhs) : a(std::move(matrix)), b(std::move(rhs)) {
    if (!a.square())
      throw dimension_error("system matrix must be square");
    if (b.size() != a.rows())
      throw dimension_error("right-hand side has " + std::to_string(b.size()) + " entries, system has " +
                            std::to_string(a.rows()) + " equations");
    for (const auto& e : b)
      require_same_algebra(a.algebra(), e.algebra(), "system right-hand side");
  }

  Index size() const noexcept { return a.rows(); }
  const AlgebraPtr& algebra() const noexcept { return a.algebra(); }
};

/// The system expanded over the basis: an (m n) x (m n) rational system.
struct FieldSystem {
  Grid matrix;
  std::vector<Scalar> rhs;
};

inline FieldSystem field_reduction(const LinearSystem& sys) {
  FieldSystem fs{operator_grid(sys.a), {}};
  fs.rhs.reserve(sys.size() * sys.algebra()->dim());
  for (const auto& e : sys.b)
    fs.rhs.insert(fs.rhs.end(), e.coords().begin(), e.coords().end());
  return fs;
}

/// Concatenated coordinates, the inverse of split_coords.
inline std::vector<Scalar> concat_coords(std::span<const AlgElement> x) {
  std::vector<Scalar> out;
  for (const auto& e : x)
    out.insert(out.end(), e.coords().begin(), e.coords().end());
  return out;
}

inline std::vector<AlgElement> split_coords(const AlgebraPtr& alg, const std::vector<Scalar>& v) {
  const std::size_t n = alg->dim();
  if (v.size() % n != 0)
    throw dimension_error("coordinate vector length is not a multiple of the algebra dimension");
  std::vector<AlgElement> out;
  for (std::size_t i = 0; i < v.size(); i += n)
    out.emplace_back(alg, std::vector<Scalar>(v.begin() + i, v.begin() + i + n));
  return out;
}

/// apply_matrix(a, x) - b
inline std::vector<AlgElement> residual(const LinearSystem& sys, std::span<const AlgElement> x) {
  std::vector<AlgElement> r = apply_matrix(sys.a, x);
  for (Index i = 0; i < r.size(); ++i)
    r[i] = r[i] - sys.b[i];
  return r;
}

inline bool all_zero(std::span<const AlgElement> v) {
  for (const auto& e : v)
    if (!e.is_zero())
      return false;
  return true;
}

struct Classification {
  bool nonsingular = false;
  std::size_t rank = 0;
  std::size_t nullity = 0;
};

/// Nonsingular iff the reduced (m n) x (m n) grid is invertible.
inline Classification classify(const LinearSystem& sys) {
  const Elimination e = eliminate(operator_grid(sys.a));
  return {e.full_rank_square(), e.rank(), e.nullity()};
}

enum class Method { quasidet, reduction, both };

inline std::string_view to_string(Method m) {
  switch (m) {
  case Method::quasidet:
    return "quasidet";
  case Method::reduction:
    return "reduction";
  case Method::both:
    return "both";
  }
  return "?";
}

inline Method parse_method(std::string_view s) {
  if (s == "quasidet")
    return Method::quasidet;
  if (s == "reduction")
    return Method::reduction;
  if (s == "both")
    return Method::both;
  throw std::invalid_argument("unknown method '" + std::string(s) + "'");
}

struct SolveReport {
  Method method = Method::reduction;
  Classification status;
  bool consistent = false;

  // Unique solution (nonsingular systems).
  std::optional<std::vector<AlgElement>> solution;

  // Singular, consistent systems: one solution with free variables zero and
  // a nullspace basis, both as concatenated coordinates.
  std::vector<Scalar> particular;
  std::vector<std::vector<Scalar>> nullspace;

  bool residual_zero = false;

  // Quasideterminant path: whether the componentwise quasideterminant form
  // agreed with the inverse-matrix form (nullopt when some quasideterminant
  // is undefined or not invertible).
  std::optional<bool> forms_agree;
  // Method::both: whether the two paths produced the same vector.
  std::optional<bool> methods_agree;

  Permutation row_perm;
  Permutation col_perm;
  bool pivoted = false;
};

/// Exact Gauss-Jordan elimination of the reduced system.
inline SolveReport solve_reduction(const LinearSystem& sys) {
  const FieldSystem fs = field_reduction(sys);
  const Elimination e = eliminate(fs.matrix);
  const LinearSolution sol = solve_eliminated(e, fs.rhs);

  SolveReport rep;
  rep.method = Method::reduction;
  rep.status = {e.full_rank_square(), e.rank(), e.nullity()};
  rep.consistent = sol.consistent;
  if (!sol.consistent)
    return rep;

  const auto x = split_coords(sys.algebra(), sol.particular);
  rep.residual_zero = all_zero(residual(sys, x));
  if (rep.status.nonsingular) {
    rep.solution = x;
  } else {
    rep.particular = sol.particular;
    rep.nullspace = sol.nullspace;
  }
  return rep;
}

/// Solution through the RC-inverse, x = a^{-1} b, cross-checked against the
/// componentwise form x^i = sum_j (det^j_i a)^{-1} b^j whenever every
/// quasideterminant there is defined and invertible. Throws singular_error
/// for systems the reduction classifies as singular.
inline SolveReport solve_quasidet(const LinearSystem& sys) {
  const Classification cls = classify(sys);
  if (!cls.nonsingular)
    throw singular_error("system is singular (rank " + std::to_string(cls.rank) + ", nullity " +
                         std::to_string(cls.nullity) + ")");

  InverseResult inv = rc_inverse_detailed(sys.a);
  std::vector<AlgElement> x = apply_matrix(inv.value, sys.b);

  const Index m = sys.size();
  std::optional<std::vector<AlgElement>> x_qd;
  {
    std::vector<AlgElement> y;
    bool defined = true;
    for (Index i = 0; i < m && defined; ++i) {
      AlgElement sum = AlgElement::zero(sys.algebra());
      for (Index j = 0; j < m && defined; ++j) {
        auto qd = detail::try_quasidet(sys.a, j, i);
        if (!qd || !is_invertible(qd->value)) {
          defined = false;
          break;
        }
        sum = sum + apply(invert_map(qd->value), sys.b[j]);
      }
      y.push_back(std::move(sum));
    }
    if (defined)
      x_qd = std::move(y);
  }

  SolveReport rep;
  rep.method = Method::quasidet;
  rep.status = cls;
  rep.consistent = true;
  rep.row_perm = std::move(inv.row_perm);
  rep.col_perm = std::move(inv.col_perm);
  rep.pivoted = inv.pivoted;
  if (x_qd) {
    rep.forms_agree = *x_qd == x;
    if (!*rep.forms_agree)
      throw std::logic_error("solve_quasidet: matrix form and quasideterminant form disagree");
  }
  rep.residual_zero = all_zero(residual(sys, x));
  if (!rep.residual_zero)
    throw std::logic_error("solve_quasidet: nonzero residual");
  rep.solution = std::move(x);
  return rep;
}

/// Runs the requested method(s). With Method::both the quasideterminant
/// path runs only for nonsingular systems and the two solutions are compared.
inline SolveReport solve(const LinearSystem& sys, Method method) {
  if (method == Method::reduction)
    return solve_reduction(sys);
  if (method == Method::quasidet)
    return solve_quasidet(sys);

  SolveReport red = solve_reduction(sys);
  red.method = Method::both;
  if (!red.status.nonsingular)
    return red;
  const SolveReport qd = solve_quasidet(sys);
  red.methods_agree = qd.solution == red.solution;
  red.forms_agree = qd.forms_agree;
  red.row_perm = qd.row_perm;
  red.col_perm = qd.col_perm;
  red.pivoted = qd.pivoted;
  return red;
}

} // namespace qdet

#endif // QDET_SOLVER_HPP
