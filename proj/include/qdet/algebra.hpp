#ifndef QDET_ALGEBRA_HPP
#define QDET_ALGEBRA_HPP

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "grid.hpp"
#include "scalar.hpp"

namespace qdet {

/// Structure constants of an n-dimensional algebra: e_i * e_j = sum_k c(i,j,k) e_k.
class StructureConstants {
public:
  StructureConstants() = default;
  explicit StructureConstants(std::size_t dim) : dim_(dim), c_(dim * dim * dim) {
    if (dim == 0)
      throw dimension_error("algebra dimension must be positive");
  }

  std::size_t dim() const noexcept { return dim_; }
  Scalar& operator()(std::size_t i, std::size_t j, std::size_t k) { return c_[(i * dim_ + j) * dim_ + k]; }
  const Scalar& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return c_[(i * dim_ + j) * dim_ + k];
  }

  friend bool operator==(const StructureConstants&, const StructureConstants&) = default;

private:
  std::size_t dim_ = 0;
  std::vector<Scalar> c_;
};

struct Violation {
  enum class Kind { associativity, left_unit, right_unit };
  Kind kind;
  // associativity: (e_i e_j) e_k and e_i (e_j e_k) differ in coordinate p.
  // unit: e_0 e_i (or e_i e_0) differs from e_i in coordinate k (stored in p).
  std::size_t i = 0, j = 0, k = 0, p = 0;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

/// Checks associativity and that e_0 is a two-sided unit. Every violating
/// index tuple is listed.
inline ValidationReport validate_algebra(const StructureConstants& c) {
  ValidationReport report;
  const std::size_t n = c.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Scalar delta = i == k ? 1 : 0;
      if (c(0, i, k) != delta)
        report.violations.push_back({Violation::Kind::left_unit, i, 0, 0, k});
      if (c(i, 0, k) != delta)
        report.violations.push_back({Violation::Kind::right_unit, i, 0, 0, k});
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t p = 0; p < n; ++p) {
          Scalar lhs, rhs;
          for (std::size_t m = 0; m < n; ++m) {
            lhs += c(i, j, m) * c(m, k, p);
            rhs += c(i, m, p) * c(j, k, m);
          }
          if (lhs != rhs)
            report.violations.push_back({Violation::Kind::associativity, i, j, k, p});
        }
  return report;
}

class invalid_algebra_error : public std::invalid_argument {
public:
  invalid_algebra_error(const std::string& what, ValidationReport report)
      : std::invalid_argument(what), report_(std::move(report)) {}
  const ValidationReport& report() const noexcept { return report_; }

private:
  ValidationReport report_;
};

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

/// A validated finite-dimensional associative algebra with unit e_0.
///
/// Besides the structure constants it caches the sparse product table and
/// the operator matrices of the basis mappings x -> e_k x e_l, together with
/// an elimination of the system that expresses an arbitrary operator in
/// terms of them. The latter backs `from_operator_matrix` in linmap.hpp.
class Algebra {
  struct Token {};

public:
  struct Term {
    std::size_t index;
    Scalar coeff;
  };

  static AlgebraPtr create(std::string name, StructureConstants constants) {
    ValidationReport report = validate_algebra(constants);
    if (!report.ok())
      throw invalid_algebra_error("algebra '" + name + "' is not associative with unit e0 (" +
                                      std::to_string(report.violations.size()) + " violations)",
                                  std::move(report));
    return std::make_shared<const Algebra>(Token{}, std::move(name), std::move(constants));
  }

  Algebra(Token, std::string name, StructureConstants constants)
      : name_(std::move(name)), constants_(std::move(constants)) {
    const std::size_t n = dim();
    table_.resize(n * n);
    commutative_ = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          const Scalar& v = constants_(i, j, k);
          if (sgn(v) != 0)
            table_[i * n + j].push_back({k, v});
          if (v != constants_(j, i, k))
            commutative_ = false;
        }

    // Operator of e_k (.) e_l: column i holds coords of e_k e_i e_l.
    basis_ops_.reserve(n * n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l) {
        Grid op(n, n);
        for (std::size_t i = 0; i < n; ++i)
          for (const auto& [m, ckm] : products(k, i))
            for (const auto& [j, cml] : products(m, l))
              op(j, i) += ckm * cml;
        basis_ops_.push_back(std::move(op));
      }

    // Columns indexed by (k,l), rows by the flattened operator entry (j,i).
    Grid system(n * n, n * n);
    for (std::size_t kl = 0; kl < n * n; ++kl)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
          system(j * n + i, kl) = basis_ops_[kl](j, i);
    representation_ = eliminate(system);
  }

  const std::string& name() const noexcept { return name_; }
  std::size_t dim() const noexcept { return constants_.dim(); }
  const StructureConstants& constants() const noexcept { return constants_; }
  bool commutative() const noexcept { return commutative_; }
  bool validated() const noexcept { return true; }

  /// True when every linear operator on A is a unique combination of the
  /// maps x -> e_k x e_l (A (x) A -> End(A) is bijective).
  bool maps_faithful() const noexcept {
    return representation_.rank() == dim() * dim();
  }

  /// Nonzero terms of e_i * e_j.
  const std::vector<Term>& products(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }

  const Grid& basis_operator(std::size_t k, std::size_t l) const { return basis_ops_[k * dim() + l]; }
  const Elimination& representation_system() const noexcept { return representation_; }

  /// Same pointer, or structurally identical constants.
  static bool same(const AlgebraPtr& a, const AlgebraPtr& b) {
    return a == b || (a && b && a->constants_ == b->constants_);
  }

private:
  std::string name_;
  StructureConstants constants_;
  bool commutative_ = false;
  std::vector<std::vector<Term>> table_;
  std::vector<Grid> basis_ops_;
  Elimination representation_;
};

inline void require_same_algebra(const AlgebraPtr& a, const AlgebraPtr& b, std::string_view what) {
  if (!Algebra::same(a, b))
    throw dimension_error(std::string(what) + ": operands belong to different algebras");
}

/// Element of an algebra as its coordinate vector relative to the basis.
class AlgElement {
public:
  AlgElement() = default;
  AlgElement(AlgebraPtr alg, std::vector<Scalar> coords) : alg_(std::move(alg)), coords_(std::move(coords)) {
    if (!alg_)
      throw dimension_error("element without algebra");
    if (coords_.size() != alg_->dim())
      throw dimension_error("element has " + std::to_string(coords_.size()) + " coordinates, algebra dim is " +
                            std::to_string(alg_->dim()));
  }

  static AlgElement zero(const AlgebraPtr& alg) { return {alg, std::vector<Scalar>(alg->dim())}; }
  static AlgElement basis(const AlgebraPtr& alg, std::size_t i) {
    if (i >= alg->dim())
      throw dimension_error("basis index out of range");
    AlgElement e = zero(alg);
    e.coords_[i] = 1;
    return e;
  }
  static AlgElement unit(const AlgebraPtr& alg) { return basis(alg, 0); }

  const AlgebraPtr& algebra() const noexcept { return alg_; }
  std::size_t dim() const noexcept { return coords_.size(); }
  const std::vector<Scalar>& coords() const noexcept { return coords_; }
  const Scalar& operator[](std::size_t i) const { return coords_[i]; }

  bool is_zero() const {
    for (const auto& s : coords_)
      if (sgn(s) != 0)
        return false;
    return true;
  }

  friend bool operator==(const AlgElement& x, const AlgElement& y) {
    return x.coords_ == y.coords_ && Algebra::same(x.alg_, y.alg_);
  }

  friend AlgElement operator+(const AlgElement& x, const AlgElement& y) {
    require_same_algebra(x.alg_, y.alg_, "element_add");
    AlgElement r = x;
    for (std::size_t i = 0; i < r.coords_.size(); ++i)
      r.coords_[i] += y.coords_[i];
    return r;
  }

  friend AlgElement operator-(const AlgElement& x, const AlgElement& y) {
    require_same_algebra(x.alg_, y.alg_, "element_sub");
    AlgElement r = x;
    for (std::size_t i = 0; i < r.coords_.size(); ++i)
      r.coords_[i] -= y.coords_[i];
    return r;
  }

  friend AlgElement operator-(const AlgElement& x) { return Scalar(-1) * x; }

  friend AlgElement operator*(const Scalar& s, const AlgElement& x) {
    AlgElement r = x;
    for (auto& c : r.coords_)
      c *= s;
    return r;
  }

  /// result^k = sum_{i,j} x^i y^j C^k_{ij}
  friend AlgElement operator*(const AlgElement& x, const AlgElement& y) {
    require_same_algebra(x.alg_, y.alg_, "element_mul");
    const Algebra& alg = *x.alg_;
    AlgElement r = zero(x.alg_);
    for (std::size_t i = 0; i < x.dim(); ++i) {
      if (sgn(x.coords_[i]) == 0)
        continue;
      for (std::size_t j = 0; j < y.dim(); ++j) {
        if (sgn(y.coords_[j]) == 0)
          continue;
        const Scalar xy = x.coords_[i] * y.coords_[j];
        for (const auto& [k, c] : alg.products(i, j))
          r.coords_[k] += xy * c;
      }
    }
    return r;
  }

private:
  AlgebraPtr alg_;
  std::vector<Scalar> coords_;
};

inline AlgElement element_add(const AlgElement& x, const AlgElement& y) { return x + y; }
inline AlgElement element_scale(const Scalar& s, const AlgElement& x) { return s * x; }
inline AlgElement element_mul(const AlgElement& x, const AlgElement& y) { return x * y; }

/// Matrix of left multiplication y -> x*y; column j holds coords(x*e_j).
inline Grid left_multiplication_matrix(const AlgElement& x) {
  const std::size_t n = x.dim();
  Grid l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const AlgElement col = x * AlgElement::basis(x.algebra(), j);
    for (std::size_t i = 0; i < n; ++i)
      l(i, j) = col[i];
  }
  return l;
}

/// Two-sided inverse, found by solving L(x) y = e_0. Throws
/// not_invertible_error when L(x) is singular.
inline AlgElement element_inverse(const AlgElement& x) {
  const auto& alg = x.algebra();
  const Elimination e = eliminate(left_multiplication_matrix(x));
  if (!e.full_rank_square())
    throw not_invertible_error("element is not invertible");
  const LinearSolution sol = solve_eliminated(e, AlgElement::unit(alg).coords());
  AlgElement y(alg, sol.particular);
  // In a finite-dimensional associative algebra a right inverse is two-sided.
  if (!(y * x == AlgElement::unit(alg)))
    throw std::logic_error("element_inverse: right inverse is not a left inverse");
  return y;
}

namespace detail {

inline AlgebraPtr make_builtin(std::string name, std::size_t n,
                               std::initializer_list<std::tuple<std::size_t, std::size_t, std::size_t, int>> entries) {
  StructureConstants c(n);
  for (std::size_t i = 0; i < n; ++i) {
    c(0, i, i) = 1;
    c(i, 0, i) = 1;
  }
  for (const auto& [i, j, k, v] : entries)
    c(i, j, k) = v;
  return Algebra::create(std::move(name), std::move(c));
}

} // namespace detail

/// Quaternions with basis 1, i, j, k.
inline StructureConstants quaternion_constants() {
  StructureConstants c(4);
  for (std::size_t a = 0; a < 4; ++a) {
    c(0, a, a) = 1;
    c(a, 0, a) = 1;
  }
  for (std::size_t a = 1; a < 4; ++a)
    c(a, a, 0) = -1;
  c(1, 2, 3) = 1;
  c(2, 1, 3) = -1;
  c(2, 3, 1) = 1;
  c(3, 2, 1) = -1;
  c(3, 1, 2) = 1;
  c(1, 3, 2) = -1;
  return c;
}

// mat2 uses the basis e0 = I, e1 = E12, e2 = E21, e3 = E11 so that the unit
// sits at index 0; E22 = e0 - e3.
namespace detail {

inline AlgebraPtr build_builtin(std::string_view name) {
  if (name == "quaternion")
    return Algebra::create("quaternion", quaternion_constants());
  if (name == "complex")
    return detail::make_builtin("complex", 2, {{1, 1, 0, -1}});
  if (name == "dual")
    return detail::make_builtin("dual", 2, {});
  if (name == "field")
    return detail::make_builtin("field", 1, {});
  if (name == "mat2") {
    StructureConstants c(4);
    for (std::size_t a = 0; a < 4; ++a) {
      c(0, a, a) = 1;
      c(a, 0, a) = 1;
    }
    c(1, 2, 3) = 1;  // E12 E21 = E11
    c(2, 1, 0) = 1;  // E21 E12 = E22 = I - E11
    c(2, 1, 3) = -1;
    c(3, 3, 3) = 1;  // E11 E11 = E11
    c(3, 1, 1) = 1;  // E11 E12 = E12
    c(2, 3, 2) = 1;  // E21 E11 = E21
    return Algebra::create("mat2", std::move(c));
  }
  throw std::invalid_argument("unknown builtin algebra '" + std::string(name) + "'");
}

} // namespace detail

/// Builtin catalog: quaternion, complex, mat2, dual, field. Instances are
/// built once and shared.
inline AlgebraPtr builtin_algebra(std::string_view name) {
  static const AlgebraPtr quaternion = detail::build_builtin("quaternion");
  static const AlgebraPtr complex = detail::build_builtin("complex");
  static const AlgebraPtr mat2 = detail::build_builtin("mat2");
  static const AlgebraPtr dual = detail::build_builtin("dual");
  static const AlgebraPtr field = detail::build_builtin("field");
  if (name == "quaternion")
    return quaternion;
  if (name == "complex")
    return complex;
  if (name == "mat2")
    return mat2;
  if (name == "dual")
    return dual;
  if (name == "field")
    return field;
  throw std::invalid_argument("unknown builtin algebra '" + std::string(name) + "'");
}

inline std::vector<std::string> builtin_algebra_names() {
  return {"quaternion", "complex", "mat2", "dual", "field"};
}

} // namespace qdet

#endif // QDET_ALGEBRA_HPP
