#ifndef QDET_IO_HPP
#define QDET_IO_HPP

// JSON file formats and plain-text rendering.
//
//   scalar   : string "p", "-p" or "p/q" (q > 0)
//   element  : array of dim scalars
//   algebra  : {"name": str, "dim": n, "constants": C} with C[i][j] an array
//              of n scalars, C[i][j][k] = coefficient of e_k in e_i e_j
//   algebra reference : "builtin:<name>", a path (relative to the referring
//              file), or an inline algebra object
//   mapping  : {"terms": [[elem, elem], ...]} | {"coeffs": n x n scalars}
//              | elem (promoted to left multiplication)
//   matrix   : {"algebra": ref, "rows": m, "cols": c, "entries": m x c mappings}
//   system   : {"matrix": matrix, "rhs": [elem, ...]}
//   element file / mapping file: the object above plus an "algebra" key
//              ({"algebra": ref, "element": elem} for elements)

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "algebra.hpp"
#include "errors.hpp"
#include "funmatrix.hpp"
#include "linmap.hpp"
#include "scalar.hpp"
#include "solver.hpp"

namespace qdet::io {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

inline Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw format_error("cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw format_error("'" + path.string() + "': " + e.what());
  }
}

namespace detail {

inline const Json& member(const Json& j, const char* key, const char* what) {
  if (!j.is_object())
    throw format_error(std::string(what) + " must be an object");
  auto it = j.find(key);
  if (it == j.end())
    throw format_error(std::string(what) + " is missing \"" + key + "\"");
  return *it;
}

inline std::size_t positive_int(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() <= 0)
    throw format_error(std::string(what) + " must be a positive integer");
  return j.get<std::size_t>();
}

inline const Json& sized_array(const Json& j, std::size_t n, const std::string& what) {
  if (!j.is_array())
    throw format_error(what + " must be an array");
  if (j.size() != n)
    throw format_error(what + " must have " + std::to_string(n) + " entries, found " + std::to_string(j.size()));
  return j;
}

} // namespace detail

inline Scalar parse_scalar(const Json& j) {
  if (!j.is_string())
    throw format_error("scalar must be a string such as \"3\" or \"-1/2\", got " + j.dump());
  return qdet::parse_scalar(j.get<std::string>());
}

inline StructureConstants parse_constants(const Json& j) {
  const std::size_t n = detail::positive_int(detail::member(j, "dim", "algebra"), "algebra dim");
  const Json& c = detail::sized_array(detail::member(j, "constants", "algebra"), n, "constants");
  StructureConstants sc(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Json& row = detail::sized_array(c[i], n, "constants[" + std::to_string(i) + "]");
    for (std::size_t k = 0; k < n; ++k) {
      const Json& cell = detail::sized_array(row[k], n, "constants[" + std::to_string(i) + "][" + std::to_string(k) + "]");
      for (std::size_t m = 0; m < n; ++m)
        sc(i, k, m) = parse_scalar(cell[m]);
    }
  }
  return sc;
}

/// Inline algebra object; the table must pass validation.
inline AlgebraPtr parse_algebra(const Json& j) {
  std::string name = "algebra";
  if (auto it = j.find("name"); it != j.end()) {
    if (!it->is_string())
      throw format_error("algebra name must be a string");
    name = it->get<std::string>();
  }
  return Algebra::create(std::move(name), parse_constants(j));
}

inline AlgebraPtr resolve_algebra(const Json& ref, const std::filesystem::path& base_dir) {
  if (ref.is_object())
    return parse_algebra(ref);
  if (!ref.is_string())
    throw format_error("algebra reference must be a string or an object");
  const std::string s = ref.get<std::string>();
  constexpr std::string_view prefix = "builtin:";
  if (s.starts_with(prefix)) {
    try {
      return builtin_algebra(s.substr(prefix.size()));
    } catch (const std::invalid_argument& e) {
      throw format_error(e.what());
    }
  }
  std::filesystem::path p(s);
  if (p.is_relative())
    p = base_dir / p;
  return parse_algebra(read_json_file(p));
}

inline AlgElement parse_element(const AlgebraPtr& alg, const Json& j) {
  const Json& a = detail::sized_array(j, alg->dim(), "element");
  std::vector<Scalar> coords;
  coords.reserve(alg->dim());
  for (const auto& s : a)
    coords.push_back(parse_scalar(s));
  return {alg, std::move(coords)};
}

inline LinMap parse_mapping(const AlgebraPtr& alg, const Json& j) {
  if (j.is_array())
    return left_mul(parse_element(alg, j));
  if (!j.is_object())
    throw format_error("mapping must be an object or an element array");
  const bool has_terms = j.contains("terms");
  const bool has_coeffs = j.contains("coeffs");
  if (has_terms == has_coeffs)
    throw format_error("mapping needs exactly one of \"terms\" or \"coeffs\"");
  const std::size_t n = alg->dim();
  if (has_coeffs) {
    const Json& c = detail::sized_array(j["coeffs"], n, "coeffs");
    std::vector<Scalar> v;
    v.reserve(n * n);
    for (std::size_t k = 0; k < n; ++k) {
      const Json& row = detail::sized_array(c[k], n, "coeffs[" + std::to_string(k) + "]");
      for (const auto& s : row)
        v.push_back(parse_scalar(s));
    }
    return {alg, std::move(v)};
  }
  const Json& t = j["terms"];
  if (!t.is_array())
    throw format_error("terms must be an array");
  std::vector<TensorTerm> terms;
  for (const auto& pair : t) {
    detail::sized_array(pair, 2, "tensor term");
    terms.push_back({parse_element(alg, pair[0]), parse_element(alg, pair[1])});
  }
  return from_terms(alg, terms);
}

inline MapMatrix parse_matrix(const Json& j, const std::filesystem::path& base_dir) {
  const AlgebraPtr alg = resolve_algebra(detail::member(j, "algebra", "matrix"), base_dir);
  const std::size_t rows = detail::positive_int(detail::member(j, "rows", "matrix"), "rows");
  const std::size_t cols = detail::positive_int(detail::member(j, "cols", "matrix"), "cols");
  const Json& e = detail::sized_array(detail::member(j, "entries", "matrix"), rows, "entries");
  MapMatrix a(alg, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const Json& row = detail::sized_array(e[i], cols, "entries[" + std::to_string(i) + "]");
    for (std::size_t k = 0; k < cols; ++k)
      a.set(i, k, parse_mapping(alg, row[k]));
  }
  return a;
}

inline LinearSystem parse_system(const Json& j, const std::filesystem::path& base_dir) {
  MapMatrix a = parse_matrix(detail::member(j, "matrix", "system"), base_dir);
  const Json& rhs = detail::member(j, "rhs", "system");
  if (!rhs.is_array())
    throw format_error("rhs must be an array");
  std::vector<AlgElement> b;
  for (const auto& e : rhs)
    b.push_back(parse_element(a.algebra(), e));
  if (b.size() != a.rows())
    throw format_error("rhs must have " + std::to_string(a.rows()) + " entries");
  return {std::move(a), std::move(b)};
}

inline AlgElement parse_element_file(const Json& j, const std::filesystem::path& base_dir) {
  const AlgebraPtr alg = resolve_algebra(detail::member(j, "algebra", "element file"), base_dir);
  return parse_element(alg, detail::member(j, "element", "element file"));
}

inline LinMap parse_mapping_file(const Json& j, const std::filesystem::path& base_dir) {
  const AlgebraPtr alg = resolve_algebra(detail::member(j, "algebra", "mapping file"), base_dir);
  if (auto it = j.find("element"); it != j.end())
    return parse_mapping(alg, *it);
  return parse_mapping(alg, j);
}

// ---- serialization -------------------------------------------------------

inline OrderedJson to_json(const Scalar& s) { return to_string(s); }

inline OrderedJson to_json(const AlgElement& x) {
  OrderedJson a = OrderedJson::array();
  for (const auto& c : x.coords())
    a.push_back(to_string(c));
  return a;
}

inline OrderedJson coords_json(const std::vector<Scalar>& v) {
  OrderedJson a = OrderedJson::array();
  for (const auto& c : v)
    a.push_back(to_string(c));
  return a;
}

inline OrderedJson to_json(const Grid& g) {
  OrderedJson a = OrderedJson::array();
  for (std::size_t r = 0; r < g.rows(); ++r) {
    OrderedJson row = OrderedJson::array();
    for (std::size_t c = 0; c < g.cols(); ++c)
      row.push_back(to_string(g(r, c)));
    a.push_back(std::move(row));
  }
  return a;
}

inline OrderedJson to_json(const LinMap& f) {
  OrderedJson o;
  o["coeffs"] = to_json(f.coeff_grid());
  return o;
}

/// "builtin:<name>" when the algebra matches a catalog entry, otherwise the
/// full inline object.
inline OrderedJson algebra_ref_json(const AlgebraPtr& alg) {
  for (const auto& name : builtin_algebra_names())
    if (name == alg->name() && builtin_algebra(name)->constants() == alg->constants())
      return "builtin:" + name;
  OrderedJson o;
  o["name"] = alg->name();
  o["dim"] = alg->dim();
  OrderedJson c = OrderedJson::array();
  const std::size_t n = alg->dim();
  for (std::size_t i = 0; i < n; ++i) {
    OrderedJson row = OrderedJson::array();
    for (std::size_t k = 0; k < n; ++k) {
      OrderedJson cell = OrderedJson::array();
      for (std::size_t m = 0; m < n; ++m)
        cell.push_back(to_string(alg->constants()(i, k, m)));
      row.push_back(std::move(cell));
    }
    c.push_back(std::move(row));
  }
  o["constants"] = std::move(c);
  return o;
}

inline OrderedJson to_json(const MapMatrix& a) {
  OrderedJson o;
  o["algebra"] = algebra_ref_json(a.algebra());
  o["rows"] = a.rows();
  o["cols"] = a.cols();
  OrderedJson e = OrderedJson::array();
  for (Index i = 0; i < a.rows(); ++i) {
    OrderedJson row = OrderedJson::array();
    for (Index k = 0; k < a.cols(); ++k)
      row.push_back(to_json(a(i, k)));
    e.push_back(std::move(row));
  }
  o["entries"] = std::move(e);
  return o;
}

inline OrderedJson to_json(const SolveReport& r) {
  OrderedJson o;
  o["method"] = std::string(to_string(r.method));
  o["status"] = r.status.nonsingular ? "Nonsingular" : "Singular";
  o["rank"] = r.status.rank;
  o["nullity"] = r.status.nullity;
  o["consistent"] = r.consistent;
  if (r.solution) {
    OrderedJson s = OrderedJson::array();
    for (const auto& x : *r.solution)
      s.push_back(to_json(x));
    o["solution"] = std::move(s);
  } else {
    o["solution"] = nullptr;
  }
  if (!r.status.nonsingular && r.consistent) {
    o["particular"] = coords_json(r.particular);
    OrderedJson ns = OrderedJson::array();
    for (const auto& v : r.nullspace)
      ns.push_back(coords_json(v));
    o["nullspace"] = std::move(ns);
  }
  o["residual_zero"] = r.residual_zero;
  if (r.forms_agree)
    o["forms_agree"] = *r.forms_agree;
  if (r.methods_agree)
    o["methods_agree"] = *r.methods_agree;
  if (!r.row_perm.empty()) {
    o["pivoted"] = r.pivoted;
    o["row_perm"] = r.row_perm;
    o["col_perm"] = r.col_perm;
  }
  return o;
}

// ---- text rendering --------------------------------------------------------

inline std::string format_element(const AlgElement& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (i)
      s += ", ";
    s += to_string(x[i]);
  }
  return s + ")";
}

/// Sum of terms "c ek⊗el" in (k,l) order; "0" for the zero mapping.
inline std::string format_map(const LinMap& f) {
  std::string s;
  const std::size_t n = f.dim();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      Scalar c = f.coeff(k, l);
      if (sgn(c) == 0)
        continue;
      if (s.empty()) {
        if (sgn(c) < 0)
          s += "-";
      } else {
        s += sgn(c) < 0 ? " - " : " + ";
      }
      c = abs(c);
      if (c != 1)
        s += to_string(c) + " ";
      s += "e" + std::to_string(k) + "⊗e" + std::to_string(l);
    }
  return s.empty() ? "0" : s;
}

inline std::string format_matrix(const MapMatrix& a) {
  std::ostringstream out;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index k = 0; k < a.cols(); ++k)
      out << "[" << i + 1 << "," << k + 1 << "] " << format_map(a(i, k)) << "\n";
  return out.str();
}

} // namespace qdet::io

#endif // QDET_IO_HPP
