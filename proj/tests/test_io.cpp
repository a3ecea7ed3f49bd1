#include <gtest/gtest.h>

#include <filesystem>

#include <qdet/io.hpp>
#include <qdet/qdet.hpp>

#include "test_support.hpp"

using namespace qdet;
using io::Json;
namespace qt = qdet::testing;

namespace {

const std::filesystem::path data_dir = QDET_TEST_DATA;

const AlgebraPtr& H() {
  static const AlgebraPtr h = builtin_algebra("quaternion");
  return h;
}

Json matrix_json(Json entries, int rows = 1, int cols = 1) {
  return {{"algebra", "builtin:quaternion"}, {"rows", rows}, {"cols", cols}, {"entries", std::move(entries)}};
}

} // namespace

TEST(Io, Scalars) {
  EXPECT_EQ(io::parse_scalar(Json("-3/6")), Scalar(-1, 2));
  EXPECT_THROW(io::parse_scalar(Json(3)), format_error);
  EXPECT_THROW(io::parse_scalar(Json(0.5)), format_error);
  EXPECT_THROW(io::parse_scalar(Json("1/0")), format_error);
  EXPECT_EQ(io::to_json(Scalar(-7, 3)), "-7/3");
}

TEST(Io, Elements) {
  const auto x = io::parse_element(H(), Json{"1", "-2", "0", "1/3"});
  EXPECT_EQ(x, AlgElement(H(), {1, -2, 0, Scalar(1, 3)}));
  EXPECT_EQ(io::format_element(x), "(1, -2, 0, 1/3)");
  EXPECT_THROW(io::parse_element(H(), Json{"1", "2", "3"}), format_error);
  EXPECT_THROW(io::parse_element(H(), Json("1")), format_error);
}

TEST(Io, MappingForms) {
  const auto i = AlgElement::basis(H(), 1), j = AlgElement::basis(H(), 2);
  const Json terms = {{"terms", {{{"0", "1", "0", "0"}, {"0", "0", "1", "0"}}}}};
  EXPECT_EQ(io::parse_mapping(H(), terms), tensor(i, j));
  EXPECT_EQ(io::parse_mapping(H(), Json{"0", "1", "0", "0"}), left_mul(i));

  Json coeffs = Json::array();
  for (int k = 0; k < 4; ++k)
    coeffs.push_back(Json{"0", "0", "0", "0"});
  coeffs[1][2] = "5";
  const LinMap expected = from_terms(H(), {{Scalar(5) * i, j}});
  EXPECT_EQ(io::parse_mapping(H(), {{"coeffs", coeffs}}), expected);

  EXPECT_THROW(io::parse_mapping(H(), Json::object()), format_error);
  EXPECT_THROW(io::parse_mapping(H(), {{"terms", Json::array()}, {"coeffs", coeffs}}), format_error);
  EXPECT_THROW(io::parse_mapping(H(), {{"terms", {{{"1", "0", "0", "0"}}}}}), format_error);
  coeffs.erase(0);
  EXPECT_THROW(io::parse_mapping(H(), {{"coeffs", coeffs}}), format_error);
}

TEST(Io, MatrixShapeIsChecked) {
  const Json e0 = {"1", "0", "0", "0"};
  EXPECT_NO_THROW(io::parse_matrix(matrix_json({{e0}}), data_dir));
  EXPECT_THROW(io::parse_matrix(matrix_json({{e0}}, 2, 1), data_dir), format_error);
  EXPECT_THROW(io::parse_matrix(matrix_json({{e0, e0}}), data_dir), format_error);
  EXPECT_THROW(io::parse_matrix(matrix_json({{e0}}, 0, 1), data_dir), format_error);
  Json missing = matrix_json({{e0}});
  missing.erase("entries");
  EXPECT_THROW(io::parse_matrix(missing, data_dir), format_error);
  EXPECT_THROW(io::parse_matrix(matrix_json({{Json{"1", "0", "0", 0}}}), data_dir), format_error);
}

TEST(Io, AlgebraReferences) {
  EXPECT_TRUE(Algebra::same(io::resolve_algebra(Json("builtin:mat2"), data_dir), builtin_algebra("mat2")));
  EXPECT_THROW(io::resolve_algebra(Json("builtin:octonion"), data_dir), format_error);
  EXPECT_THROW(io::resolve_algebra(Json("no_such_file.json"), data_dir), format_error);
  EXPECT_THROW(io::resolve_algebra(Json(7), data_dir), format_error);

  const AlgebraPtr split = io::resolve_algebra(Json("split_quaternion.alg.json"), data_dir);
  EXPECT_EQ(split->dim(), 4u);
  EXPECT_TRUE(qt::naive_associative_unital(split->constants()));
}

TEST(Io, InvalidInlineAlgebraIsRejected) {
  // e0 e1 = e0 + e1, so e0 is not a unit.
  Json alg = Json::parse(R"({"name": "broken", "dim": 2,
    "constants": [[["1", "0"], ["1", "1"]], [["0", "1"], ["0", "1"]]]})");
  EXPECT_THROW(io::parse_algebra(alg), invalid_algebra_error);
  alg["constants"][1].erase(1);
  EXPECT_THROW(io::parse_algebra(alg), format_error);
}

TEST(Io, Systems) {
  const LinearSystem sys = io::parse_system(io::read_json_file(data_dir / "quaternion_system.json"), data_dir);
  EXPECT_EQ(sys.size(), 2u);
  Json j = io::read_json_file(data_dir / "quaternion_system.json");
  j["rhs"].erase(1);
  EXPECT_THROW(io::parse_system(j, data_dir), format_error);
  EXPECT_THROW(io::read_json_file(data_dir / "missing.json"), format_error);
}

TEST(Io, RoundTrips) {
  qt::Rng rng(9);
  for (const char* name : {"quaternion", "mat2", "complex"}) {
    const AlgebraPtr alg = builtin_algebra(name);
    for (int t = 0; t < 10; ++t) {
      const LinMap f = qt::random_map(rng, alg);
      EXPECT_EQ(io::parse_mapping(alg, Json::parse(io::to_json(f).dump())), f);
      const MapMatrix a = qt::random_term_matrix(rng, alg, 2, 3);
      EXPECT_EQ(io::parse_matrix(Json::parse(io::to_json(a).dump()), data_dir), a);
      const AlgElement x = qt::random_element(rng, alg);
      EXPECT_EQ(io::parse_element(alg, Json::parse(io::to_json(x).dump())), x);
    }
  }
  const AlgebraPtr split = io::resolve_algebra(Json("split_quaternion.alg.json"), data_dir);
  const MapMatrix a = identity_matrix(split, 2);
  const MapMatrix back = io::parse_matrix(Json::parse(io::to_json(a).dump()), data_dir);
  EXPECT_EQ(back.algebra()->constants(), split->constants());
}

TEST(Io, TextRendering) {
  const auto i = AlgElement::basis(H(), 1), j = AlgElement::basis(H(), 2);
  EXPECT_EQ(io::format_map(LinMap::zero(H())), "0");
  EXPECT_EQ(io::format_map(tensor(i, j)), "e1⊗e2");
  EXPECT_EQ(io::format_map(from_terms(H(), {{Scalar(-1, 2) * AlgElement::unit(H()), AlgElement::unit(H())},
                                            {i, j}})),
            "-1/2 e0⊗e0 + e1⊗e2");
  EXPECT_EQ(io::format_matrix(identity_matrix(H(), 2)), "[1,1] e0⊗e0\n[1,2] 0\n[2,1] 0\n[2,2] e0⊗e0\n");
}
