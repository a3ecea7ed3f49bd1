// Solves a 2x2 system of linear equations over the quaternions by the
// RC-inverse and by the field-level reduction, and prints both answers.

#include <iostream>

#include <qdet/io.hpp>
#include <qdet/qdet.hpp>

int main() {
  using namespace qdet;
  const AlgebraPtr h = builtin_algebra("quaternion");
  const auto one = AlgElement::unit(h);
  const auto i = AlgElement::basis(h, 1);
  const auto j = AlgElement::basis(h, 2);
  const auto k = AlgElement::basis(h, 3);

  //  x1 + i x1 j + i x2         = k
  //  j x1 + x2 k - 2 x2         = 1
  MapMatrix a(h, 2, 2);
  a.set(0, 0, from_terms(h, {{one, one}, {i, j}}));
  a.set(0, 1, left_mul(i));
  a.set(1, 0, left_mul(j));
  a.set(1, 1, right_mul(k) - Scalar(2) * LinMap::identity(h));
  const LinearSystem sys(a, {k, one});

  const SolveReport qd = solve_quasidet(sys);
  const SolveReport red = solve_reduction(sys);
  for (std::size_t n = 0; n < 2; ++n)
    std::cout << "x" << n + 1 << " = " << io::format_element((*qd.solution)[n]) << "   (reduction: "
              << io::format_element((*red.solution)[n]) << ")\n";

  const MapMatrix inv = rc_inverse(a);
  std::cout << "a^-1 =\n" << io::format_matrix(inv);
  std::cout << "quasidet(a, 1, 1) = " << io::format_map(quasideterminant(a, 0, 0)) << "\n";
}
