#ifndef QDET_QDET_HPP
#define QDET_QDET_HPP

#include "algebra.hpp"
#include "errors.hpp"
#include "funmatrix.hpp"
#include "grid.hpp"
#include "linmap.hpp"
#include "scalar.hpp"
#include "solver.hpp"

#endif // QDET_QDET_HPP
