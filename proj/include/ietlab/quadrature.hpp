#pragma once

#include <functional>
#include <vector>

#include "ietlab/scalar.hpp"

namespace ietlab {

struct GaussRule {
  std::vector<Scalar> nodes;    // on [-1, 1]
  std::vector<Scalar> weights;
};

// n-point Gauss-Legendre rule at the given precision (cached, thread-safe)
const GaussRule& gauss_legendre(int n, int bits);

struct QuadResult {
  Scalar value;
  Scalar error;  // sum of |refined - coarse| over accepted cells
  long evaluations = 0;
};

// Adaptive Gauss-Legendre on [a, b] for a smooth integrand. Cells are halved until
// the two-halves estimate agrees with the whole-cell one within tol * (cell / (b - a)).
// Throws QuadratureBudgetExceeded past `budget` integrand evaluations.
QuadResult integrate_adaptive(const std::function<Scalar(const Scalar&)>& f, const Scalar& a, const Scalar& b,
                              const Scalar& tol, long budget, int nodes = 10, int max_depth = 40);

}  // namespace ietlab
