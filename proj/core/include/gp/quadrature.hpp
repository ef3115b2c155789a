#pragma once

#include <vector>

namespace gp {

/// Quadrature rule on a d-simplex in barycentric coordinates; weights are
/// normalized to sum to one, so the rule approximates the mean value.
struct QuadratureRule {
  int degree = 0;
  std::vector<std::vector<double>> points; // d+1 barycentric coordinates each
  std::vector<double> weights;
};

/// Grundmann-Moeller rule exact for polynomials of total degree <= degree
/// (rounded up to the next odd degree). Cached.
[[nodiscard]] const QuadratureRule& simplex_rule(int d, int degree);

} // namespace gp
