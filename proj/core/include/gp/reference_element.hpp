#pragma once

#include <vector>

#include <Eigen/Dense>

#include "gp/polynomial.hpp"

namespace gp {

/// Exact single-simplex data for Lagrange elements of degree K and the
/// degree K-1 patch spaces. All integrals are mean values (scale by |T|).
struct ReferenceElement {
  int d = 0;
  int K = 0;

  /// Lagrange nodes x_b with lambda(x_b) = b/K, |b| = K.
  std::vector<MultiIndex> nodes;
  std::vector<BarycentricPoly> basis;
  RationalMatrix mass_exact;
  Eigen::MatrixXd mass;
  Eigen::VectorXd basis_mean;
  /// [j][a] = dN_a/dlambda_j (lambda treated as independent variables)
  std::vector<std::vector<BarycentricPoly>> derivatives;
  /// [j*(d+1)+l](a,b) = mean(dN_a/dlambda_j * dN_b/dlambda_l)
  std::vector<Eigen::MatrixXd> grad_products;

  /// Degree K-1 nodal basis (a single constant when K = 1).
  std::vector<MultiIndex> lower_nodes;
  std::vector<BarycentricPoly> lower_basis;
  /// [j](b,b') = mean(lambda_j M_b M_b')
  std::vector<Eigen::MatrixXd> weighted_lower;
  /// [j](b,a) = mean(lambda_j M_b N_a)
  std::vector<Eigen::MatrixXd> cross;
  /// [j](a,b) = nodal value of lambda_j M_b at x_a, i.e. (a_j/K) M_b(x_a)
  std::vector<Eigen::MatrixXd> lift;

  [[nodiscard]] std::size_t size() const { return nodes.size(); }
  [[nodiscard]] std::size_t lower_size() const { return lower_nodes.size(); }
  /// Values of all nodal basis functions at a barycentric point.
  [[nodiscard]] Eigen::VectorXd evaluate(const std::vector<double>& lambda) const;
};

/// Cached, thread-safe access. Supports 1 <= d <= 3 and 1 <= K <= 6.
const ReferenceElement& reference_element(int d, int K);

/// Crouzeix-Raviart basis psi_j = 1 - d lambda_j on a d-simplex.
std::vector<BarycentricPoly> cr_basis(int d);
/// Mean-normalized CR mass by exact integration of the basis products.
RationalMatrix cr_mass_exact(int d);
/// Closed form |T|-free CR mass (2 - d + delta_jl d^2)/((d+2)(d+1)).
RationalMatrix cr_mass_formula(int d);

} // namespace gp
