#pragma once

#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "gp/linalg.hpp"
#include "gp/mesh.hpp"
#include "gp/polynomial.hpp"

namespace gp {



enum class SpaceKind { Lagrange, CrouzeixRaviart };

/// Node key: sorted (global vertex, multiplicity) pairs with multiplicity > 0.
using NodeKey = std::vector<std::pair<int, int>>;

/// Global finite element space on the active simplices of a mesh.
///
/// Elements are addressed by position in elements() (active ids in
/// increasing order, the same order as ElementDistance). Local basis
/// functions are the nodal Lagrange basis of degree K, or the CR basis
/// psi_j = 1 - d lambda_j (local j is the face opposite vertex j). A local
/// dof of -1 marks a basis function removed by the zero trace constraint.
/// The mesh must outlive the space.
class FeSpace {
public:
  static FeSpace lagrange(const Mesh& mesh, int K, bool zero_trace = false);
  static FeSpace crouzeix_raviart(const Mesh& mesh);

  [[nodiscard]] SpaceKind kind() const { return kind_; }
  [[nodiscard]] int degree() const { return K_; }
  [[nodiscard]] bool zero_trace() const { return zero_trace_; }
  [[nodiscard]] const Mesh& mesh() const { return *mesh_; }
  [[nodiscard]] int dim() const { return mesh_->dim(); }
  [[nodiscard]] std::string describe() const;

  [[nodiscard]] std::size_t num_dofs() const { return ndofs_; }
  [[nodiscard]] std::size_t num_elements() const { return elements_.size(); }
  [[nodiscard]] const std::vector<int>& elements() const { return elements_; }
  [[nodiscard]] std::size_t local_size() const { return nloc_; }
  [[nodiscard]] int local_dof(std::size_t e, std::size_t a) const { return l2g_[e * nloc_ + a]; }
  [[nodiscard]] double volume(std::size_t e) const;
  /// Lagrange only: key of every global dof.
  [[nodiscard]] const std::vector<NodeKey>& dof_keys() const { return keys_; }

  [[nodiscard]] Eigen::MatrixXd local_mass(std::size_t e) const;
  [[nodiscard]] Eigen::MatrixXd local_stiffness(std::size_t e) const;
  /// Local basis values at a barycentric point of element e.
  [[nodiscard]] Eigen::VectorXd local_values(std::size_t e, const std::vector<double>& lambda) const;
  /// Local basis gradients (rows) at a barycentric point.
  [[nodiscard]] Eigen::MatrixXd local_gradients(std::size_t e, const std::vector<double>& lambda) const;
  /// Local basis functions as exact polynomials.
  [[nodiscard]] const std::vector<BarycentricPoly>& local_basis() const;

  /// Mass matrix; optional per-element weights multiply each local block.
  [[nodiscard]] SparseMatrix mass(const std::vector<double>* weights = nullptr) const;
  /// Mass restricted to a subset of elements.
  [[nodiscard]] SparseMatrix mass_on(const std::vector<int>& elems) const;
  /// (Broken) stiffness matrix.
  [[nodiscard]] SparseMatrix stiffness(const std::vector<double>* weights = nullptr) const;

  // Broken companion space: the same local basis without interelement
  // continuity; broken dof (e,a) has index e*local_size()+a.
  [[nodiscard]] std::size_t broken_size() const { return elements_.size() * nloc_; }
  /// L(n,(e,a)) = integral of b_n times the broken basis function (e,a).
  [[nodiscard]] SparseMatrix broken_rhs() const;
  [[nodiscard]] SparseMatrix broken_mass(const std::vector<double>* weights = nullptr) const;
  /// Coefficients of a space function in the broken space.
  [[nodiscard]] Eigen::VectorXd to_broken(const Eigen::VectorXd& x) const;

  /// Elements on which the function with coefficients x has a nonzero local coefficient.
  [[nodiscard]] std::vector<int> support(const Eigen::VectorXd& x) const;
  /// Global dofs with a basis function supported on one of the elements.
  [[nodiscard]] std::vector<int> dofs_of_elements(const std::vector<int>& elems) const;
  /// Nodal (Lagrange) or face-midpoint (CR) interpolation of a function of x.
  [[nodiscard]] Eigen::VectorXd interpolate(const std::function<double(const std::vector<double>&)>& f) const;

private:
  FeSpace() = default;
  const Mesh* mesh_ = nullptr;
  SpaceKind kind_ = SpaceKind::Lagrange;
  int K_ = 1;
  bool zero_trace_ = false;
  std::vector<int> elements_;
  std::size_t nloc_ = 0;
  std::size_t ndofs_ = 0;
  std::vector<int> l2g_;
  std::vector<NodeKey> keys_;
  std::vector<std::vector<std::vector<double>>> grads_; // barycentric gradients per element
  std::vector<BarycentricPoly> cr_basis_;
};

/// Key of the node with multiplicities mult on a simplex with vertices verts.
[[nodiscard]] NodeKey node_key(const std::vector<int>& verts, const MultiIndex& mult);

/// All nonempty vertex subsets of Gamma faces.
[[nodiscard]] std::set<std::vector<int>> gamma_subsets(const Mesh& mesh);

/// True if the set of vertices lies in a single face of the mesh's Gamma.
[[nodiscard]] bool on_gamma(const Mesh& mesh, std::vector<int> verts);

/// Barycentric coordinates of a point x with respect to simplex id.
[[nodiscard]] std::vector<double> barycentric_of(const Mesh& mesh, int id, const std::vector<double>& x);

/// Physical coordinates of local node a of element e.
[[nodiscard]] std::vector<double> node_coordinates(const FeSpace& V, std::size_t e, std::size_t a);

/// For a fine space on a refinement of the coarse mesh (the fine mesh must
/// be a refined copy of the coarse one, so simplex ids are shared):
/// mixed(m,n) = integral of coarse b_m times fine b_n. Requires the fine
/// Lagrange degree to be at least the coarse polynomial degree.
[[nodiscard]] SparseMatrix mixed_mass(const FeSpace& coarse, const FeSpace& fine);
/// Conforming prolongation: fine coefficients of coarse basis functions.
[[nodiscard]] SparseMatrix prolongation(const FeSpace& coarse, const FeSpace& fine);
/// Broken-gradient Gram: G(m,n) = sum over fine T of integral grad coarse b_m . grad fine b_n.
[[nodiscard]] SparseMatrix mixed_stiffness(const FeSpace& coarse, const FeSpace& fine);

struct DecompositionCheck {
  bool continuous = true;           // D_i v agrees across the patch
  bool reproduces = true;           // sum_i phi_i D_i v == v exactly
  bool preserves_zero_trace = true; // phi_i D_i v vanishes on Gamma when v does
  std::size_t patches = 0;
};

/// Exact check of the global decomposition v = sum_i phi_i D_i v for a
/// Lagrange space and exact coefficients.
[[nodiscard]] DecompositionCheck check_global_decomposition(const FeSpace& V, const std::vector<Rational>& coeffs);

} // namespace gp
