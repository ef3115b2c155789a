#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace gp {

using SparseMatrix = Eigen::SparseMatrix<double>;
using LinearMap = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

/// Dense size up to which direct dense factorizations are used.
inline constexpr std::size_t kDenseLimit = 5000;

[[nodiscard]] Eigen::MatrixXd to_dense(const SparseMatrix& a);

/// max |A - A^T| relative to max |A| (0 for the zero matrix).
[[nodiscard]] double symmetry_defect(const SparseMatrix& a);

struct GeneralizedEigen {
  Eigen::VectorXd values; // ascending
  Eigen::MatrixXd vectors; // B-orthonormal columns (empty if not requested)
  double residual = 0.0;   // max_k |A x_k - l_k B x_k| / (|A| |x_k|), NaN without vectors
};

/// Dense symmetric-definite pencil A x = l B x (Cholesky reduction).
/// Throws NumericalError if B is not positive definite.
[[nodiscard]] GeneralizedEigen generalized_eigen(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, bool vectors = true);

struct ExtremeEigen {
  double min = 0.0;
  double max = 0.0;
  double residual = 0.0; // largest relative Ritz residual of the two extremes
  std::size_t steps = 0;
  std::string method;
};

/// Extreme eigenvalues of an operator op that is self-adjoint in the inner
/// product induced by the SPD map b. Lanczos with full reorthogonalization.
[[nodiscard]] ExtremeEigen lanczos_extremes(const LinearMap& op, const LinearMap& b, std::size_t n, std::size_t max_steps = 400,
                                            double tol = 1e-11, unsigned long long seed = 1);

struct CgResult {
  Eigen::VectorXd x;
  std::size_t iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

/// Unpreconditioned conjugate gradients for SPD systems.
[[nodiscard]] CgResult conjugate_gradient(const SparseMatrix& a, const Eigen::VectorXd& rhs, double tol = 1e-12,
                                          std::size_t max_iter = 0);

/// Reusable solver for an SPD sparse matrix: dense Cholesky up to
/// kDenseLimit unknowns, sparse Cholesky above.
class SpdSolver {
public:
  explicit SpdSolver(const SparseMatrix& a);
  ~SpdSolver();
  SpdSolver(SpdSolver&&) noexcept;
  SpdSolver& operator=(SpdSolver&&) noexcept;

  [[nodiscard]] Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
  [[nodiscard]] Eigen::MatrixXd solve(const Eigen::MatrixXd& rhs) const;
  [[nodiscard]] std::size_t size() const { return n_; }
  [[nodiscard]] const std::string& method() const { return method_; }

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::size_t n_ = 0;
  std::string method_;
};

} // namespace gp
