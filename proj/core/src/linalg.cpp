#include "gp/linalg.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include "gp/error.hpp"
#include "gp/random.hpp"

namespace gp {

Eigen::MatrixXd to_dense(const SparseMatrix& a) { return Eigen::MatrixXd(a); }

double symmetry_defect(const SparseMatrix& a) {
  const SparseMatrix at = a.transpose();
  const SparseMatrix diff = a - at;
  double dmax = 0.0;
  double amax = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(diff, k); it; ++it) dmax = std::max(dmax, std::abs(it.value()));
  }
  for (int k = 0; k < a.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(a, k); it; ++it) amax = std::max(amax, std::abs(it.value()));
  }
  return amax == 0.0 ? 0.0 : dmax / amax;
}

GeneralizedEigen generalized_eigen(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, bool vectors) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) throw InputError("generalized_eigen: shape mismatch");
  GeneralizedEigen out;
  if (a.rows() == 0) return out;
  const Eigen::MatrixXd as = 0.5 * (a + a.transpose());
  const Eigen::MatrixXd bs = 0.5 * (b + b.transpose());
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(as, bs, vectors ? Eigen::ComputeEigenvectors | Eigen::Ax_lBx : Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
  if (es.info() != Eigen::Success) throw NumericalError("generalized_eigen: B is not positive definite or the solver failed");
  out.values = es.eigenvalues();
  if (!vectors) {
    out.residual = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  out.vectors = es.eigenvectors();
  const double anorm = std::max(as.cwiseAbs().rowwise().sum().maxCoeff(), bs.cwiseAbs().rowwise().sum().maxCoeff() * out.values.cwiseAbs().maxCoeff());
  const Eigen::MatrixXd r = as * out.vectors - bs * out.vectors * out.values.asDiagonal();
  double res = 0.0;
  for (Eigen::Index k = 0; k < r.cols(); ++k) {
    const double xn = out.vectors.col(k).norm();
    if (xn > 0.0 && anorm > 0.0) res = std::max(res, r.col(k).norm() / (anorm * xn));
  }
  out.residual = res;
  return out;
}

ExtremeEigen lanczos_extremes(const LinearMap& op, const LinearMap& b, std::size_t n, std::size_t max_steps, double tol,
                              unsigned long long seed) {
  ExtremeEigen out;
  out.method = "lanczos";
  if (n == 0) return out;
  const std::size_t m = std::min(max_steps, n);
  Rng rng(seed);
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = standard_normal(rng);
  // Krylov basis Q (B-orthonormal) and its B-image BQ.
  Eigen::MatrixXd Q(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
  Eigen::MatrixXd BQ(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  Eigen::VectorXd bv = b(v);
  v /= std::sqrt(v.dot(bv));
  bv = b(v);
  std::size_t k = 0;
  double res_min = 0.0;
  double res_max = 0.0;
  for (; k < m; ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    Q.col(kk) = v;
    BQ.col(kk) = bv;
    Eigen::VectorXd w = op(v);
    for (int pass = 0; pass < 2; ++pass) {
      const Eigen::VectorXd c = BQ.leftCols(kk + 1).transpose() * w;
      if (pass == 0) T.col(kk).head(kk + 1) = c;
      else T.col(kk).head(kk + 1) += c;
      w -= Q.leftCols(kk + 1) * c;
    }
    T.row(kk).head(kk + 1) = T.col(kk).head(kk + 1).transpose();
    Eigen::VectorXd bw = b(w);
    const double beta = std::sqrt(std::max(w.dot(bw), 0.0));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T.topLeftCorner(kk + 1, kk + 1));
    const Eigen::VectorXd& th = es.eigenvalues();
    const double scale = std::max(std::abs(th(0)), std::abs(th(kk)));
    res_min = beta * std::abs(es.eigenvectors()(kk, 0)) / scale;
    res_max = beta * std::abs(es.eigenvectors()(kk, kk)) / scale;
    out.min = th(0);
    out.max = th(kk);
    if ((res_min < tol && res_max < tol && k >= 2) || beta <= 1e-14 * scale || k + 1 == m) {
      ++k;
      break;
    }
    v = w / beta;
    bv = bw / beta;
    if (k + 1 < m) T(kk + 1, kk) = T(kk, kk + 1) = beta;
  }
  out.steps = k;
  out.residual = std::max(res_min, res_max);
  return out;
}

CgResult conjugate_gradient(const SparseMatrix& a, const Eigen::VectorXd& rhs, double tol, std::size_t max_iter) {
  CgResult out;
  const auto n = static_cast<std::size_t>(rhs.size());
  if (max_iter == 0) max_iter = 10 * n + 100;
  out.x = Eigen::VectorXd::Zero(rhs.size());
  const double bn = rhs.norm();
  if (bn == 0.0) {
    out.converged = true;
    return out;
  }
  Eigen::VectorXd r = rhs;
  Eigen::VectorXd p = r;
  double rr = r.squaredNorm();
  for (std::size_t it = 0; it < max_iter; ++it) {
    if (std::sqrt(rr) <= tol * bn) {
      out.converged = true;
      break;
    }
    const Eigen::VectorXd ap = a * p;
    const double alpha = rr / p.dot(ap);
    out.x += alpha * p;
    r -= alpha * ap;
    const double rr_new = r.squaredNorm();
    p = r + (rr_new / rr) * p;
    rr = rr_new;
    out.iterations = it + 1;
  }
  out.relative_residual = (rhs - a * out.x).norm() / bn;
  out.converged = out.converged || out.relative_residual <= tol;
  return out;
}

struct SpdSolver::Impl {
  Eigen::LLT<Eigen::MatrixXd> dense;
  Eigen::SimplicialLLT<SparseMatrix> sparse;
  bool use_dense = true;
};

SpdSolver::SpdSolver(const SparseMatrix& a) : impl_(std::make_unique<Impl>()), n_(static_cast<std::size_t>(a.rows())) {
  if (a.rows() != a.cols()) throw InputError("SpdSolver: matrix must be square");
  impl_->use_dense = n_ <= kDenseLimit / 4;
  if (impl_->use_dense) {
    method_ = "dense-cholesky";
    impl_->dense.compute(Eigen::MatrixXd(a));
    if (impl_->dense.info() != Eigen::Success) throw NumericalError("SpdSolver: matrix is not positive definite");
  } else {
    method_ = "sparse-cholesky";
    impl_->sparse.compute(a);
    if (impl_->sparse.info() != Eigen::Success) throw NumericalError("SpdSolver: matrix is not positive definite");
  }
}

SpdSolver::~SpdSolver() = default;
SpdSolver::SpdSolver(SpdSolver&&) noexcept = default;
SpdSolver& SpdSolver::operator=(SpdSolver&&) noexcept = default;

Eigen::VectorXd SpdSolver::solve(const Eigen::VectorXd& rhs) const {
  if (n_ == 0) return rhs;
  return impl_->use_dense ? Eigen::VectorXd(impl_->dense.solve(rhs)) : Eigen::VectorXd(impl_->sparse.solve(rhs));
}

Eigen::MatrixXd SpdSolver::solve(const Eigen::MatrixXd& rhs) const {
  if (n_ == 0) return rhs;
  return impl_->use_dense ? Eigen::MatrixXd(impl_->dense.solve(rhs)) : Eigen::MatrixXd(impl_->sparse.solve(rhs));
}

} // namespace gp
