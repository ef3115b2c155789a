#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gp/distance.hpp"
#include "gp/fe_space.hpp"
#include "gp/linalg.hpp"
#include "gp/random.hpp"

namespace gp {

/// (sqrt(2K+d) - sqrt(K)) / (sqrt(2K+d) + sqrt(K)).
[[nodiscard]] double q_new(int d, int K);
/// Limit of q_new as K -> infinity: (sqrt2-1)/(sqrt2+1).
[[nodiscard]] double q_new_limit();
/// q = (sqrt(kappa)-1)/(sqrt(kappa)+1).
[[nodiscard]] double q_from_kappa(double kappa);
/// Condition bound of C: (2K+d)/K for Lagrange, d^2/(d+2) for CR.
[[nodiscard]] double kappa_bound(const FeSpace& V);
/// A priori spectral interval of C on its space.
[[nodiscard]] std::pair<double, double> spectral_interval(const FeSpace& V);

/// L2-projection onto V (honours the zero trace constraint of V).
class L2Projector {
public:
  explicit L2Projector(const FeSpace& V);

  [[nodiscard]] const FeSpace& space() const { return *V_; }
  [[nodiscard]] const SparseMatrix& mass() const { return M_; }
  [[nodiscard]] const SpdSolver& solver() const { return *solver_; }

  /// Solves M x = rhs.
  [[nodiscard]] Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
  /// Projection of a broken function (coefficients e*nloc+a of V's local basis).
  [[nodiscard]] Eigen::VectorXd project_broken(const Eigen::VectorXd& y) const;
  /// Projection of exact per-element polynomials (one per element, any degree).
  [[nodiscard]] Eigen::VectorXd project_polynomials(const std::vector<BarycentricPoly>& u) const;
  /// Projection of a callable by simplex quadrature exact to degree 2K+2
  /// (approximate for non-polynomial integrands).
  [[nodiscard]] Eigen::VectorXd project_function(const std::function<double(const std::vector<double>&)>& f) const;
  /// Projection of a function of a Lagrange space on a refinement (exact).
  [[nodiscard]] Eigen::VectorXd project_fine(const FeSpace& fine, const Eigen::VectorXd& u) const;

private:
  const FeSpace* V_;
  SparseMatrix M_;
  SparseMatrix L_;
  std::unique_ptr<SpdSolver> solver_;
};

/// The approximating operator C (C_Gamma when V has a zero trace, C_CR for
/// CR spaces), assembled from its local contributions.
class ApproxOperator {
public:
  explicit ApproxOperator(const FeSpace& V);

  [[nodiscard]] const FeSpace& space() const { return *V_; }
  /// Coefficients of C v from coefficients of v in V.
  [[nodiscard]] const SparseMatrix& matrix() const { return C_; }
  /// Form matrix B(m,n) = <C b_n, b_m>.
  [[nodiscard]] const SparseMatrix& form() const { return B_; }
  /// Coefficients of C u from broken coefficients of u.
  [[nodiscard]] const SparseMatrix& broken() const { return Cb_; }
  /// Same as form() but computed as M * matrix(); the two agree exactly in
  /// exact arithmetic.
  [[nodiscard]] SparseMatrix form_via_mass() const;

  [[nodiscard]] Eigen::VectorXd apply(const Eigen::VectorXd& x) const { return C_ * x; }
  [[nodiscard]] Eigen::VectorXd apply_broken(const Eigen::VectorXd& y) const { return Cb_ * y; }
  [[nodiscard]] std::size_t patches() const { return patches_; }

private:
  const FeSpace* V_;
  SparseMatrix C_;
  SparseMatrix B_;
  SparseMatrix Cb_;
  SparseMatrix M_;
  std::size_t patches_ = 0;
};

struct SpectralCertificate {
  int d = 0;
  std::string element; // "K=<n>", "K=<n>,Gamma" or "CR"
  std::string mesh;
  std::size_t dofs = 0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double kappa = 0.0;
  double q = 0.0;
  double bound_kappa = 0.0;
  double residual = 0.0;
  std::string method;

  [[nodiscard]] bool within_bound(double tol = 1e-8) const { return kappa <= bound_kappa + tol; }
};

/// Extreme eigenvalues of B x = l M x. Dense up to dense_limit dofs,
/// Lanczos above.
[[nodiscard]] SpectralCertificate certify_condition(const FeSpace& V, const std::string& mesh_id = "",
                                                    std::size_t dense_limit = 1500);
[[nodiscard]] std::string to_json(const SpectralCertificate& c, int indent = 2);

struct IdentityCheck {
  double cq_defect = 0.0;   // |C u - C Q u| / |C u| (max over samples, M-norm)
  double qc_defect = 0.0;   // |Q C u - C u| / |C u|
  double symmetry = 0.0;    // symmetry defect of the form matrix
  double form_defect = 0.0; // |B - M C| / |B|
};

/// Checks C = QC = CQ on random broken functions, and self-adjointness.
[[nodiscard]] IdentityCheck check_two_sided_identity(const ApproxOperator& C, const L2Projector& Q, int samples = 5,
                                                     unsigned long long seed = 1);

enum class IterationKind { Chebyshev, Richardson };

/// Accelerated iterates Q^(nu) u for a broken function u. Returns the
/// iterates for nu = 0..nu_max (Q^(0) u = 0). Chebyshev uses the interval
/// [a,b]; Richardson is the plain recursion u^(k+1) = u^(k) + C(u - u^(k)).
[[nodiscard]] std::vector<Eigen::VectorXd> accelerated_iterates(const ApproxOperator& C, const Eigen::VectorXd& u_broken, int nu_max,
                                                                IterationKind kind, std::pair<double, double> interval);
[[nodiscard]] std::vector<Eigen::VectorXd> accelerated_iterates(const ApproxOperator& C, const Eigen::VectorXd& u_broken, int nu_max,
                                                                IterationKind kind = IterationKind::Chebyshev);

/// 2 q^nu / (1 + q^{2 nu}).
[[nodiscard]] double chebyshev_bound(double q, int nu);
/// min{2 q^(delta-1) / (1 + q^(2(delta-1))), 1}.
[[nodiscard]] double decay_bound(double q, int delta);

struct DecayMeasurement {
  int delta = 0;
  double exact = 0.0;   // largest singular value of the masked projection
  double sampled = 0.0; // best random lower bound
  double bound = 0.0;
};

/// max ||1_L Q(1_L' u)|| / ||1_L' u||; L and L' are element positions.
[[nodiscard]] DecayMeasurement measure_decay(const L2Projector& Q, const ElementDistance& dist, const std::vector<int>& L,
                                             const std::vector<int>& Lp, int trials = 8, unsigned long long seed = 1);

/// M-norm of a coefficient vector.
[[nodiscard]] double mass_norm(const SparseMatrix& M, const Eigen::VectorXd& x);
/// Random broken coefficients supported on the given elements (all if empty).
[[nodiscard]] Eigen::VectorXd random_broken(const FeSpace& V, Rng& rng, const std::vector<int>& elems = {});

} // namespace gp
