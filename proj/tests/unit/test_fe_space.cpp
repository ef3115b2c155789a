#include <doctest.h>

#include <cmath>

#include "gp/fe_space.hpp"
#include "gp/random.hpp"

using gp::Rational;

namespace {

double total(const gp::SparseMatrix& m) {
  double s = 0.0;
  for (int k = 0; k < m.outerSize(); ++k) {
    for (gp::SparseMatrix::InnerIterator it(m, k); it; ++it) s += it.value();
  }
  return s;
}

gp::Mesh graded_square() {
  gp::Mesh m = gp::kuhn_initial_mesh(2, 2);
  for (int r = 0; r < 3; ++r) m.refine_closure({m.active().front()});
  return m;
}

} // namespace

TEST_CASE("Lagrange dof counts on the unit square") {
  gp::Mesh m = gp::kuhn_initial_mesh(2, 1);
  CHECK(gp::FeSpace::lagrange(m, 1).num_dofs() == 4);
  CHECK(gp::FeSpace::lagrange(m, 2).num_dofs() == 9);
  CHECK(gp::FeSpace::lagrange(m, 3).num_dofs() == 16);
  m.mark_boundary_gamma();
  CHECK(gp::FeSpace::lagrange(m, 1, true).num_dofs() == 0);
  CHECK(gp::FeSpace::lagrange(m, 3, true).num_dofs() == 4);
  CHECK(gp::FeSpace::crouzeix_raviart(m).num_dofs() == 5);
}

TEST_CASE("mass integrates one and stiffness kills constants") {
  const gp::Mesh m = graded_square();
  for (int K = 1; K <= 3; ++K) {
    const auto V = gp::FeSpace::lagrange(m, K);
    CHECK(total(V.mass()) == doctest::Approx(4.0).epsilon(1e-12));
    const Eigen::VectorXd one = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(V.num_dofs()));
    CHECK((V.stiffness() * one).norm() < 1e-10);
  }
  const auto C = gp::FeSpace::crouzeix_raviart(m);
  CHECK(total(C.mass()) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("stiffness reproduces the Dirichlet energy of a quadratic") {
  const gp::Mesh m = graded_square();
  const auto V = gp::FeSpace::lagrange(m, 2);
  // u = x^2 + x*y on [0,2]^2: integral |grad u|^2 = integral (2x+y)^2 + x^2
  const Eigen::VectorXd u = V.interpolate([](const std::vector<double>& x) { return x[0] * x[0] + x[0] * x[1]; });
  const double energy = u.dot(V.stiffness() * u);
  // integral over [0,2]^2 of 5x^2 + 4xy + y^2 = 5*16/3 + 4*4 + 16/3
  CHECK(energy == doctest::Approx(96.0 / 3.0 + 16.0).epsilon(1e-11));
}

TEST_CASE("CR mass is diagonal in two dimensions") {
  const gp::Mesh m = graded_square();
  const auto V = gp::FeSpace::crouzeix_raviart(m);
  const gp::SparseMatrix M = V.mass();
  for (int k = 0; k < M.outerSize(); ++k) {
    for (gp::SparseMatrix::InnerIterator it(M, k); it; ++it) {
      if (it.row() != it.col()) CHECK(std::abs(it.value()) < 1e-15);
    }
  }
}

TEST_CASE("global decomposition is exact and continuous") {
  gp::Mesh m = gp::kuhn_initial_mesh(2, 1);
  gp::Rng rng(7);
  for (int K = 1; K <= 3; ++K) {
    const auto V = gp::FeSpace::lagrange(m, K);
    std::vector<Rational> c;
    for (std::size_t i = 0; i < V.num_dofs(); ++i) c.emplace_back(static_cast<int>(gp::uniform_index(rng, 19)) - 9, 7);
    const auto rep = gp::check_global_decomposition(V, c);
    CHECK(rep.reproduces);
    CHECK(rep.continuous);
    CHECK(rep.patches == 4);
  }
}

TEST_CASE("decomposition preserves the zero trace") {
  gp::Mesh m = gp::kuhn_initial_mesh(2, 2);
  m.mark_boundary_gamma(0, 0);
  const auto V = gp::FeSpace::lagrange(m, 2, true);
  std::vector<Rational> c;
  for (std::size_t i = 0; i < V.num_dofs(); ++i) c.emplace_back(static_cast<int>(i % 5) - 2, 3);
  const auto rep = gp::check_global_decomposition(V, c);
  CHECK(rep.reproduces);
  CHECK(rep.preserves_zero_trace);
}

TEST_CASE("two-mesh transfer agrees with prolongation") {
  gp::Mesh coarse = graded_square();
  gp::Mesh fine = coarse;
  fine.uniform_refine();
  fine.refine_closure({fine.active().back()});
  const auto Vc = gp::FeSpace::lagrange(coarse, 2);
  const auto Vf = gp::FeSpace::lagrange(fine, 2);
  const Eigen::MatrixXd X = Eigen::MatrixXd(gp::mixed_mass(Vc, Vf));
  const gp::SparseMatrix P = gp::prolongation(Vc, Vf);
  const Eigen::MatrixXd Y = Eigen::MatrixXd(gp::SparseMatrix(P.transpose()) * Vf.mass());
  CHECK((X - Y).norm() < 1e-12);
  const Eigen::MatrixXd S = Eigen::MatrixXd(gp::mixed_stiffness(Vc, Vf));
  const Eigen::MatrixXd T = Eigen::MatrixXd(gp::SparseMatrix(P.transpose()) * Vf.stiffness());
  CHECK((S - T).norm() < 1e-10);
  // coarse function reproduced on the fine mesh
  const auto f = [](const std::vector<double>& x) { return x[0] * x[1] - x[1] * x[1]; };
  CHECK((P * Vc.interpolate(f) - Vf.interpolate(f)).norm() < 1e-12);
}
