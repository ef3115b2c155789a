#include <doctest.h>

#include <cmath>

#include "gp/projection.hpp"
#include "gp/reference_element.hpp"

namespace {

gp::Mesh corner_mesh(int d, int rounds) {
  gp::Mesh m = gp::kuhn_initial_mesh(d, 1);
  for (int r = 0; r < rounds; ++r) {
    std::vector<int> marked;
    for (int id : m.active()) {
      for (int v : m.simplex(id).v) {
        bool origin = true;
        for (const auto& c : m.vertex(v)) origin = origin && c.to_double() == 0.0;
        if (origin) {
          marked.push_back(id);
          break;
        }
      }
    }
    m.refine_closure(marked);
  }
  return m;
}

} // namespace

TEST_CASE("q_new reference values") {
  CHECK(gp::q_new(2, 1) == doctest::Approx(1.0 / 3.0));
  CHECK(std::round(gp::q_new(3, 2) * 1e4) == 3033);
  CHECK(std::round(gp::q_new_limit() * 1e4) == 1716);
  CHECK(gp::q_from_kappa(4.0) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("single simplex spectrum is sharp") {
  for (int d = 1; d <= 3; ++d) {
    for (int K = 1; K <= 3; ++K) {
      const gp::Mesh m = gp::single_simplex_mesh(d);
      const auto V = gp::FeSpace::lagrange(m, K);
      const auto cert = gp::certify_condition(V);
      CHECK(cert.lambda_max == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(cert.lambda_min == doctest::Approx(K / (2.0 * K + d)).epsilon(1e-10));
      CHECK(cert.residual < 1e-9);
    }
  }
}

TEST_CASE("condition bound on graded meshes") {
  for (int d = 2; d <= 3; ++d) {
    const gp::Mesh m = corner_mesh(d, d == 2 ? 6 : 3);
    for (int K = 1; K <= 2; ++K) {
      const auto V = gp::FeSpace::lagrange(m, K);
      const auto cert = gp::certify_condition(V);
      CHECK(cert.lambda_max == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(cert.kappa <= (2.0 * K + d) / K + 1e-8);
    }
    const auto cr = gp::certify_condition(gp::FeSpace::crouzeix_raviart(m));
    CHECK(cr.kappa <= d * d / (d + 2.0) + 1e-8);
  }
}

TEST_CASE("dense and Lanczos certificates agree") {
  const gp::Mesh m = corner_mesh(2, 5);
  const auto V = gp::FeSpace::lagrange(m, 2);
  const auto a = gp::certify_condition(V, "", 100000);
  const auto b = gp::certify_condition(V, "", 0);
  CHECK(b.method == "lanczos");
  CHECK(a.lambda_min == doctest::Approx(b.lambda_min).epsilon(1e-9));
  CHECK(a.lambda_max == doctest::Approx(b.lambda_max).epsilon(1e-9));
}

TEST_CASE("two-sided identity and symmetry") {
  gp::Mesh m = corner_mesh(2, 4);
  for (int K = 1; K <= 3; ++K) {
    const auto V = gp::FeSpace::lagrange(m, K);
    const gp::ApproxOperator C(V);
    const gp::L2Projector Q(V);
    const auto id = gp::check_two_sided_identity(C, Q);
    CHECK(id.cq_defect < 1e-12);
    CHECK(id.qc_defect < 1e-12);
    CHECK(id.symmetry < 1e-12);
    CHECK(id.form_defect < 1e-12);
  }
  m.mark_boundary_gamma();
  const auto VG = gp::FeSpace::lagrange(m, 2, true);
  const gp::ApproxOperator CG(VG);
  const auto id = gp::check_two_sided_identity(CG, gp::L2Projector(VG));
  CHECK(id.cq_defect < 1e-12);
  CHECK(id.symmetry < 1e-12);
  const auto cert = gp::certify_condition(VG);
  CHECK(cert.kappa <= 3.0 + 1e-8);
}

TEST_CASE("C is the identity on continuous degree K-1 functions") {
  const gp::Mesh m = corner_mesh(2, 3);
  const auto V = gp::FeSpace::lagrange(m, 3);
  const gp::ApproxOperator C(V);
  const Eigen::VectorXd v = V.interpolate([](const std::vector<double>& x) { return 1.0 + x[0] * x[1] - 2.0 * x[1] * x[1]; });
  CHECK((C.apply(v) - v).norm() < 1e-12 * v.norm());
}

TEST_CASE("C of a single-element function reaches one layer") {
  const gp::Mesh m = corner_mesh(2, 4);
  const auto V = gp::FeSpace::lagrange(m, 2);
  const gp::ApproxOperator C(V);
  const gp::ElementDistance dist(m, gp::DistanceKind::Vertex);
  gp::Rng rng(3);
  for (int e : {0, 5, 11}) {
    const Eigen::VectorXd y = gp::random_broken(V, rng, {e});
    const auto supp = V.support(C.apply_broken(y));
    for (int t : supp) CHECK(dist(static_cast<std::size_t>(t), static_cast<std::size_t>(e)) <= 1);
  }
}

TEST_CASE("CR in two dimensions: C equals Q") {
  const gp::Mesh m = corner_mesh(2, 5);
  const auto V = gp::FeSpace::crouzeix_raviart(m);
  const gp::ApproxOperator C(V);
  const gp::L2Projector Q(V);
  gp::Rng rng(5);
  const Eigen::VectorXd y = gp::random_broken(V, rng);
  const Eigen::VectorXd a = C.apply_broken(y);
  const Eigen::VectorXd b = Q.project_broken(y);
  CHECK((a - b).norm() <= 1e-12 * b.norm());
}

TEST_CASE("projection basics") {
  const gp::Mesh m = corner_mesh(2, 3);
  const auto V = gp::FeSpace::lagrange(m, 2);
  const gp::L2Projector Q(V);
  const auto f = [](const std::vector<double>& x) { return x[0] * x[0] - x[1]; };
  const Eigen::VectorXd v = V.interpolate(f);
  CHECK((Q.project_function(f) - v).norm() < 1e-12 * v.norm());
  CHECK((Q.project_broken(V.to_broken(v)) - v).norm() < 1e-12 * v.norm());
  gp::Rng rng(9);
  const gp::SparseMatrix BM = V.broken_mass();
  for (int t = 0; t < 100; ++t) {
    const Eigen::VectorXd y = gp::random_broken(V, rng);
    CHECK(gp::mass_norm(Q.mass(), Q.project_broken(y)) <= gp::mass_norm(BM, y) * (1 + 1e-12));
  }
}

TEST_CASE("a bubble orthogonal to the space projects to zero") {
  // On one simplex, lambda_0 lambda_1 lambda_2 minus its P1 projection.
  const gp::Mesh m = gp::single_simplex_mesh(2);
  const auto V = gp::FeSpace::lagrange(m, 1);
  const gp::L2Projector Q(V);
  const gp::BarycentricPoly bubble = gp::BarycentricPoly::monomial({1, 1, 1});
  const Eigen::VectorXd qb = Q.project_polynomials({bubble});
  gp::BarycentricPoly orth = bubble;
  const auto& basis = V.local_basis();
  for (std::size_t a = 0; a < basis.size(); ++a) orth -= basis[a] * gp::Rational(qb(static_cast<Eigen::Index>(a)));
  const Eigen::VectorXd qo = Q.project_polynomials({orth});
  CHECK(qo.norm() <= 1e-10 * qb.norm());
}

TEST_CASE("Chebyshev iterates: error bound and locality") {
  const gp::Mesh m = corner_mesh(2, 5);
  const gp::ElementDistance dist(m, gp::DistanceKind::Vertex);
  for (int K = 1; K <= 2; ++K) {
    const auto V = gp::FeSpace::lagrange(m, K);
    const gp::ApproxOperator C(V);
    const gp::L2Projector Q(V);
    const double q = gp::q_new(2, K);
    gp::Rng rng(11);
    const Eigen::VectorXd y = gp::random_broken(V, rng);
    const Eigen::VectorXd qu = Q.project_broken(y);
    const auto it = gp::accelerated_iterates(C, y, 15);
    CHECK(it[0].norm() == 0.0);
    for (int nu = 1; nu <= 15; ++nu) {
      const double err = gp::mass_norm(Q.mass(), it[static_cast<std::size_t>(nu)] - qu) / gp::mass_norm(Q.mass(), qu);
      CHECK(err <= gp::chebyshev_bound(q, nu) * (1 + 1e-9) + 1e-14);
    }
    const Eigen::VectorXd yl = gp::random_broken(V, rng, {0});
    const auto loc = gp::accelerated_iterates(C, yl, 4);
    for (int nu = 1; nu <= 4; ++nu) {
      for (int t : V.support(loc[static_cast<std::size_t>(nu)])) CHECK(dist(static_cast<std::size_t>(t), 0) <= nu);
    }
  }
}

TEST_CASE("Richardson reproduces continuous degree K-1 data in one step") {
  const gp::Mesh m = corner_mesh(2, 3);
  const auto V = gp::FeSpace::lagrange(m, 2);
  const gp::ApproxOperator C(V);
  const Eigen::VectorXd v = V.interpolate([](const std::vector<double>& x) { return 2.0 - x[0] + 3.0 * x[1]; });
  const auto it = gp::accelerated_iterates(C, V.to_broken(v), 1, gp::IterationKind::Richardson);
  CHECK((it[1] - v).norm() < 1e-12 * v.norm());
}

TEST_CASE("decay: exact masked norm dominates samples and obeys the bound") {
  gp::Mesh m = gp::kuhn_initial_mesh(2, 1);
  for (int r = 0; r < 6; ++r) m.uniform_refine();
  const auto V = gp::FeSpace::lagrange(m, 1);
  const gp::L2Projector Q(V);
  const gp::ElementDistance dist(m, gp::DistanceKind::Vertex);
  const auto row = dist.row(0);
  std::vector<int> L;
  for (std::size_t t = 0; t < row.size(); ++t) {
    if (row[t] == 5) L.push_back(static_cast<int>(t));
  }
  REQUIRE(!L.empty());
  const auto dm = gp::measure_decay(Q, dist, L, {0});
  CHECK(dm.delta == 5);
  CHECK(dm.sampled <= dm.exact * (1 + 1e-9));
  CHECK(dm.exact <= dm.bound);
  CHECK(dm.bound == doctest::Approx(2.0 * std::pow(1.0 / 3.0, 4) / (1 + std::pow(1.0 / 3.0, 8))));
  const auto self = gp::measure_decay(Q, dist, {0}, {0});
  CHECK(self.exact <= 1.0 + 1e-12);
}
