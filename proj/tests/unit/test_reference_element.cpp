#include <doctest.h>

#include <cmath>

#include "gp/reference_element.hpp"

using gp::Rational;

TEST_CASE("linear element on an interval has the classical mass matrix") {
  const auto& re = gp::reference_element(1, 1);
  REQUIRE(re.size() == 2);
  CHECK(re.mass_exact[0][0] == Rational(1, 3));
  CHECK(re.mass_exact[0][1] == Rational(1, 6));
  CHECK(re.mass_exact[1][1] == Rational(1, 3));
}

TEST_CASE("nodal basis is a partition of unity and interpolates") {
  for (int d = 1; d <= 3; ++d) {
    for (int K = 1; K <= 3; ++K) {
      const auto& re = gp::reference_element(d, K);
      gp::BarycentricPoly sum(d);
      for (const auto& b : re.basis) sum += b;
      CHECK(sum.homogenize(K) == gp::BarycentricPoly::constant(d, 1).homogenize(K));
      for (std::size_t a = 0; a < re.size(); ++a) {
        std::vector<Rational> lam;
        for (int v : re.nodes[a]) lam.emplace_back(v, K);
        for (std::size_t b = 0; b < re.size(); ++b) CHECK(re.basis[b].evaluate(lam) == (a == b ? 1 : 0));
      }
    }
  }
}

TEST_CASE("mass rows sum to the basis means") {
  const auto& re = gp::reference_element(2, 2);
  for (std::size_t a = 0; a < re.size(); ++a) {
    Rational s = 0;
    for (std::size_t b = 0; b < re.size(); ++b) s += re.mass_exact[a][b];
    CHECK(s == re.basis[a].mean());
  }
  // vertex functions of P2 have zero mean, edge functions 1/3
  int zero = 0;
  for (const auto& b : re.basis) zero += b.mean() == 0 ? 1 : 0;
  CHECK(zero == 3);
}

TEST_CASE("CR mass closed form matches exact integration") {
  for (int d = 1; d <= 6; ++d) CHECK(gp::cr_mass_exact(d) == gp::cr_mass_formula(d));
  const auto m2 = gp::cr_mass_exact(2);
  CHECK(m2[0][0] == Rational(1, 3));
  CHECK(m2[0][1] == 0);
  const auto m3 = gp::cr_mass_exact(3);
  CHECK(m3[1][1] == Rational(2, 5));
  CHECK(m3[1][2] == Rational(-1, 20));
}

TEST_CASE("lift reproduces lambda_j times the lower basis") {
  const auto& re = gp::reference_element(2, 3);
  for (int j = 0; j <= 2; ++j) {
    const auto& L = re.lift[static_cast<std::size_t>(j)];
    for (std::size_t b = 0; b < re.lower_size(); ++b) {
      double s = 0.0;
      for (std::size_t a = 0; a < re.size(); ++a) s += L(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) * re.basis_mean(static_cast<Eigen::Index>(a));
      gp::MultiIndex e(3, 0);
      e[static_cast<std::size_t>(j)] = 1;
      const double mean = gp::to_double((gp::BarycentricPoly::monomial(e) * re.lower_basis[b]).mean());
      CHECK(s == doctest::Approx(mean).epsilon(1e-13));
    }
  }
}

TEST_CASE("unsupported degrees are rejected") {
  CHECK_THROWS(gp::reference_element(4, 1));
  CHECK_THROWS(gp::reference_element(2, 0));
}

#include "gp/quadrature.hpp"

TEST_CASE("simplex quadrature integrates monomials exactly") {
  for (int d = 1; d <= 3; ++d) {
    for (int deg : {0, 2, 5, 8}) {
      const auto& rule = gp::simplex_rule(d, deg);
      CHECK(rule.degree >= deg);
      double wsum = 0.0;
      for (double w : rule.weights) wsum += w;
      CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));
      for (int k = 0; k <= deg; ++k) {
        for (const auto& s : gp::multi_indices(d, k)) {
          double q = 0.0;
          for (std::size_t i = 0; i < rule.points.size(); ++i) {
            double v = 1.0;
            for (std::size_t j = 0; j < s.size(); ++j) v *= std::pow(rule.points[i][j], s[j]);
            q += rule.weights[i] * v;
          }
          CHECK(q == doctest::Approx(gp::to_double(gp::monomial_mean(s))).epsilon(1e-11));
        }
      }
    }
  }
}
