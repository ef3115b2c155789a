#include <doctest.h>

#include <cmath>

#include "gp/error.hpp"
#include "gp/polynomial.hpp"
#include "gp/random.hpp"

using namespace gp;

TEST_CASE("monomial integration") {
  CHECK(integrate_monomial({0, 0, 0}, 5) == 5);
  CHECK(monomial_mean({1, 1, 0}) == Rational(1, 12));
  CHECK(monomial_mean({2, 0, 0, 0}) == Rational(1, 10));
}

TEST_CASE("monomial mean against an independent quadrature oracle") {
  // Sample the reference tetrahedron on a fine midpoint grid of subcubes,
  // keeping cells whose centre is inside.
  const int n = 120;
  double sum = 0.0;
  double vol = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const double x = (i + 0.5) / n, y = (j + 0.5) / n, z = (k + 0.5) / n;
        if (x + y + z >= 1.0) continue;
        const double l0 = 1.0 - x - y - z;
        sum += l0 * l0;
        vol += 1.0;
      }
    }
  }
  CHECK(sum / vol == doctest::Approx(to_double(monomial_mean({2, 0, 0, 0}))).epsilon(1e-3));
}

TEST_CASE("decomposition operator examples") {
  const auto v = BarycentricPoly::monomial({1, 1, 0});
  CHECK(decomposition_apply(0, v, 2) == BarycentricPoly::monomial({0, 1, 0}, Rational(1, 2)));
  CHECK(decomposition_apply(2, v, 2).is_zero());
  const auto g = BarycentricPoly::monomial({1, 0, 0});
  const auto r = decomposition_apply(0, g, 2);
  CHECK(r.coefficient({0, 0, 0}) == Rational(1, 2));
  CHECK(r.coefficient({1, 0, 0}) == Rational(1, 2));
  // Same result through the homogeneous rule.
  const auto h = decomposition_apply(0, g.homogenize(2), 2);
  CHECK((h - r).homogenize(1).is_zero());
  CHECK_THROWS_AS((void)decomposition_apply(0, BarycentricPoly::monomial({3, 0, 0}), 2), InputError);
}

TEST_CASE("local decomposition reproduces the polynomial") {
  Rng rng(5);
  for (int d = 1; d <= 3; ++d) {
    for (int K = 1; K <= 4; ++K) {
      BarycentricPoly v(d);
      for (const auto& a : multi_indices(d, K)) v.add_term(a, Rational(static_cast<long long>(uniform_index(rng, 11)) - 5, 3));
      BarycentricPoly sum(d);
      for (int j = 0; j <= d; ++j) {
        MultiIndex e(static_cast<std::size_t>(d) + 1, 0);
        e[static_cast<std::size_t>(j)] = 1;
        sum += BarycentricPoly::monomial(e) * decomposition_apply(j, v, K);
      }
      CHECK((sum.homogenize(K) - v).is_zero());
    }
  }
}

TEST_CASE("trace locality of the decomposition") {
  // v vanishes on the face lambda_2 = 0 (d = 2): v = lambda_2 * q.
  const int d = 2, K = 3;
  BarycentricPoly v = BarycentricPoly::monomial({0, 0, 1}) *
                      (BarycentricPoly::monomial({2, 0, 0}, 3) + BarycentricPoly::monomial({1, 1, 0}, -2) + BarycentricPoly::monomial({0, 0, 2}, 7));
  for (int j = 0; j <= 1; ++j) {
    const auto dj = decomposition_apply(j, v, K);
    for (int a = 0; a <= 6; ++a) {
      const std::vector<Rational> lam{Rational(a, 6), Rational(6 - a, 6), Rational(0)};
      CHECK(dj.evaluate(lam) == 0);
    }
  }
  (void)d;
}

TEST_CASE("spectral operator: consistency with the decomposition form") {
  for (int d = 1; d <= 3; ++d) {
    for (int K = 1; K <= 4; ++K) {
      const auto rep = verify_S_consistency(K, d, d == 3 && K == 4 ? 10 : 25, 100 + static_cast<std::uint64_t>(10 * d + K));
      INFO(rep.first_mismatch);
      CHECK(rep.mismatches == 0);
      CHECK(rep.asymmetric == 0);
    }
  }
}

TEST_CASE("spectral operator: eigenvalues") {
  for (int d = 1; d <= 3; ++d) {
    for (int K = 1; K <= 4; ++K) {
      const auto ev = computed_S_spectrum(K, d);
      std::vector<double> expected;
      for (const auto& [mu, mult] : expected_S_spectrum(K, d)) {
        for (long long i = 0; i < mult; ++i) expected.push_back(to_double(mu));
      }
      std::sort(expected.begin(), expected.end());
      REQUIRE(ev.size() == expected.size());
      for (std::size_t i = 0; i < ev.size(); ++i) CHECK(std::abs(ev[i] - expected[i]) <= 1e-9);
      CHECK(std::abs(ev.back() - (2.0 * K + d) / K) <= 1e-9);
    }
  }
  const auto e11 = computed_S_spectrum(1, 1);
  CHECK(e11[0] == doctest::Approx(1.0));
  CHECK(e11[1] == doctest::Approx(3.0));
  const auto e22 = computed_S_spectrum(2, 2);
  CHECK(e22.size() == 6);
  CHECK(e22[0] == doctest::Approx(1.0));
  CHECK(e22[1] == doctest::Approx(1.75));
  CHECK(e22[2] == doctest::Approx(1.75));
  CHECK(e22[5] == doctest::Approx(3.0));
}

TEST_CASE("dim Z_k") {
  CHECK(dim_Z(0, 2) == 1);
  CHECK(dim_Z(1, 2) == 2);
  CHECK(dim_Z(2, 2) == 3);
  long long total = 0;
  for (int k = 0; k <= 3; ++k) total += dim_Z(k, 3);
  CHECK(total == binomial(6, 3));
}
