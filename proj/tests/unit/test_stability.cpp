#include <doctest.h>

#include <cmath>
#include <string>

#include "gp/error.hpp"
#include "gp/projection.hpp"
#include "gp/refinement.hpp"
#include "gp/stability.hpp"

namespace {

std::string lp(int d, gp::Family f, double gh) { return gp::stability_range(d, f, gh, 1.0, gp::NormKind::Lp).interval.to_string(); }
std::string w1p(int d, gp::Family f, double gh) { return gp::stability_range(d, f, gh, 1.0, gp::NormKind::W1p).interval.to_string(); }

gp::Mesh corner_mesh(int d, int rounds) {
  gp::Mesh m = gp::kuhn_initial_mesh(d, 1);
  gp::MarkingPolicy pol;
  pol.kind = gp::MarkingKind::Corner;
  gp::Rng rng(1);
  for (int r = 0; r < rounds; ++r) m.refine_closure(gp::select_marked(m, pol, rng));
  return m;
}

} // namespace

TEST_CASE("stability ranges in two dimensions") {
  const auto K = gp::Family::lagrange;
  const auto inf = gp::Family::lagrange_limit();
  CHECK(w1p(2, K(1), std::sqrt(2.0)) == "[1,∞]");
  CHECK(w1p(2, K(1), 2.0) == "[1.2619,4.8188]");
  CHECK(w1p(2, K(2), 2.0) == "[1.0527,19.9937]");
  CHECK(w1p(2, K(3), 2.0) == "[1,∞]");
  const double g32 = std::pow(2.0, 1.5);
  CHECK(lp(2, K(1), g32) == "[1,∞]");
  CHECK(w1p(2, K(1), g32) == "[1.8928,2.1200]");
  CHECK(w1p(2, K(2), g32) == "[1.5790,2.7271]");
  CHECK(w1p(2, K(3), g32) == "[1.4589,3.1794]");
  CHECK(w1p(2, inf, g32) == "[1.1797,6.5660]");
  CHECK(lp(2, K(1), 4.0) == "[1.1158,9.6376]");
  CHECK(w1p(2, K(1), 4.0) == "∅");
  CHECK(lp(2, K(2), 4.0) == "[1.0257,39.9874]");
  CHECK(w1p(2, K(2), 4.0) == "∅");
  CHECK(lp(2, K(3), 4.0) == "[1,∞]");
  CHECK(w1p(2, K(3), 4.0) == "[1.9452,2.0580]");
  CHECK(w1p(2, inf, 4.0) == "[1.5729,2.7455]");
}

TEST_CASE("stability ranges in three dimensions") {
  const auto K = gp::Family::lagrange;
  CHECK(lp(3, K(1), std::cbrt(2.0)) == "[1,∞]");
  CHECK(w1p(3, K(1), std::cbrt(2.0)) == "[1,∞]");
  CHECK(lp(3, K(1), 2.0) == "[1.0387,26.9019]");
  CHECK(w1p(3, K(1), 2.0) == "[1.5886,2.6990]");
  CHECK(lp(3, K(2), 2.0) == "[1,∞]");
  CHECK(w1p(3, K(2), 2.0) == "[1.3508,3.8511]");
  CHECK(w1p(3, K(3), 2.0) == "[1.2501,4.9997]");
  CHECK(w1p(3, gp::Family::lagrange_limit(), 2.0) == "[1,∞]");
}

TEST_CASE("verdicts agree with the interval and are symmetric in 1/p") {
  const auto v = gp::stability_range(2, gp::Family::lagrange(1), 2.0, 1.0, gp::NormKind::W1p);
  CHECK(v.admissible(2.0));
  CHECK(!v.admissible(1.0));
  CHECK(!v.admissible(gp::kInfinityP));
  CHECK(v.interval.contains(1.3));
  CHECK(!v.interval.contains(5.0));
  const double a = 1.0 / v.interval.lo - 0.5;
  const double b = 0.5 - 1.0 / v.interval.hi;
  CHECK(a == doctest::Approx(b).epsilon(1e-3));
  // the weight grading uses up room: gamma_rho = gamma_max leaves nothing
  CHECK(gp::stability_range(2, gp::Family::lagrange(1), 1.0, 3.0, gp::NormKind::Lp).interval.empty);
  CHECK(gp::stability_range(2, gp::Family::lagrange(1), 1.0, 2.9, gp::NormKind::Lp).interval.full());
}

TEST_CASE("intervals widen with K and shrink with the grading") {
  for (int d = 2; d <= 3; ++d) {
    for (double gh : {2.0, std::pow(2.0, 1.5)}) {
      double prev = -1e300;
      for (int K = 1; K <= 6; ++K) {
        const double t = gp::stability_range(d, gp::Family::lagrange(K), gh, 1.0, gp::NormKind::W1p).threshold;
        CHECK(t > prev);
        prev = t;
      }
    }
    const double t1 = gp::stability_range(d, gp::Family::lagrange(2), 2.0, 1.0, gp::NormKind::Lp).threshold;
    const double t2 = gp::stability_range(d, gp::Family::lagrange(2), 4.0, 1.0, gp::NormKind::Lp).threshold;
    CHECK(t2 < t1);
  }
}

TEST_CASE("CR dimension thresholds") {
  const auto t = gp::cr_dimension_thresholds(100);
  CHECK(t.lp_all_p_max_d == 35);
  CHECK(t.w1p_all_p_max_d == 32);
  CHECK(t.w12_all_d);
  CHECK(std::isinf(gp::gamma_max_bound(2, gp::Family::crouzeix_raviart())));
  CHECK(gp::gamma_max_bound(3, gp::Family::crouzeix_raviart()) == doctest::Approx(1.0 / gp::q_from_kappa(9.0 / 5.0)));
}

TEST_CASE("q_new table and presets") {
  const std::string t = gp::table_qnew_tsv();
  CHECK(t.find("4\t0.2000\t0.2251\t0.2476") != std::string::npos);
  CHECK(t.find("inf\t0.1716\t0.1716\t0.1716") != std::string::npos);
  CHECK(gp::preset_grading("2D-RG") == 4.0);
  CHECK(gp::preset_grading("BiSecLG", 3, 3) == doctest::Approx(2.0));
  CHECK_THROWS_AS((void)gp::preset_grading("nope"), gp::InputError);
  CHECK(gp::min_degree_w12(2, 4.0) == 3);
  CHECK(gp::min_degree_w12(2, 2.0) == 1);
  CHECK(!gp::min_degree_w12(2, 6.0).has_value());
}

TEST_CASE("maximal operator") {
  const gp::Mesh m = corner_mesh(2, 6);
  const gp::ElementDistance dist(m, gp::DistanceKind::Vertex);
  const std::size_t n = dist.size();
  std::vector<double> v0(n, 0.0);
  v0[3] = 1.0;
  const auto mv = gp::max_operator(v0, 2.0, dist);
  for (std::size_t t = 0; t < n; ++t) CHECK(mv[t] == std::pow(2.0, -dist(t, 3)));
  gp::Rng rng(2);
  for (auto& v : v0) v = std::ldexp(static_cast<double>(gp::uniform_index(rng, 64)), -static_cast<int>(gp::uniform_index(rng, 6)));
  for (double g : {2.0, 4.0}) {
    const auto a = gp::max_operator(v0, g, dist, gp::MaxOperatorMethod::BruteForce);
    const auto b = gp::max_operator(v0, g, dist, gp::MaxOperatorMethod::Propagation);
    CHECK(a == b);
    CHECK(gp::grading_of(a, dist) <= g);
    for (std::size_t t = 0; t < n; ++t) CHECK(a[t] >= v0[t]);
  }
  // (M_g v)^2 = M_{g^2}(v^2)
  std::vector<double> sq(n);
  for (std::size_t t = 0; t < n; ++t) sq[t] = v0[t] * v0[t];
  const auto a = gp::max_operator(v0, 2.0, dist);
  const auto b = gp::max_operator(sq, 4.0, dist);
  for (std::size_t t = 0; t < n; ++t) CHECK(a[t] * a[t] == b[t]);
  CHECK_THROWS_AS((void)gp::max_operator(v0, 1.0, dist), gp::InputError);
}

TEST_CASE("layers follow the distance") {
  const gp::Mesh m = corner_mesh(2, 5);
  const gp::ElementDistance dist(m, gp::DistanceKind::Vertex);
  const auto row = dist.row(0);
  std::vector<double> rho(row.size());
  for (std::size_t t = 0; t < rho.size(); ++t) rho[t] = std::pow(2.0, row[t]);
  const auto w = gp::Weight::from_values(rho, dist);
  CHECK(w.grading == 2.0);
  const auto layers = gp::layer_decomposition(w);
  for (const auto& [i, elems] : layers.layers) {
    for (int t : elems) CHECK(row[static_cast<std::size_t>(t)] == i);
  }
  for (const auto& [i, a] : layers.layers) {
    for (const auto& [j, b] : layers.layers) CHECK(std::abs(i - j) <= dist.set_distance(a, b));
  }
  CHECK(gp::layer_decomposition(std::vector<double>(4, 1.0), 1.0).single);
}

TEST_CASE("volume sums") {
  const gp::Mesh s = gp::single_simplex_mesh(2);
  const gp::ElementDistance ds(s, gp::DistanceKind::Vertex);
  CHECK(gp::volume_sum_max(s, ds, 8.0) == doctest::Approx(1.0));
  const gp::Mesh m = corner_mesh(2, 6);
  const gp::ElementDistance dist(m, gp::DistanceKind::Vertex);
  const auto vd = gp::volume_decay_constant(m, dist, 8.0, 2.0);
  CHECK(vd.max_sum >= 1.0);
  CHECK(vd.factor == doctest::Approx(1.0));
  CHECK_THROWS_AS((void)gp::volume_decay_constant(m, dist, 3.0, 2.0), gp::InputError);
}

TEST_CASE("weighted L2 ratio") {
  const gp::Mesh m = corner_mesh(2, 5);
  const gp::ElementDistance dist(m, gp::DistanceKind::Vertex);
  const auto V = gp::FeSpace::lagrange(m, 1);
  const auto one = gp::Weight::from_values(std::vector<double>(dist.size(), 1.0), dist);
  const auto r1 = gp::weighted_l2_ratio(V, one);
  CHECK(r1.measured <= 1.0 + 1e-10);
  CHECK(r1.measured >= 1.0 - 1e-10);
  const auto row = dist.row(0);
  std::vector<double> rho(row.size());
  for (std::size_t t = 0; t < rho.size(); ++t) rho[t] = std::pow(2.0, -row[t]);
  const auto w = gp::Weight::from_values(rho, dist);
  const auto r = gp::weighted_l2_ratio(V, w);
  REQUIRE(r.bound.has_value());
  CHECK(*r.bound == doctest::Approx(144.0));
  CHECK(r.measured <= *r.bound);
  CHECK(r.measured >= 1.0);
}

TEST_CASE("weighted gradient ratio is finite and at least one") {
  const gp::Mesh coarse = corner_mesh(2, 4);
  gp::Mesh fine = coarse;
  fine.uniform_refine();
  const gp::ElementDistance dist(coarse, gp::DistanceKind::Vertex);
  const auto V = gp::FeSpace::lagrange(coarse, 1);
  const auto Vf = gp::FeSpace::lagrange(fine, 1);
  const auto one = gp::Weight::from_values(std::vector<double>(dist.size(), 1.0), dist);
  const auto r = gp::weighted_gradient_ratio(V, one, Vf);
  CHECK(r.measured >= 1.0 - 1e-10);
  CHECK(r.measured < 10.0);
  const auto lp = gp::weighted_lp_ratio(V, one, 4.0, 4);
  CHECK(lp.measured > 0.0);
  CHECK(!lp.exact);
  const auto w1p = gp::weighted_w1p_ratio(V, one, Vf, 3.0, 4);
  CHECK(w1p.measured > 0.0);
}
