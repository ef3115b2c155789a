#include <doctest.h>

#include <cmath>

#include "gp/distance.hpp"
#include "gp/random.hpp"

namespace {

// Floyd-Warshall on the adjacency lists as an independent oracle.
std::vector<std::vector<int>> all_pairs(const gp::ElementDistance& dist) {
  const std::size_t n = dist.size();
  const int inf = 1 << 28;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (std::size_t i = 0; i < n; ++i) {
    d[i][i] = 0;
    for (int j : dist.neighbors()[i]) d[i][static_cast<std::size_t>(j)] = 1;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    }
  }
  return d;
}

gp::Mesh refined_square(int bisections, unsigned seed) {
  gp::Mesh m = gp::kuhn_initial_mesh(2, 2);
  gp::Rng rng(seed);
  for (int r = 0; r < bisections; ++r) {
    const auto act = m.active();
    m.refine_closure({act[gp::uniform_index(rng, act.size())]});
  }
  return m;
}

} // namespace

TEST_CASE("vertex and face adjacency on the Kuhn square") {
  const gp::Mesh m = gp::kuhn_initial_mesh(2, 1);
  const gp::ElementDistance dv(m, gp::DistanceKind::Vertex);
  const gp::ElementDistance df(m, gp::DistanceKind::Face);
  CHECK(dv.size() == 2);
  CHECK(dv(0, 1) == 1);
  CHECK(df(0, 1) == 1);
  const gp::Mesh m2 = gp::kuhn_initial_mesh(2, 2);
  const gp::ElementDistance dv2(m2, gp::DistanceKind::Vertex);
  const gp::ElementDistance df2(m2, gp::DistanceKind::Face);
  CHECK(dv2.max_distance() <= df2.max_distance());
  CHECK(dv2.connected());
}

TEST_CASE("BFS distances match Floyd-Warshall") {
  const gp::Mesh m = refined_square(30, 4);
  for (auto kind : {gp::DistanceKind::Vertex, gp::DistanceKind::Face}) {
    const gp::ElementDistance dist(m, kind);
    const gp::ElementDistance lazy(m, kind, 0);
    CHECK(dist.has_matrix());
    CHECK(!lazy.has_matrix());
    const auto fw = all_pairs(dist);
    for (std::size_t i = 0; i < dist.size(); ++i) {
      const auto row = lazy.row(i);
      for (std::size_t j = 0; j < dist.size(); ++j) {
        CHECK(dist(i, j) == fw[i][j]);
        CHECK(row[j] == fw[i][j]);
      }
    }
    const std::vector<int> a{0, 3};
    const std::vector<int> b{5, 7, 9};
    int best = 1 << 28;
    for (int x : a) {
      for (int y : b) best = std::min(best, fw[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]);
    }
    CHECK(dist.set_distance(a, b) == best);
  }
}

TEST_CASE("grading of h equals 2^(gap/d)") {
  const gp::Mesh m = refined_square(40, 9);
  const gp::ElementDistance dist(m, gp::DistanceKind::Vertex);
  std::vector<double> h;
  for (int id : dist.elements()) h.push_back(m.h(id));
  const int gap = gp::level_gap(m, dist);
  CHECK(gp::grading_of(h, dist) == doctest::Approx(std::pow(2.0, gap / 2.0)).epsilon(1e-14));
  CHECK(gp::grading_of(std::vector<double>(dist.size(), 3.0), dist) == 1.0);
}

TEST_CASE("euclidean distance between simplices") {
  const gp::Mesh m = gp::kuhn_initial_mesh(2, 3);
  const auto act = m.active();
  CHECK(gp::euclidean_distance(m, act[0], act[0]) == doctest::Approx(0.0));
  // farthest pair on the 3x3 grid is at positive distance
  double mx = 0.0;
  for (int a : act) mx = std::max(mx, gp::euclidean_distance(m, act[0], a));
  CHECK(mx > 1.0);
  CHECK(mx < 3.0 * std::sqrt(2.0));
}

TEST_CASE("index lookup") {
  const gp::Mesh m = refined_square(5, 1);
  const gp::ElementDistance dist(m, gp::DistanceKind::Vertex);
  for (std::size_t i = 0; i < dist.size(); ++i) CHECK(dist.index_of(dist.elements()[i]) == static_cast<int>(i));
  CHECK(dist.index_of(0) == -1); // refined away
}
