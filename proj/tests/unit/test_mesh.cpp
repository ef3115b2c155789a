#include <doctest.h>

#include <random>

#include "brute_force.hpp"
#include "gp/error.hpp"
#include "gp/mesh.hpp"
#include "gp/random.hpp"

using namespace gp;

namespace {

Rational total_volume(const Mesh& m) {
  Rational s = 0;
  for (int id : m.active()) s += m.exact_volume(id);
  return s;
}

} // namespace

TEST_CASE("kuhn mesh counts") {
  auto m2 = kuhn_initial_mesh(2, 1);
  CHECK(m2.num_active() == 2);
  CHECK(m2.num_vertices() == 4);
  auto m3 = kuhn_initial_mesh(3, 1);
  CHECK(m3.num_active() == 6);
  CHECK(m3.num_vertices() == 8);
  auto m22 = kuhn_initial_mesh(2, 2);
  CHECK(m22.num_active() == 8);
  CHECK(m22.num_vertices() == 9);
  CHECK(m22.check_conformity().conforming);
  CHECK(m3.check_conformity().conforming);
  CHECK(total_volume(m22) == 4);
  CHECK_THROWS_AS(kuhn_initial_mesh(9, 1), InputError);
  CHECK_THROWS_AS(kuhn_initial_mesh(0, 1), InputError);
}

TEST_CASE("bisection of a triangle") {
  auto m = kuhn_initial_mesh(2, 1);
  const int id = m.active().front();
  const Rational v = m.exact_volume(id);
  const int z = m.bisect(id);
  const auto& ch = m.simplex(id).children;
  CHECK_FALSE(m.simplex(id).active);
  for (int c : ch) {
    CHECK(m.simplex(c).level == 1);
    CHECK(m.exact_volume(c) * 2 == v);
    const auto& vv = m.simplex(c).v;
    CHECK(std::find(vv.begin(), vv.end(), z) != vv.end());
  }
  CHECK_THROWS_AS(m.bisect(id), InputError);
}

TEST_CASE("maubach tag rule") {
  auto m = single_simplex_mesh(3);
  const int id = m.active().front();
  const auto parent = m.simplex(id);
  m.bisect(id);
  const auto& c1 = m.simplex(m.simplex(id).children[0]);
  const auto& c2 = m.simplex(m.simplex(id).children[1]);
  CHECK(c1.tag == 2);
  CHECK(c2.tag == 2);
  // child1 = (x0,x1,x2,z), child2 = (x1,x2,x3,z)
  CHECK(c1.v[0] == parent.v[0]);
  CHECK(c1.v[2] == parent.v[2]);
  CHECK(c2.v[0] == parent.v[1]);
  CHECK(c2.v[2] == parent.v[3]);
  CHECK(c1.v[3] == c2.v[3]);
}

TEST_CASE("uniform sweeps halve h after d rounds") {
  for (int d = 2; d <= 3; ++d) {
    auto m = kuhn_initial_mesh(d, 1);
    const auto n0 = m.num_active();
    for (int r = 0; r < d; ++r) m.uniform_refine();
    CHECK(m.num_active() == n0 << d);
    for (int id : m.active()) {
      CHECK(m.simplex(id).level == d);
      CHECK(m.h(id) == doctest::Approx(0.5));
    }
    CHECK(m.check_conformity().conforming);
  }
}

TEST_CASE("refine_closure with empty marking is a no-op") {
  auto m = kuhn_initial_mesh(2, 2);
  const auto before = m.active();
  CHECK(m.refine_closure({}) == 0);
  CHECK(m.active() == before);
}

TEST_CASE("random closure keeps conformity and volume") {
  for (int d = 2; d <= 3; ++d) {
    auto m = kuhn_initial_mesh(d, 1);
    const Rational vol = total_volume(m);
    Rng rng(17 + static_cast<unsigned>(d));
    for (int round = 0; round < 100; ++round) {
      auto act = m.active();
      std::vector<int> marked;
      const std::size_t k = 1 + uniform_index(rng, 2);
      for (std::size_t i = 0; i < k; ++i) marked.push_back(act[uniform_index(rng, act.size())]);
      std::sort(marked.begin(), marked.end());
      marked.erase(std::unique(marked.begin(), marked.end()), marked.end());
      const std::size_t refined = m.refine_closure(marked);
      CHECK(refined >= marked.size());
      const auto rep = m.check_conformity();
      REQUIRE_MESSAGE(rep.conforming, rep.first_problem);
      if (m.num_active() > (d == 2 ? 1500u : 1200u)) break;
    }
    CHECK(total_volume(m) == vol);
    CHECK(m.max_face_level_gap() <= 1);
  }
}

TEST_CASE("closure is the smallest conforming refinement (brute force)") {
  for (int target = 0; target < 8; ++target) {
    auto start = kuhn_initial_mesh(2, 2);
    const int t = start.active()[static_cast<std::size_t>(target)];
    auto closed = start;
    closed.refine_closure({t});
    const auto best = gp::testing::smallest_refinement(start, t, 16);
    REQUIRE_FALSE(best.empty());
    CHECK(best == gp::testing::active_keys(closed));
  }
}

TEST_CASE("similarity classes stabilize") {
  for (int d = 2; d <= 3; ++d) {
    auto m = kuhn_initial_mesh(d, 1);
    std::vector<std::size_t> counts;
    for (int r = 0; r < 3 * d; ++r) {
      m.uniform_refine();
      counts.push_back(m.similarity_class_count());
    }
    CHECK(counts[counts.size() - 1] == counts[counts.size() - 1 - static_cast<std::size_t>(d)]);
    CHECK(counts.back() <= 12);
  }
}

TEST_CASE("gamma faces follow bisection") {
  auto m = kuhn_initial_mesh(2, 1);
  m.mark_boundary_gamma();
  CHECK(m.gamma().size() == 4);
  m.uniform_refine();
  m.uniform_refine();
  CHECK(m.gamma().size() == 8);
  const auto bf = m.boundary_faces();
  CHECK(std::set<Face>(bf.begin(), bf.end()) == m.gamma());
}

TEST_CASE("limited grading refinement") {
  auto m = kuhn_initial_mesh(2, 1);
  for (int round = 0; round < 12; ++round) {
    const auto corner = m.find_vertex({Dyadic::integer(0), Dyadic::integer(0)});
    std::vector<int> marked;
    for (int id : m.active()) {
      const auto& v = m.simplex(id).v;
      if (std::find(v.begin(), v.end(), *corner) != v.end()) marked.push_back(id);
    }
    int max_marked = 0;
    for (int id : marked) max_marked = std::max(max_marked, m.simplex(id).level);
    const auto st = m.refine_lg(marked, 1);
    CHECK(m.max_touching_level_gap() <= 1);
    CHECK(st.rounds <= 1 + max_marked);
    CHECK(m.check_conformity().conforming);
  }
  CHECK(m.refine_lg({}, 1).rounds == 0);
}

TEST_CASE("refine_lg rejects an input that violates limited grading") {
  auto m = kuhn_initial_mesh(2, 2);
  for (int i = 0; i < 6; ++i) {
    const auto corner = m.find_vertex({Dyadic::integer(0), Dyadic::integer(0)});
    std::vector<int> marked;
    for (int id : m.active()) {
      const auto& v = m.simplex(id).v;
      if (std::find(v.begin(), v.end(), *corner) != v.end()) marked.push_back(id);
    }
    m.refine_closure(marked);
  }
  REQUIRE(m.max_touching_level_gap() > 1);
  CHECK_THROWS_AS(m.refine_lg({m.active().front()}, 1), InputError);
}
