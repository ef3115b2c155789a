#include <doctest.h>

#include <cstdio>
#include <sstream>

#include "gp/error.hpp"
#include "gp/mesh_io.hpp"

TEST_CASE("JSON round trip preserves the active mesh") {
  gp::Mesh m = gp::kuhn_initial_mesh(3, 1);
  m.refine_closure({m.active().front()});
  m.refine_closure({m.active().back()});
  m.mark_boundary_gamma(0, 0);
  const std::string text = gp::mesh_to_json(m);
  const gp::Mesh r = gp::mesh_from_json(text);
  CHECK(r.dim() == 3);
  CHECK(r.num_active() == m.num_active());
  CHECK(r.gamma().size() == m.gamma().size());
  CHECK(gp::mesh_to_json(r) == text);
  double v = 0.0;
  for (int id : r.active()) v += r.volume(id);
  CHECK(v == doctest::Approx(1.0));
  CHECK(r.check_conformity().conforming);
}

TEST_CASE("refinement continues after reading") {
  gp::Mesh m = gp::kuhn_initial_mesh(2, 2);
  m.uniform_refine();
  gp::Mesh r = gp::mesh_from_json(gp::mesh_to_json(m));
  m.uniform_refine();
  r.uniform_refine();
  CHECK(gp::mesh_to_json(m) == gp::mesh_to_json(r));
}

TEST_CASE("file round trip and errors") {
  const gp::Mesh m = gp::kuhn_initial_mesh(2, 1);
  const std::string path = "gp_test_mesh_io.json";
  gp::write_mesh_file(m, path);
  CHECK(gp::read_mesh_file(path).num_active() == 2);
  std::remove(path.c_str());
  CHECK_THROWS_AS((void)gp::read_mesh_file("/nonexistent/mesh.json"), gp::InputError);
  CHECK_THROWS_AS((void)gp::mesh_from_json("{\"version\":99}"), gp::InputError);
  CHECK_THROWS_AS((void)gp::mesh_from_json("not json"), gp::InputError);
}

TEST_CASE("reports") {
  gp::Mesh m = gp::kuhn_initial_mesh(2, 1);
  m.refine_closure({m.active().front()});
  const gp::ElementDistance dist(m, gp::DistanceKind::Vertex);
  std::ostringstream a;
  gp::write_element_report(m, dist, a);
  CHECK(a.str().find("id\tlevel\tvolume\th\tmin_neighbor_level") == 0);
  std::ostringstream b;
  gp::write_distance_matrix(dist, b);
  std::size_t lines = 0;
  for (char c : b.str()) lines += c == '\n' ? 1 : 0;
  CHECK(lines == dist.size() + 1);
}
