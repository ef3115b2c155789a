#include "gp/mesh_io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "gp/error.hpp"

namespace gp {

using nlohmann::json;

std::string mesh_to_json(const Mesh& mesh, int indent) {
  json j;
  j["version"] = 1;
  j["dim"] = mesh.dim();
  json verts = json::array();
  for (std::size_t i = 0; i < mesh.num_vertices(); ++i) {
    json p = json::array();
    for (const auto& c : mesh.vertex(static_cast<int>(i))) p.push_back(json::array({c.num(), c.exp()}));
    verts.push_back(p);
  }
  j["vertices"] = verts;
  json simp = json::array();
  for (int id : mesh.active()) {
    const auto& t = mesh.simplex(id);
    simp.push_back({{"v", t.v}, {"tag", t.tag}, {"level", t.level}});
  }
  j["simplices"] = simp;
  json gamma = json::array();
  for (const auto& f : mesh.gamma()) gamma.push_back(f);
  j["gamma_faces"] = gamma;
  return j.dump(indent);
}

Mesh mesh_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("mesh file is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("version").get<int>() != 1) throw InputError("unsupported mesh file version");
    const int d = j.at("dim").get<int>();
    Mesh m(d);
    int expected = 0;
    for (const auto& p : j.at("vertices")) {
      Point pt;
      for (const auto& c : p) pt.emplace_back(c.at(0).get<std::int64_t>(), c.at(1).get<int>());
      if (m.add_vertex(pt) != expected) throw InputError("duplicate vertex in mesh file");
      ++expected;
    }
    for (const auto& s : j.at("simplices")) {
      m.add_simplex(s.at("v").get<std::vector<int>>(), s.at("tag").get<int>(), s.at("level").get<int>());
    }
    if (j.contains("gamma_faces")) {
      for (const auto& f : j.at("gamma_faces")) m.add_gamma_face(f.get<std::vector<int>>());
    }
    return m;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed mesh file: ") + e.what());
  }
}

void write_mesh_file(const Mesh& mesh, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw InputError("cannot write " + path);
  os << mesh_to_json(mesh, 1) << '\n';
}

Mesh read_mesh_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return mesh_from_json(ss.str());
}

void write_element_report(const Mesh& mesh, const ElementDistance& dist, std::ostream& os) {
  os << "id\tlevel\tvolume\th\tmin_neighbor_level\n";
  const auto& ids = dist.elements();
  const auto& adj = dist.neighbors();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const auto& t = mesh.simplex(ids[i]);
    int mn = t.level;
    for (int j : adj[i]) mn = std::min(mn, mesh.simplex(ids[static_cast<std::size_t>(j)]).level);
    os << ids[i] << '\t' << t.level << '\t' << mesh.volume(ids[i]) << '\t' << mesh.h(ids[i]) << '\t' << mn << '\n';
  }
}

void write_distance_matrix(const ElementDistance& dist, std::ostream& os) {
  const auto& ids = dist.elements();
  os << "id";
  for (int id : ids) os << '\t' << id;
  os << '\n';
  for (std::size_t i = 0; i < ids.size(); ++i) {
    os << ids[i];
    for (int x : dist.row(i)) {
      os << '\t';
      if (x == ElementDistance::kInfinity) {
        os << "inf";
      } else {
        os << x;
      }
    }
    os << '\n';
  }
}

} // namespace gp
