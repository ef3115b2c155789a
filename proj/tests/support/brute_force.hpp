#pragma once

// Exhaustive search for the smallest conforming bisection refinement in
// which a given simplex is bisected. Only for tiny 2D meshes.

#include <algorithm>
#include <deque>
#include <set>
#include <vector>

#include "gp/mesh.hpp"

namespace gp::testing {

using SimplexKey = std::vector<Point>; // vertex coordinates in bisection order

inline std::set<SimplexKey> active_keys(const Mesh& m) {
  std::set<SimplexKey> s;
  for (int id : m.active()) {
    SimplexKey k;
    for (int v : m.simplex(id).v) k.push_back(m.vertex(v));
    s.insert(k);
  }
  return s;
}

inline bool contains_simplex(const Mesh& m, const SimplexKey& key) {
  for (int id : m.active()) {
    SimplexKey k;
    for (int v : m.simplex(id).v) k.push_back(m.vertex(v));
    if (k == key) return true;
  }
  return false;
}

/// Returns the active-set of the smallest conforming refinement of `start`
/// in which `target` is no longer active, searching meshes with at most
/// `max_elements` simplices. Empty set if none found.
inline std::set<SimplexKey> smallest_refinement(const Mesh& start, int target, std::size_t max_elements) {
  SimplexKey tkey;
  for (int v : start.simplex(target).v) tkey.push_back(start.vertex(v));
  std::deque<Mesh> queue{start};
  std::set<std::set<SimplexKey>> seen{active_keys(start)};
  while (!queue.empty()) {
    Mesh m = std::move(queue.front());
    queue.pop_front();
    if (!contains_simplex(m, tkey) && m.check_conformity().conforming) return active_keys(m);
    if (m.num_active() >= max_elements) continue;
    for (int id : m.active()) {
      Mesh next = m;
      next.bisect(id);
      auto key = active_keys(next);
      if (seen.insert(key).second) queue.push_back(std::move(next));
    }
  }
  return {};
}

} // namespace gp::testing
