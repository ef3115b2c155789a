#include "gp/distance.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include <Eigen/Dense>

#include "gp/error.hpp"
#include "gp/parallel.hpp"

namespace gp {

namespace {

std::vector<int> bfs(const std::vector<std::vector<int>>& adj, const std::vector<int>& sources) {
  std::vector<int> dist(adj.size(), ElementDistance::kInfinity);
  std::deque<int> q;
  for (int s : sources) {
    if (dist[static_cast<std::size_t>(s)] != 0) {
      dist[static_cast<std::size_t>(s)] = 0;
      q.push_back(s);
    }
  }
  while (!q.empty()) {
    const int u = q.front();
    q.pop_front();
    for (int w : adj[static_cast<std::size_t>(u)]) {
      if (dist[static_cast<std::size_t>(w)] == ElementDistance::kInfinity) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
        q.push_back(w);
      }
    }
  }
  return dist;
}

} // namespace

ElementDistance::ElementDistance(const Mesh& mesh, DistanceKind kind, std::size_t matrix_threshold)
    : kind_(kind), ids_(mesh.active()) {
  index_.assign(mesh.num_simplices_total(), -1);
  for (std::size_t i = 0; i < ids_.size(); ++i) index_[static_cast<std::size_t>(ids_[i])] = static_cast<int>(i);
  adj_.resize(ids_.size());

  if (kind == DistanceKind::Vertex) {
    std::vector<std::vector<int>> by_vertex(mesh.num_vertices());
    for (std::size_t i = 0; i < ids_.size(); ++i) {
      for (int v : mesh.simplex(ids_[i]).v) by_vertex[static_cast<std::size_t>(v)].push_back(static_cast<int>(i));
    }
    for (std::size_t i = 0; i < ids_.size(); ++i) {
      auto& nb = adj_[i];
      for (int v : mesh.simplex(ids_[i]).v) {
        for (int j : by_vertex[static_cast<std::size_t>(v)]) {
          if (j != static_cast<int>(i)) nb.push_back(j);
        }
      }
      std::sort(nb.begin(), nb.end());
      nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
  } else {
    std::map<Face, std::vector<int>> faces;
    for (std::size_t i = 0; i < ids_.size(); ++i) {
      const auto& v = mesh.simplex(ids_[i]).v;
      for (std::size_t s = 0; s < v.size(); ++s) {
        Face f;
        for (std::size_t r = 0; r < v.size(); ++r) {
          if (r != s) f.push_back(v[r]);
        }
        std::sort(f.begin(), f.end());
        faces[f].push_back(static_cast<int>(i));
      }
    }
    for (const auto& [f, els] : faces) {
      for (std::size_t a = 0; a < els.size(); ++a) {
        for (std::size_t b = a + 1; b < els.size(); ++b) {
          adj_[static_cast<std::size_t>(els[a])].push_back(els[b]);
          adj_[static_cast<std::size_t>(els[b])].push_back(els[a]);
        }
      }
    }
    for (auto& nb : adj_) {
      std::sort(nb.begin(), nb.end());
      nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
  }

  const std::size_t n = ids_.size();
  if (n <= matrix_threshold) {
    matrix_.resize(n * n);
    parallel_for(n, [&](std::size_t i) {
      const auto r = bfs(adj_, {static_cast<int>(i)});
      std::copy(r.begin(), r.end(), matrix_.begin() + static_cast<std::ptrdiff_t>(i * n));
    });
  }
}

int ElementDistance::index_of(int simplex_id) const {
  if (simplex_id < 0 || static_cast<std::size_t>(simplex_id) >= index_.size()) return -1;
  return index_[static_cast<std::size_t>(simplex_id)];
}

int ElementDistance::operator()(std::size_t i, std::size_t j) const {
  if (!matrix_.empty()) return matrix_[i * ids_.size() + j];
  return bfs(adj_, {static_cast<int>(i)})[j];
}

std::vector<int> ElementDistance::row(std::size_t i) const {
  if (!matrix_.empty()) {
    const auto first = matrix_.begin() + static_cast<std::ptrdiff_t>(i * ids_.size());
    return {first, first + static_cast<std::ptrdiff_t>(ids_.size())};
  }
  return bfs(adj_, {static_cast<int>(i)});
}

std::vector<int> ElementDistance::from_set(const std::vector<int>& sources) const { return bfs(adj_, sources); }

int ElementDistance::set_distance(const std::vector<int>& a, const std::vector<int>& b) const {
  if (a.empty() || b.empty()) throw InputError("set_distance: empty element set");
  const auto d = from_set(a);
  int best = kInfinity;
  for (int j : b) best = std::min(best, d[static_cast<std::size_t>(j)]);
  return best;
}

bool ElementDistance::connected() const {
  if (ids_.empty()) return true;
  const auto d = bfs(adj_, {0});
  return std::none_of(d.begin(), d.end(), [](int x) { return x == kInfinity; });
}

int ElementDistance::max_distance() const {
  int best = 0;
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    for (int x : row(i)) best = std::max(best, x);
  }
  return best;
}

double grading_of(const std::vector<double>& values, const ElementDistance& dist) {
  if (values.size() != dist.size()) throw InputError("grading_of: value count does not match element count");
  for (double v : values) {
    if (!(v > 0)) throw InputError("grading_of: values must be positive");
  }
  double g = 1.0;
  const auto& adj = dist.neighbors();
  for (std::size_t i = 0; i < adj.size(); ++i) {
    for (int j : adj[i]) g = std::max(g, values[static_cast<std::size_t>(j)] / values[i]);
  }
  return g;
}

int level_gap(const Mesh& mesh, const ElementDistance& dist) {
  int gap = 0;
  const auto& adj = dist.neighbors();
  const auto& ids = dist.elements();
  for (std::size_t i = 0; i < adj.size(); ++i) {
    for (int j : adj[i]) {
      gap = std::max(gap, std::abs(mesh.simplex(ids[i]).level - mesh.simplex(ids[static_cast<std::size_t>(j)]).level));
    }
  }
  return gap;
}

double euclidean_distance(const Mesh& mesh, int a, int b) {
  const int d = mesh.dim();
  const auto& va = mesh.simplex(a).v;
  const auto& vb = mesh.simplex(b).v;
  std::vector<Eigen::VectorXd> xa, xb;
  for (int v : va) {
    const auto p = mesh.vertex_double(v);
    xa.emplace_back(Eigen::Map<const Eigen::VectorXd>(p.data(), d));
  }
  for (int v : vb) {
    const auto p = mesh.vertex_double(v);
    xb.emplace_back(Eigen::Map<const Eigen::VectorXd>(p.data(), d));
  }
  const unsigned na = 1u << va.size();
  const unsigned nb = 1u << vb.size();
  double best = std::numeric_limits<double>::infinity();
  // Closest points lie in the relative interiors of some face pair.
  for (unsigned fa = 1; fa < na; ++fa) {
    std::vector<int> ia;
    for (std::size_t i = 0; i < va.size(); ++i) {
      if (fa & (1u << i)) ia.push_back(static_cast<int>(i));
    }
    for (unsigned fb = 1; fb < nb; ++fb) {
      std::vector<int> ib;
      for (std::size_t i = 0; i < vb.size(); ++i) {
        if (fb & (1u << i)) ib.push_back(static_cast<int>(i));
      }
      const int ka = static_cast<int>(ia.size()) - 1;
      const int kb = static_cast<int>(ib.size()) - 1;
      const Eigen::VectorXd& pa0 = xa[static_cast<std::size_t>(ia[0])];
      const Eigen::VectorXd& pb0 = xb[static_cast<std::size_t>(ib[0])];
      Eigen::VectorXd s = Eigen::VectorXd::Zero(ka + kb);
      if (ka + kb > 0) {
        Eigen::MatrixXd A(d, ka + kb);
        for (int i = 0; i < ka; ++i) A.col(i) = xa[static_cast<std::size_t>(ia[static_cast<std::size_t>(i) + 1])] - pa0;
        for (int i = 0; i < kb; ++i) A.col(ka + i) = -(xb[static_cast<std::size_t>(ib[static_cast<std::size_t>(i) + 1])] - pb0);
        s = A.completeOrthogonalDecomposition().solve(pb0 - pa0);
      }
      const double tol = 1e-12;
      bool ok = true;
      double suma = 0.0, sumb = 0.0;
      for (int i = 0; i < ka; ++i) {
        ok = ok && s(i) >= -tol;
        suma += s(i);
      }
      for (int i = 0; i < kb; ++i) {
        ok = ok && s(ka + i) >= -tol;
        sumb += s(ka + i);
      }
      ok = ok && suma <= 1 + tol && sumb <= 1 + tol;
      if (!ok) continue;
      Eigen::VectorXd p = pa0, q = pb0;
      for (int i = 0; i < ka; ++i) p += s(i) * (xa[static_cast<std::size_t>(ia[static_cast<std::size_t>(i) + 1])] - pa0);
      for (int i = 0; i < kb; ++i) q += s(ka + i) * (xb[static_cast<std::size_t>(ib[static_cast<std::size_t>(i) + 1])] - pb0);
      best = std::min(best, (p - q).norm());
    }
  }
  return best;
}

} // namespace gp
