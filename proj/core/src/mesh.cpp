#include "gp/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>

#include "gp/error.hpp"

namespace gp {

namespace {

Rational to_rational(const Dyadic& x) {
  Rational r(x.num());
  r /= Rational(boost::multiprecision::cpp_int(1) << x.exp());
  return r;
}

Face sorted_without(const std::vector<int>& v, std::size_t skip) {
  Face f;
  f.reserve(v.size() - 1);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i != skip) f.push_back(v[i]);
  }
  std::sort(f.begin(), f.end());
  return f;
}

Face replace_sorted(const Face& f, int out, int in) {
  Face g;
  g.reserve(f.size());
  for (int x : f) {
    if (x != out) g.push_back(x);
  }
  g.push_back(in);
  std::sort(g.begin(), g.end());
  return g;
}

} // namespace

std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

Mesh::Mesh(int dim) : dim_(dim) {
  if (dim < 1 || dim > 8) {
    throw InputError("unsupported dimension " + std::to_string(dim) + " (expected 1..8)");
  }
}

std::vector<int> Mesh::active() const {
  std::vector<int> ids;
  ids.reserve(num_active_);
  for (std::size_t i = 0; i < simplices_.size(); ++i) {
    if (simplices_[i].active) ids.push_back(static_cast<int>(i));
  }
  return ids;
}

std::vector<double> Mesh::vertex_double(int id) const {
  const Point& p = vertex(id);
  std::vector<double> x(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) x[i] = p[i].to_double();
  return x;
}

std::optional<int> Mesh::find_vertex(const Point& p) const {
  auto it = vertex_index_.find(p);
  if (it == vertex_index_.end()) return std::nullopt;
  return it->second;
}

int Mesh::add_vertex(const Point& p) {
  if (static_cast<int>(p.size()) != dim_) {
    throw InputError("vertex has wrong number of coordinates");
  }
  auto [it, inserted] = vertex_index_.emplace(p, static_cast<int>(coords_.size()));
  if (inserted) coords_.push_back(p);
  return it->second;
}

Rational Mesh::exact_volume(int id) const {
  const auto& v = simplex(id).v;
  const int d = dim_;
  // Bareiss on rationals is fine at this size.
  std::vector<std::vector<Rational>> a(static_cast<std::size_t>(d), std::vector<Rational>(static_cast<std::size_t>(d)));
  const Point& x0 = vertex(v[0]);
  for (int i = 0; i < d; ++i) {
    const Point& xi = vertex(v[static_cast<std::size_t>(i) + 1]);
    for (int j = 0; j < d; ++j) {
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = to_rational(xi[static_cast<std::size_t>(j)]) - to_rational(x0[static_cast<std::size_t>(j)]);
    }
  }
  Rational det = 1;
  for (int c = 0; c < d; ++c) {
    int piv = -1;
    for (int r = c; r < d; ++r) {
      if (a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) return 0;
    if (piv != c) {
      std::swap(a[static_cast<std::size_t>(piv)], a[static_cast<std::size_t>(c)]);
      det = -det;
    }
    const Rational p = a[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
    det *= p;
    for (int r = c + 1; r < d; ++r) {
      const Rational f = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] / p;
      if (f == 0) continue;
      for (int k = c; k < d; ++k) {
        a[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] -= f * a[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)];
      }
    }
  }
  Rational fact = 1;
  for (int i = 2; i <= d; ++i) fact *= i;
  return abs(det) / fact;
}

int Mesh::add_simplex(std::vector<int> verts, int tag, int level) {
  if (static_cast<int>(verts.size()) != dim_ + 1) {
    throw InputError("simplex must have d+1 vertices");
  }
  for (int v : verts) {
    if (v < 0 || static_cast<std::size_t>(v) >= coords_.size()) throw InputError("simplex references unknown vertex");
  }
  {
    auto s = verts;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw InputError("simplex has repeated vertices");
  }
  if (tag < 1 || tag > dim_) throw InputError("tag out of range");
  if (level < 0) throw InputError("negative level");
  TaggedSimplex t;
  t.v = std::move(verts);
  t.tag = tag;
  t.level = level;
  simplices_.push_back(std::move(t));
  const int id = static_cast<int>(simplices_.size()) - 1;
  const Rational vol = exact_volume(id);
  if (vol == 0) {
    simplices_.pop_back();
    throw InputError("degenerate simplex");
  }
  volume_.push_back(static_cast<double>(vol));
  ++num_active_;
  ++generation_;
  register_edges(id);
  return id;
}

void Mesh::register_edges(int id) {
  const auto& v = simplices_[static_cast<std::size_t>(id)].v;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) edge_elems_[edge_key(v[i], v[j])].push_back(id);
  }
}

double Mesh::diameter(int id) const {
  const auto& v = simplex(id).v;
  double best = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto a = vertex_double(v[i]);
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      const auto b = vertex_double(v[j]);
      double s = 0.0;
      for (int k = 0; k < dim_; ++k) s += (a[static_cast<std::size_t>(k)] - b[static_cast<std::size_t>(k)]) * (a[static_cast<std::size_t>(k)] - b[static_cast<std::size_t>(k)]);
      best = std::max(best, std::sqrt(s));
    }
  }
  return best;
}

double Mesh::h(int id) const { return std::exp2(-static_cast<double>(simplex(id).level) / dim_); }

std::vector<std::vector<double>> Mesh::barycentric_gradients(int id) const {
  const auto& v = simplex(id).v;
  const int d = dim_;
  Eigen::MatrixXd J(d, d);
  const auto x0 = vertex_double(v[0]);
  for (int i = 0; i < d; ++i) {
    const auto xi = vertex_double(v[static_cast<std::size_t>(i) + 1]);
    for (int j = 0; j < d; ++j) J(j, i) = xi[static_cast<std::size_t>(j)] - x0[static_cast<std::size_t>(j)];
  }
  const Eigen::MatrixXd Jinv = J.inverse();
  std::vector<std::vector<double>> g(static_cast<std::size_t>(d) + 1, std::vector<double>(static_cast<std::size_t>(d), 0.0));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      g[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(j)] = Jinv(i, j);
      g[0][static_cast<std::size_t>(j)] -= Jinv(i, j);
    }
  }
  return g;
}

std::vector<double> Mesh::centroid(int id) const {
  std::vector<double> c(static_cast<std::size_t>(dim_), 0.0);
  for (int v : simplex(id).v) {
    const auto x = vertex_double(v);
    for (int k = 0; k < dim_; ++k) c[static_cast<std::size_t>(k)] += x[static_cast<std::size_t>(k)];
  }
  for (auto& x : c) x /= (dim_ + 1);
  return c;
}

int Mesh::bisect(int id) {
  if (id < 0 || static_cast<std::size_t>(id) >= simplices_.size() || !simplices_[static_cast<std::size_t>(id)].active) {
    throw InputError("bisect: simplex " + std::to_string(id) + " is not active");
  }
  const TaggedSimplex t = simplices_[static_cast<std::size_t>(id)];
  const int k = t.tag;
  const int a = t.v[0];
  const int b = t.v[static_cast<std::size_t>(k)];
  const std::uint64_t key = edge_key(a, b);

  int z;
  if (auto it = midpoint_.find(key); it != midpoint_.end()) {
    z = it->second;
  } else {
    Point m(static_cast<std::size_t>(dim_));
    const Point& pa = vertex(a);
    const Point& pb = vertex(b);
    for (int i = 0; i < dim_; ++i) m[static_cast<std::size_t>(i)] = midpoint(pa[static_cast<std::size_t>(i)], pb[static_cast<std::size_t>(i)]);
    z = add_vertex(m);
    midpoint_.emplace(key, z);
  }

  TaggedSimplex c1;
  TaggedSimplex c2;
  c1.v = t.v;
  c1.v[static_cast<std::size_t>(k)] = z;
  c2.v.reserve(t.v.size());
  for (int i = 1; i <= k; ++i) c2.v.push_back(t.v[static_cast<std::size_t>(i)]);
  c2.v.push_back(z);
  for (std::size_t i = static_cast<std::size_t>(k) + 1; i < t.v.size(); ++i) c2.v.push_back(t.v[i]);
  const int ntag = k > 1 ? k - 1 : dim_;
  c1.tag = c2.tag = ntag;
  c1.level = c2.level = t.level + 1;
  c1.parent = c2.parent = id;

  // Split boundary faces containing the refinement edge.
  for (std::size_t i = 1; i < t.v.size(); ++i) {
    if (static_cast<int>(i) == k) continue;
    Face f = sorted_without(t.v, i);
    auto it = gamma_.find(f);
    if (it != gamma_.end()) {
      gamma_.erase(it);
      gamma_.insert(replace_sorted(f, a, z));
      gamma_.insert(replace_sorted(f, b, z));
    }
  }

  // Retire the parent from the edge index.
  const auto& v = t.v;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      auto& lst = edge_elems_[edge_key(v[i], v[j])];
      lst.erase(std::remove(lst.begin(), lst.end(), id), lst.end());
    }
  }

  const double half = volume_[static_cast<std::size_t>(id)] / 2;
  simplices_[static_cast<std::size_t>(id)].active = false;
  simplices_.push_back(std::move(c1));
  volume_.push_back(half);
  const int id1 = static_cast<int>(simplices_.size()) - 1;
  simplices_.push_back(std::move(c2));
  volume_.push_back(half);
  const int id2 = id1 + 1;
  simplices_[static_cast<std::size_t>(id)].children = {id1, id2};
  register_edges(id1);
  register_edges(id2);
  ++num_active_;
  ++generation_;
  return z;
}

bool Mesh::has_bisected_edge(int id) const {
  const auto& v = simplices_[static_cast<std::size_t>(id)].v;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (midpoint_.count(edge_key(v[i], v[j])) != 0) return true;
    }
  }
  return false;
}

void Mesh::close(std::vector<int> worklist, std::size_t& count) {
  const int cap = 64 * (max_level() + 1);
  int waves = 0;
  while (!worklist.empty()) {
    if (++waves > cap) {
      throw NumericalError("closure did not terminate within " + std::to_string(cap) + " waves (invalid tag configuration)");
    }
    std::vector<int> next;
    for (int id : worklist) {
      if (!simplices_[static_cast<std::size_t>(id)].active || !has_bisected_edge(id)) continue;
      const TaggedSimplex& t = simplices_[static_cast<std::size_t>(id)];
      const std::uint64_t key = edge_key(t.v[0], t.v[static_cast<std::size_t>(t.tag)]);
      const bool fresh = midpoint_.count(key) == 0;
      bisect(id);
      ++count;
      const auto& ch = simplices_[static_cast<std::size_t>(id)].children;
      next.push_back(ch[0]);
      next.push_back(ch[1]);
      if (fresh) {
        for (int nb : edge_elems_[key]) next.push_back(nb);
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    worklist = std::move(next);
  }
}

std::size_t Mesh::refine_closure(const std::vector<int>& marked) {
  std::size_t count = 0;
  std::vector<int> work;
  std::vector<int> sorted = marked;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (int id : sorted) {
    if (id < 0 || static_cast<std::size_t>(id) >= simplices_.size() || !simplices_[static_cast<std::size_t>(id)].active) {
      throw InputError("refine_closure: marked simplex " + std::to_string(id) + " is not active");
    }
  }
  for (int id : sorted) {
    const TaggedSimplex& t = simplices_[static_cast<std::size_t>(id)];
    const std::uint64_t key = edge_key(t.v[0], t.v[static_cast<std::size_t>(t.tag)]);
    const bool fresh = midpoint_.count(key) == 0;
    bisect(id);
    ++count;
    const auto& ch = simplices_[static_cast<std::size_t>(id)].children;
    work.push_back(ch[0]);
    work.push_back(ch[1]);
    if (fresh) {
      for (int nb : edge_elems_[key]) work.push_back(nb);
    }
  }
  std::sort(work.begin(), work.end());
  work.erase(std::unique(work.begin(), work.end()), work.end());
  close(std::move(work), count);
  return count;
}

namespace {

// For every active simplex, the largest level among simplices touching it.
std::vector<int> max_touching_level(const Mesh& m, const std::vector<int>& act) {
  std::vector<int> vmax(m.num_vertices(), -1);
  for (int id : act) {
    const auto& t = m.simplex(id);
    for (int v : t.v) vmax[static_cast<std::size_t>(v)] = std::max(vmax[static_cast<std::size_t>(v)], t.level);
  }
  std::vector<int> out;
  out.reserve(act.size());
  for (int id : act) {
    int best = 0;
    for (int v : m.simplex(id).v) best = std::max(best, vmax[static_cast<std::size_t>(v)]);
    out.push_back(best);
  }
  return out;
}

} // namespace

LgStats Mesh::refine_lg(const std::vector<int>& marked, int alpha) {
  if (alpha < 1) throw InputError("alpha must be a positive integer");
  {
    const auto act = active();
    std::vector<int> vmax(coords_.size(), -1);
    std::vector<int> vwho(coords_.size(), -1);
    for (int id : act) {
      const auto& t = simplex(id);
      for (int v : t.v) {
        if (t.level > vmax[static_cast<std::size_t>(v)]) {
          vmax[static_cast<std::size_t>(v)] = t.level;
          vwho[static_cast<std::size_t>(v)] = id;
        }
      }
    }
    for (int id : act) {
      for (int v : simplex(id).v) {
        if (simplex(id).level < vmax[static_cast<std::size_t>(v)] - alpha) {
          std::ostringstream os;
          os << "input mesh violates limited grading: simplices " << id << " (level " << simplex(id).level << ") and "
             << vwho[static_cast<std::size_t>(v)] << " (level " << vmax[static_cast<std::size_t>(v)] << ") touch";
          throw InputError(os.str());
        }
      }
    }
  }
  LgStats st;
  for (int id : marked) {
    if (id < 0 || static_cast<std::size_t>(id) >= simplices_.size() || !simplices_[static_cast<std::size_t>(id)].active) {
      throw InputError("refine_lg: marked simplex " + std::to_string(id) + " is not active");
    }
    st.max_marked_level = std::max(st.max_marked_level, simplex(id).level);
  }
  std::vector<int> m = marked;
  while (!m.empty()) {
    ++st.rounds;
    st.bisections += refine_closure(m);
    const auto act = active();
    const auto tmax = max_touching_level(*this, act);
    m.clear();
    for (std::size_t i = 0; i < act.size(); ++i) {
      if (simplex(act[i]).level < tmax[i] - alpha) m.push_back(act[i]);
    }
  }
  return st;
}

std::size_t Mesh::uniform_refine() { return refine_closure(active()); }

int Mesh::max_level() const {
  int best = 0;
  for (const auto& t : simplices_) {
    if (t.active) best = std::max(best, t.level);
  }
  return best;
}

std::pair<Point, Point> Mesh::bounding_box() const {
  Point lo(static_cast<std::size_t>(dim_)), hi(static_cast<std::size_t>(dim_));
  bool first = true;
  for (const auto& p : coords_) {
    for (int k = 0; k < dim_; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      if (first || p[kk] < lo[kk]) lo[kk] = p[kk];
      if (first || hi[kk] < p[kk]) hi[kk] = p[kk];
    }
    first = false;
  }
  return {lo, hi};
}

ConformityReport Mesh::check_conformity() const {
  ConformityReport rep;
  const auto act = active();
  std::map<Face, int> faces;
  std::vector<char> used(coords_.size(), 0);
  for (int id : act) {
    const auto& v = simplex(id).v;
    for (int x : v) used[static_cast<std::size_t>(x)] = 1;
    for (std::size_t i = 0; i < v.size(); ++i) ++faces[sorted_without(v, i)];
  }
  const auto [lo, hi] = bounding_box();
  for (const auto& [f, cnt] : faces) {
    if (cnt > 2) {
      ++rep.overfull_faces;
      if (rep.first_problem.empty()) rep.first_problem = "face shared by more than two simplices";
    } else if (cnt == 1) {
      bool on_box = false;
      for (int k = 0; k < dim_ && !on_box; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        const bool all_lo = std::all_of(f.begin(), f.end(), [&](int x) { return vertex(x)[kk] == lo[kk]; });
        const bool all_hi = std::all_of(f.begin(), f.end(), [&](int x) { return vertex(x)[kk] == hi[kk]; });
        on_box = all_lo || all_hi;
      }
      if (!on_box) {
        ++rep.unmatched_faces;
        if (rep.first_problem.empty()) rep.first_problem = "interior face without a matching neighbor";
      }
    }
  }
  for (int id : act) {
    const auto& v = simplex(id).v;
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t j = i + 1; j < v.size(); ++j) {
        Point m(static_cast<std::size_t>(dim_));
        for (int k = 0; k < dim_; ++k) {
          m[static_cast<std::size_t>(k)] = midpoint(vertex(v[i])[static_cast<std::size_t>(k)], vertex(v[j])[static_cast<std::size_t>(k)]);
        }
        auto hit = find_vertex(m);
        if (hit && used[static_cast<std::size_t>(*hit)]) {
          ++rep.hanging_vertices;
          if (rep.first_problem.empty()) {
            rep.first_problem = "hanging vertex " + std::to_string(*hit) + " on an edge of simplex " + std::to_string(id);
          }
        }
      }
    }
  }
  rep.conforming = rep.hanging_vertices == 0 && rep.unmatched_faces == 0 && rep.overfull_faces == 0;
  return rep;
}

int Mesh::max_touching_level_gap() const {
  const auto act = active();
  const auto tmax = max_touching_level(*this, act);
  int gap = 0;
  for (std::size_t i = 0; i < act.size(); ++i) gap = std::max(gap, tmax[i] - simplex(act[i]).level);
  return gap;
}

int Mesh::max_face_level_gap() const {
  std::map<Face, std::vector<int>> faces;
  for (int id : active()) {
    const auto& v = simplex(id).v;
    for (std::size_t i = 0; i < v.size(); ++i) faces[sorted_without(v, i)].push_back(simplex(id).level);
  }
  int gap = 0;
  for (const auto& [f, lv] : faces) {
    if (lv.size() == 2) gap = std::max(gap, std::abs(lv[0] - lv[1]));
  }
  return gap;
}

std::set<std::vector<Rational>> Mesh::similarity_classes() const {
  std::set<std::vector<Rational>> classes;
  for (int id : active()) {
    const auto& v = simplex(id).v;
    std::vector<Rational> len;
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t j = i + 1; j < v.size(); ++j) {
        Rational s = 0;
        for (int k = 0; k < dim_; ++k) {
          const Rational diff = to_rational(vertex(v[i])[static_cast<std::size_t>(k)]) - to_rational(vertex(v[j])[static_cast<std::size_t>(k)]);
          s += diff * diff;
        }
        len.push_back(s);
      }
    }
    const Rational mx = *std::max_element(len.begin(), len.end());
    for (auto& x : len) x /= mx;
    std::sort(len.begin(), len.end());
    classes.insert(std::move(len));
  }
  return classes;
}

std::size_t Mesh::similarity_class_count() const { return similarity_classes().size(); }

int Mesh::ancestor_in(int id, const std::vector<char>& is_coarse_active) const {
  int cur = id;
  while (cur >= 0) {
    if (static_cast<std::size_t>(cur) < is_coarse_active.size() && is_coarse_active[static_cast<std::size_t>(cur)]) return cur;
    cur = simplex(cur).parent;
  }
  throw InputError("simplex " + std::to_string(id) + " has no ancestor in the coarse mesh");
}

void Mesh::add_gamma_face(Face f) {
  if (static_cast<int>(f.size()) != dim_) throw InputError("gamma face must have d vertices");
  std::sort(f.begin(), f.end());
  gamma_.insert(std::move(f));
}

std::vector<Face> Mesh::boundary_faces() const {
  std::map<Face, int> faces;
  for (int id : active()) {
    const auto& v = simplex(id).v;
    for (std::size_t i = 0; i < v.size(); ++i) ++faces[sorted_without(v, i)];
  }
  std::vector<Face> out;
  for (const auto& [f, c] : faces) {
    if (c == 1) out.push_back(f);
  }
  return out;
}

void Mesh::mark_boundary_gamma(int axis, int side) {
  const auto [lo, hi] = bounding_box();
  for (const auto& f : boundary_faces()) {
    bool take = false;
    for (int k = 0; k < dim_ && !take; ++k) {
      if (axis >= 0 && k != axis) continue;
      const auto kk = static_cast<std::size_t>(k);
      const bool all_lo = std::all_of(f.begin(), f.end(), [&](int x) { return vertex(x)[kk] == lo[kk]; });
      const bool all_hi = std::all_of(f.begin(), f.end(), [&](int x) { return vertex(x)[kk] == hi[kk]; });
      take = axis < 0 ? (all_lo || all_hi) : (side == 0 ? all_lo : all_hi);
    }
    if (take) gamma_.insert(f);
  }
}

Mesh kuhn_initial_mesh(int d, int cells_per_axis) {
  if (d < 1 || d > 8) throw InputError("unsupported dimension " + std::to_string(d));
  return kuhn_initial_mesh(std::vector<int>(static_cast<std::size_t>(d), cells_per_axis));
}

Mesh kuhn_initial_mesh(const std::vector<int>& cells) {
  const int d = static_cast<int>(cells.size());
  Mesh m(d);
  for (int c : cells) {
    if (c < 1) throw InputError("cells_per_axis must be positive");
  }
  std::size_t ncells = 1;
  for (int c : cells) ncells *= static_cast<std::size_t>(c);
  std::vector<int> perm(static_cast<std::size_t>(d));
  for (std::size_t cell = 0; cell < ncells; ++cell) {
    std::vector<std::int64_t> corner(static_cast<std::size_t>(d));
    std::size_t rest = cell;
    for (int k = 0; k < d; ++k) {
      corner[static_cast<std::size_t>(k)] = static_cast<std::int64_t>(rest % static_cast<std::size_t>(cells[static_cast<std::size_t>(k)]));
      rest /= static_cast<std::size_t>(cells[static_cast<std::size_t>(k)]);
    }
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<int> verts;
      auto x = corner;
      auto to_point = [](const std::vector<std::int64_t>& c) {
        Point p;
        for (auto v : c) p.push_back(Dyadic::integer(v));
        return p;
      };
      verts.push_back(m.add_vertex(to_point(x)));
      for (int k = 0; k < d; ++k) {
        ++x[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])];
        verts.push_back(m.add_vertex(to_point(x)));
      }
      m.add_simplex(std::move(verts), d, 0);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return m;
}

Mesh single_simplex_mesh(int d) {
  Mesh m(d);
  std::vector<int> verts;
  Point p(static_cast<std::size_t>(d), Dyadic::integer(0));
  verts.push_back(m.add_vertex(p));
  for (int k = 0; k < d; ++k) {
    p[static_cast<std::size_t>(k)] = Dyadic::integer(1);
    verts.push_back(m.add_vertex(p));
  }
  m.add_simplex(std::move(verts), d, 0);
  return m;
}

} // namespace gp
