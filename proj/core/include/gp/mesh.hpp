#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gp/dyadic.hpp"

namespace gp {

using Rational = boost::multiprecision::cpp_rational;
using Point = std::vector<Dyadic>;
using Face = std::vector<int>; // sorted vertex ids

struct TaggedSimplex {
  std::vector<int> v; // bisection order x_0..x_d
  int tag = 1;
  int level = 0;
  int parent = -1;
  std::array<int, 2> children{-1, -1};
  bool active = true;
};

struct ConformityReport {
  bool conforming = true;
  std::size_t hanging_vertices = 0;
  std::size_t unmatched_faces = 0;
  std::size_t overfull_faces = 0;
  std::string first_problem;
};

/// Result of a BiSecLG(alpha) call.
struct LgStats {
  int rounds = 0;                 // closure steps executed
  int max_marked_level = -1;      // over the initially marked set
  std::size_t bisections = 0;
};

/// Conforming simplicial mesh under Maubach bisection.
///
/// Simplex ids are stable: refined simplices stay in storage as inactive
/// parents, so ids can be used to walk the refinement forest.
class Mesh {
public:
  explicit Mesh(int dim);

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] std::size_t num_vertices() const { return coords_.size(); }
  [[nodiscard]] std::size_t num_simplices_total() const { return simplices_.size(); }
  [[nodiscard]] std::size_t num_active() const { return num_active_; }
  [[nodiscard]] std::uint64_t generation() const { return generation_; }

  /// Active simplex ids in increasing order.
  [[nodiscard]] std::vector<int> active() const;

  [[nodiscard]] const TaggedSimplex& simplex(int id) const { return simplices_.at(static_cast<std::size_t>(id)); }
  [[nodiscard]] const Point& vertex(int id) const { return coords_.at(static_cast<std::size_t>(id)); }
  [[nodiscard]] std::vector<double> vertex_double(int id) const;

  /// Existing vertex with these exact coordinates, if any.
  [[nodiscard]] std::optional<int> find_vertex(const Point& p) const;

  /// Adds (or reuses) a vertex.
  int add_vertex(const Point& p);
  /// Adds a level-0 simplex. Returns its id.
  int add_simplex(std::vector<int> verts, int tag, int level = 0);

  // Geometry.
  [[nodiscard]] double volume(int id) const { return volume_.at(static_cast<std::size_t>(id)); }
  [[nodiscard]] Rational exact_volume(int id) const;
  [[nodiscard]] double diameter(int id) const;
  /// Mesh size convention h|_T = 2^{-level/d}.
  [[nodiscard]] double h(int id) const;
  /// Barycentric-coordinate gradients (d+1 rows of length d), in double.
  [[nodiscard]] std::vector<std::vector<double>> barycentric_gradients(int id) const;
  [[nodiscard]] std::vector<double> centroid(int id) const;

  // Refinement.
  /// Bisects one active simplex; may leave hanging vertices. Returns the
  /// midpoint vertex id.
  int bisect(int id);
  /// Bisects the marked simplices and closes the mesh. Returns the number
  /// of bisections performed.
  std::size_t refine_closure(const std::vector<int>& marked);
  /// BiSecLG(alpha). Throws InputError if the input mesh violates the
  /// alpha-limited grading (message names the offending pair).
  LgStats refine_lg(const std::vector<int>& marked, int alpha);
  /// One uniform sweep: every active simplex bisected once, then closure.
  std::size_t uniform_refine();

  // Audits.
  [[nodiscard]] ConformityReport check_conformity() const;
  /// Largest |level(T)-level(T')| over vertex-touching active pairs.
  [[nodiscard]] int max_touching_level_gap() const;
  /// Largest |level(T)-level(T')| over face-sharing active pairs.
  [[nodiscard]] int max_face_level_gap() const;
  /// Number of distinct similarity classes (sorted normalized squared edge
  /// lengths) among active simplices.
  [[nodiscard]] std::size_t similarity_class_count() const;
  [[nodiscard]] std::set<std::vector<Rational>> similarity_classes() const;
  [[nodiscard]] int max_level() const;

  /// Ancestor of `id` that is an active simplex of `coarse` (walking the parent chain).
  [[nodiscard]] int ancestor_in(int id, const std::vector<char>& is_coarse_active) const;

  // Boundary marker.
  [[nodiscard]] const std::set<Face>& gamma() const { return gamma_; }
  void add_gamma_face(Face f);
  /// Marks every boundary face of the bounding box (axis<0) or only the
  /// faces on {x_axis = min} (side 0) / {x_axis = max} (side 1).
  void mark_boundary_gamma(int axis = -1, int side = 0);
  /// Faces of active simplices that belong to exactly one active simplex.
  [[nodiscard]] std::vector<Face> boundary_faces() const;

  [[nodiscard]] std::pair<Point, Point> bounding_box() const;

private:
  void register_edges(int id);
  std::vector<int> hanging_candidates(int id) const;
  [[nodiscard]] bool has_bisected_edge(int id) const;
  void close(std::vector<int> worklist, std::size_t& count);

  int dim_;
  std::vector<Point> coords_;
  std::map<Point, int> vertex_index_;
  std::vector<TaggedSimplex> simplices_;
  std::vector<double> volume_;
  std::size_t num_active_ = 0;
  std::uint64_t generation_ = 0;
  // bisected edge (min id, max id) -> midpoint vertex id
  std::unordered_map<std::uint64_t, int> midpoint_;
  // edge -> active simplices containing it
  std::unordered_map<std::uint64_t, std::vector<int>> edge_elems_;
  std::set<Face> gamma_;
};

/// Kuhn triangulation of [0,n_0]x...x[0,n_{d-1}] with unit cells; every
/// cell is split into d! simplices sharing the main diagonal.
Mesh kuhn_initial_mesh(int d, int cells_per_axis);
Mesh kuhn_initial_mesh(const std::vector<int>& cells_per_axis);

/// The single simplex conv{0, e_1, e_1+e_2, ...} with tag d.
Mesh single_simplex_mesh(int d);

[[nodiscard]] std::uint64_t edge_key(int a, int b);

} // namespace gp
