#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "gp/mesh.hpp"

namespace gp {

enum class DistanceKind { Vertex, Face };

/// Integer geodesic distance on the element graph of the active simplices.
///
/// Elements are addressed by their position in `elements()` (the active
/// ids in increasing order). Vertex kind joins simplices sharing at least
/// one vertex, face kind joins simplices sharing a (d-1)-face.
class ElementDistance {
public:
  static constexpr int kInfinity = std::numeric_limits<int>::max();
  static constexpr std::size_t kDefaultMatrixThreshold = 4096;

  ElementDistance(const Mesh& mesh, DistanceKind kind, std::size_t matrix_threshold = kDefaultMatrixThreshold);

  [[nodiscard]] DistanceKind kind() const { return kind_; }
  [[nodiscard]] std::size_t size() const { return ids_.size(); }
  [[nodiscard]] const std::vector<int>& elements() const { return ids_; }
  /// Position of a simplex id in elements(), or -1.
  [[nodiscard]] int index_of(int simplex_id) const;
  [[nodiscard]] const std::vector<std::vector<int>>& neighbors() const { return adj_; }
  [[nodiscard]] bool has_matrix() const { return !matrix_.empty(); }

  [[nodiscard]] int operator()(std::size_t i, std::size_t j) const;
  /// Distances from one element to all others.
  [[nodiscard]] std::vector<int> row(std::size_t i) const;
  /// Distances from a set of elements (multi-source BFS).
  [[nodiscard]] std::vector<int> from_set(const std::vector<int>& sources) const;
  /// min over pairs; kInfinity if disconnected.
  [[nodiscard]] int set_distance(const std::vector<int>& a, const std::vector<int>& b) const;
  [[nodiscard]] bool connected() const;
  [[nodiscard]] int max_distance() const;

private:
  DistanceKind kind_;
  std::vector<int> ids_;
  std::vector<int> index_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> matrix_;
};

/// Minimal gamma with v(T') <= gamma v(T) for all distance-1 pairs; 1 if
/// there are no such pairs. Values are indexed like dist.elements().
[[nodiscard]] double grading_of(const std::vector<double>& values, const ElementDistance& dist);

/// max |level(T) - level(T')| over distance-1 pairs. The grading of
/// h = 2^{-level/d} is exactly 2^{gap/d}.
[[nodiscard]] int level_gap(const Mesh& mesh, const ElementDistance& dist);

/// Euclidean distance between two simplices (closest points), in double.
[[nodiscard]] double euclidean_distance(const Mesh& mesh, int a, int b);

} // namespace gp
