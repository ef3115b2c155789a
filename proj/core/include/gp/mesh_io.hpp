#pragma once

#include <iosfwd>
#include <string>

#include "gp/distance.hpp"
#include "gp/mesh.hpp"

namespace gp {

/// Versioned JSON mesh format (version 1):
/// {"version":1,"dim":d,"vertices":[[[num,exp],...],...],
///  "simplices":[{"v":[...],"tag":k,"level":l},...],"gamma_faces":[[...],...]}
/// A coordinate [num,exp] stands for num/2^exp. Only active simplices are
/// written; refinement history is not preserved.
std::string mesh_to_json(const Mesh& mesh, int indent = -1);
Mesh mesh_from_json(const std::string& text);

void write_mesh_file(const Mesh& mesh, const std::string& path);
Mesh read_mesh_file(const std::string& path);

/// Per-element TSV: id, level, volume, h, min-neighbor-level (vertex adjacency).
void write_element_report(const Mesh& mesh, const ElementDistance& dist, std::ostream& os);
/// Full distance matrix as TSV (first row/column are simplex ids; "inf" for the sentinel).
void write_distance_matrix(const ElementDistance& dist, std::ostream& os);

} // namespace gp
