// Polygonal meshes of the unit square: representation, the two generated grid
// families (uniform right triangles and pentagon macro-cells), uniform
// refinement, and the line-oriented text format.
#pragma once

#include "sfwg/types.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sfwg {

enum class GridKind { UniformTriangle, PentagonMacro };

/// A generated grid family: kind + refinement level (level 1 is coarsest).
/// alpha is the pentagon construction offset (fraction of the macro-square
/// side by which the interior quadrilateral vertices sit inside each side
/// midpoint); it is ignored for triangle grids.
struct GridFamily {
  GridKind kind = GridKind::UniformTriangle;
  int level = 1;
  double alpha = 0.15;
};

/// One mesh edge. Endpoints are stored in the traversal order of the
/// adjacent cell with the smaller index; the unit normal points away from
/// that cell (outward for boundary edges). Both adjacent cells share this
/// single normal.
struct MeshEdge {
  int a = -1, b = -1;          // vertex indices, orientation of cell_minus
  int cell_minus = -1;         // adjacent cell with smaller index
  int cell_plus = -1;          // -1 on boundary edges
  Vector2 normal = Vector2::Zero();
  double length = 0.0;
  bool boundary = false;
};

/// Immutable convex-cell polygonal mesh. Construction validates cell
/// orientation, convexity, and edge conformity; per-cell area, centroid and
/// diameter are precomputed.
class PolyMesh {
public:
  /// Builds a mesh from vertices and counter-clockwise cell loops.
  /// Throws ValidationError / GeometryError on invalid input.
  static PolyMesh from_cells(std::vector<Vector2> vertices,
                             std::vector<std::vector<int>> cells);

  int n_vertices() const { return static_cast<int>(vertices_.size()); }
  int n_cells() const { return static_cast<int>(cells_.size()); }
  int n_edges() const { return static_cast<int>(edges_.size()); }

  const Vector2& vertex(int v) const { return vertices_[v]; }
  const std::vector<int>& cell(int c) const { return cells_[c]; }
  const MeshEdge& edge(int e) const { return edges_[e]; }

  double cell_area(int c) const { return areas_[c]; }
  const Vector2& cell_centroid(int c) const { return centroids_[c]; }
  double cell_diameter(int c) const { return diameters_[c]; }

  /// Edge indices of cell c, entry q matching the side from vertex q to q+1.
  const std::vector<int>& cell_edges(int c) const { return cell_edges_[c]; }

  /// Outward unit normal of cell c on its local side q.
  Vector2 outward_normal(int c, int q) const;
  /// Sign n_e . n for cell c and local side q (+1 or -1).
  double edge_sign(int c, int q) const;

  /// Largest cell diameter.
  double mesh_size() const { return h_; }
  double total_area() const { return total_area_; }

  /// Set when the mesh came from generate()/refine().
  std::optional<GridFamily> provenance;

private:
  std::vector<Vector2> vertices_;
  std::vector<std::vector<int>> cells_;
  std::vector<MeshEdge> edges_;
  std::vector<std::vector<int>> cell_edges_;
  std::vector<double> areas_;
  std::vector<Vector2> centroids_;
  std::vector<double> diameters_;
  double h_ = 0.0;
  double total_area_ = 0.0;
};

/// Builds the level family.level mesh of the requested family.
PolyMesh generate(const GridFamily& family);

/// Returns the half-size refinement (next level) of a generated mesh.
/// The passed family must match the mesh provenance.
PolyMesh refine(const PolyMesh& mesh, const GridFamily& family);

/// Text format I/O ("polymesh 1"). read_mesh validates orientation and, for
/// meshes spanning the unit square, that cell areas cover it.
PolyMesh read_mesh(std::istream& in);
PolyMesh read_mesh_string(const std::string& text);
void write_mesh(const PolyMesh& mesh, std::ostream& out);
std::string write_mesh_string(const PolyMesh& mesh);

} // namespace sfwg
