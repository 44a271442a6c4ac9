// Global numbering of the three DOF families: cell-interior coefficients
// first, then all edge-trace blocks, then all edge normal-derivative blocks.
#pragma once

#include "sfwg/basis.hpp"
#include "sfwg/mesh.hpp"

#include <vector>

namespace sfwg {

struct DofMap {
  int k = 2;
  int n_cells = 0;
  int n_edges = 0;

  DofMap() = default;
  DofMap(const PolyMesh& mesh, int degree)
      : k(degree), n_cells(mesh.n_cells()), n_edges(mesh.n_edges()) {}

  int cell_dim() const { return poly_space_dim(k); }
  int vb_dim() const { return k + 1; }
  int vn_dim() const { return k; }

  int cell_offset(int c) const { return c * cell_dim(); }
  int vb_offset(int e) const { return n_cells * cell_dim() + e * vb_dim(); }
  int vn_offset(int e) const { return n_cells * cell_dim() + n_edges * vb_dim() + e * vn_dim(); }
  int size() const { return n_cells * cell_dim() + n_edges * (vb_dim() + vn_dim()); }

  /// Global indices of the local block [interior | per-edge v_b | per-edge
  /// v_n], edges in the cell's CCW side order.
  std::vector<int> cell_dofs(const PolyMesh& mesh, int cell) const;

  /// Mask of DOFs constrained by essential boundary conditions: all v_b and
  /// v_n blocks of boundary edges.
  std::vector<char> boundary_mask(const PolyMesh& mesh) const;
};

/// A discrete function v = {v_0, v_b, v_n n_e}: one coefficient vector over
/// the DofMap ordering.
struct WgFunction {
  DofMap map;
  Vector coeffs;

  WgFunction() = default;
  explicit WgFunction(const DofMap& m) : map(m), coeffs(Vector::Zero(m.size())) {}
};

} // namespace sfwg
