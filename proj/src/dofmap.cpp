#include "sfwg/dofmap.hpp"

namespace sfwg {

std::vector<int> DofMap::cell_dofs(const PolyMesh& mesh, int cell) const {
  const auto& edges = mesh.cell_edges(cell);
  int m = static_cast<int>(edges.size());
  std::vector<int> dofs;
  dofs.reserve(cell_dim() + m * (vb_dim() + vn_dim()));
  for (int i = 0; i < cell_dim(); ++i) dofs.push_back(cell_offset(cell) + i);
  for (int e : edges)
    for (int i = 0; i < vb_dim(); ++i) dofs.push_back(vb_offset(e) + i);
  for (int e : edges)
    for (int i = 0; i < vn_dim(); ++i) dofs.push_back(vn_offset(e) + i);
  return dofs;
}

std::vector<char> DofMap::boundary_mask(const PolyMesh& mesh) const {
  std::vector<char> mask(size(), 0);
  for (int e = 0; e < mesh.n_edges(); ++e) {
    if (!mesh.edge(e).boundary) continue;
    for (int i = 0; i < vb_dim(); ++i) mask[vb_offset(e) + i] = 1;
    for (int i = 0; i < vn_dim(); ++i) mask[vn_offset(e) + i] = 1;
  }
  return mask;
}

} // namespace sfwg
