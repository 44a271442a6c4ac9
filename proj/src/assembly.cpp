#include "sfwg/assembly.hpp"

#include "sfwg/exceptions.hpp"
#include "sfwg/parallel.hpp"
#include "sfwg/projection.hpp"
#include "sfwg/quadrature.hpp"

#include <Eigen/Cholesky>

#include <mutex>

namespace sfwg {

namespace {

// Load vector block (f, psi_m)_T; exactness 2k+6 keeps the consistency error
// of non-polynomial sources below the discretization error for k <= 3.
Vector cell_load(const PolyMesh& mesh, int cell, int k, const ScalarField& f) {
  QuadratureRule quad = cell_quadrature(mesh, cell, 2 * k + 6);
  CellBasis basis(mesh, cell, k);
  Matrix vals = basis.values(quad.points);
  Vector fv(quad.size());
  for (int p = 0; p < quad.size(); ++p) fv[p] = f(quad.points.row(p).transpose());
  return vals.transpose() * quad.weights.cwiseProduct(fv);
}

} // namespace

LinearSystem assemble(const ElementOperators& ops, const ScalarField& f) {
  const PolyMesh& mesh = ops.mesh();
  const DofMap& map = ops.dofmap();
  int nc = mesh.n_cells();

  LinearSystem sys;
  sys.map = map;
  sys.rhs = Vector::Zero(map.size());

  std::vector<Vector> loads(nc);
  parallel_for(nc, [&](int c) { loads[c] = cell_load(mesh, c, map.k, f); });
  for (int c = 0; c < nc; ++c)
    sys.rhs.segment(map.cell_offset(c), map.cell_dim()) = loads[c];

  std::vector<Eigen::Triplet<double>> triplets;
  size_t nnz_estimate = 0;
  for (int c = 0; c < nc; ++c) {
    size_t n = ops[c].global_dofs.size();
    nnz_estimate += n * n;
  }
  triplets.reserve(nnz_estimate);
  for (int c = 0; c < nc; ++c) {
    const ElementOperator& op = ops[c];
    const auto& dofs = op.global_dofs;
    int n = op.n_local();
    for (int r = 0; r < n; ++r)
      for (int s = 0; s < n; ++s) {
        if (dofs[r] < 0 || dofs[r] >= map.size() || dofs[s] < 0 || dofs[s] >= map.size())
          throw std::logic_error("assembly: DOF index out of range");
        triplets.emplace_back(dofs[r], dofs[s], op.stiffness(r, s));
      }
  }
  sys.matrix.resize(map.size(), map.size());
  sys.matrix.setFromTriplets(triplets.begin(), triplets.end());
  return sys;
}

LinearSystem apply_boundary(LinearSystem sys, const PolyMesh& mesh, const ScalarField& g,
                            const ScalarField& phi_n) {
  const DofMap& map = sys.map;
  int n = static_cast<int>(sys.rhs.size());
  sys.constrained.assign(n, 0);
  sys.constrained_values = Vector::Zero(n);

  for (int e = 0; e < mesh.n_edges(); ++e) {
    const MeshEdge& edge = mesh.edge(e);
    if (!edge.boundary) continue;
    // outward domain normal = outward normal of the only adjacent cell;
    // the sign converts the outward-derivative datum to the stored-normal
    // coefficient of the v_n block
    int c = edge.cell_minus;
    const auto& cedges = mesh.cell_edges(c);
    double sign = 1.0;
    for (size_t q = 0; q < cedges.size(); ++q)
      if (cedges[q] == e) {
        sign = edge.normal.dot(mesh.outward_normal(c, static_cast<int>(q)));
        break;
      }
    sign = sign >= 0.0 ? 1.0 : -1.0;

    Vector gb = project_onto_edge(g, mesh, e, map.k);
    Vector gn = project_onto_edge(phi_n, mesh, e, map.k - 1);
    for (int i = 0; i < map.vb_dim(); ++i) {
      sys.constrained[map.vb_offset(e) + i] = 1;
      sys.constrained_values[map.vb_offset(e) + i] = gb[i];
    }
    for (int i = 0; i < map.vn_dim(); ++i) {
      sys.constrained[map.vn_offset(e) + i] = 1;
      sys.constrained_values[map.vn_offset(e) + i] = sign * gn[i];
    }
  }

  // fold constrained columns into the right-hand side
  Vector folded = sys.rhs;
  for (int col = 0; col < n; ++col) {
    if (!sys.constrained[col]) continue;
    double xc = sys.constrained_values[col];
    if (xc == 0.0) continue;
    for (Eigen::SparseMatrix<double>::InnerIterator it(sys.matrix, col); it; ++it)
      if (!sys.constrained[it.row()]) folded[it.row()] -= it.value() * xc;
  }

  sys.free_dofs.clear();
  std::vector<int> reduced_index(n, -1);
  for (int i = 0; i < n; ++i)
    if (!sys.constrained[i]) {
      reduced_index[i] = static_cast<int>(sys.free_dofs.size());
      sys.free_dofs.push_back(i);
    }
  int nf = static_cast<int>(sys.free_dofs.size());
  sys.reduced_rhs.resize(nf);
  for (int i = 0; i < nf; ++i) sys.reduced_rhs[i] = folded[sys.free_dofs[i]];

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(sys.matrix.nonZeros());
  for (int col = 0; col < n; ++col) {
    if (sys.constrained[col]) continue;
    for (Eigen::SparseMatrix<double>::InnerIterator it(sys.matrix, col); it; ++it)
      if (!sys.constrained[it.row()])
        triplets.emplace_back(reduced_index[it.row()], reduced_index[col], it.value());
  }
  sys.reduced_matrix.resize(nf, nf);
  sys.reduced_matrix.setFromTriplets(triplets.begin(), triplets.end());
  sys.reduced = true;
  return sys;
}

Vector expand_in_system_space(const LinearSystem& sys, const Vector& reduced_solution) {
  Vector full = sys.constrained_values;
  for (size_t i = 0; i < sys.free_dofs.size(); ++i)
    full[sys.free_dofs[i]] = reduced_solution[static_cast<int>(i)];
  return full;
}

WgFunction expand_solution(const LinearSystem& sys, const Vector& reduced_solution) {
  if (static_cast<int>(sys.constrained.size()) != sys.map.size())
    throw std::invalid_argument(
        "expand_solution expects a full-space system; condensed systems recover "
        "through CondensedSystem::recover");
  WgFunction u(sys.map);
  u.coeffs = expand_in_system_space(sys, reduced_solution);
  return u;
}

// ---------------------------------------------------------------------------
// static condensation

CondensedSystem::CondensedSystem(const ElementOperators& ops, const ScalarField& f)
    : ops_(&ops), map_(ops.dofmap()) {
  const PolyMesh& mesh = ops.mesh();
  int nc = mesh.n_cells();
  int interior_total = nc * map_.cell_dim();
  int edge_total = map_.size() - interior_total;

  interior_solve_coupling_.resize(nc);
  interior_solve_load_.resize(nc);
  std::vector<Matrix> schur_blocks(nc);
  std::vector<Vector> schur_loads(nc);

  std::exception_ptr failure;
  std::mutex mtx;
  parallel_for(nc, [&](int c) {
    try {
      const ElementOperator& op = ops[c];
      int ni = map_.cell_dim();
      int nloc = op.n_local();
      int nedge = nloc - ni;
      Matrix kii = op.stiffness.topLeftCorner(ni, ni);
      Matrix kie = op.stiffness.topRightCorner(ni, nedge);
      Eigen::LLT<Matrix> llt(kii);
      if (llt.info() != Eigen::Success)
        throw ConditioningError(
            "static condensation needs an SPD interior block; use j >= k+2");
      Vector bi = cell_load(mesh, c, map_.k, f);
      interior_solve_coupling_[c] = llt.solve(kie);
      interior_solve_load_[c] = llt.solve(bi);
      schur_blocks[c] = op.stiffness.bottomRightCorner(nedge, nedge) -
                        kie.transpose() * interior_solve_coupling_[c];
      schur_loads[c] = -kie.transpose() * interior_solve_load_[c];
    } catch (...) {
      std::lock_guard<std::mutex> lock(mtx);
      if (!failure) failure = std::current_exception();
    }
  });
  if (failure) std::rethrow_exception(failure);

  schur_rhs_ = Vector::Zero(edge_total);
  std::vector<Eigen::Triplet<double>> triplets;
  for (int c = 0; c < nc; ++c) {
    const auto& dofs = ops[c].global_dofs;
    int ni = map_.cell_dim();
    int nedge = static_cast<int>(dofs.size()) - ni;
    for (int r = 0; r < nedge; ++r) {
      int gr = dofs[ni + r] - interior_total;
      schur_rhs_[gr] += schur_loads[c][r];
      for (int s = 0; s < nedge; ++s)
        triplets.emplace_back(gr, dofs[ni + s] - interior_total, schur_blocks[c](r, s));
    }
  }
  schur_.resize(edge_total, edge_total);
  schur_.setFromTriplets(triplets.begin(), triplets.end());
}

LinearSystem CondensedSystem::edge_system(const PolyMesh& mesh, const ScalarField& g,
                                          const ScalarField& phi_n) const {
  LinearSystem sys;
  sys.map = map_;
  sys.matrix = schur_;
  sys.rhs = schur_rhs_;
  // apply_boundary works on the trailing edge-DOF block; reuse its logic by
  // shifting offsets: edge dof (global) - interior_total = local index.
  int interior_total = map_.n_cells * map_.cell_dim();
  int n = static_cast<int>(sys.rhs.size());
  sys.constrained.assign(n, 0);
  sys.constrained_values = Vector::Zero(n);
  for (int e = 0; e < mesh.n_edges(); ++e) {
    const MeshEdge& edge = mesh.edge(e);
    if (!edge.boundary) continue;
    int c = edge.cell_minus;
    const auto& cedges = mesh.cell_edges(c);
    double sign = 1.0;
    for (size_t q = 0; q < cedges.size(); ++q)
      if (cedges[q] == e) {
        sign = edge.normal.dot(mesh.outward_normal(c, static_cast<int>(q)));
        break;
      }
    sign = sign >= 0.0 ? 1.0 : -1.0;
    Vector gb = project_onto_edge(g, mesh, e, map_.k);
    Vector gn = project_onto_edge(phi_n, mesh, e, map_.k - 1);
    for (int i = 0; i < map_.vb_dim(); ++i) {
      sys.constrained[map_.vb_offset(e) - interior_total + i] = 1;
      sys.constrained_values[map_.vb_offset(e) - interior_total + i] = gb[i];
    }
    for (int i = 0; i < map_.vn_dim(); ++i) {
      sys.constrained[map_.vn_offset(e) - interior_total + i] = 1;
      sys.constrained_values[map_.vn_offset(e) - interior_total + i] = sign * gn[i];
    }
  }

  Vector folded = sys.rhs;
  for (int col = 0; col < n; ++col) {
    if (!sys.constrained[col]) continue;
    double xc = sys.constrained_values[col];
    if (xc == 0.0) continue;
    for (Eigen::SparseMatrix<double>::InnerIterator it(sys.matrix, col); it; ++it)
      if (!sys.constrained[it.row()]) folded[it.row()] -= it.value() * xc;
  }
  std::vector<int> reduced_index(n, -1);
  for (int i = 0; i < n; ++i)
    if (!sys.constrained[i]) {
      reduced_index[i] = static_cast<int>(sys.free_dofs.size());
      sys.free_dofs.push_back(i);
    }
  int nf = static_cast<int>(sys.free_dofs.size());
  sys.reduced_rhs.resize(nf);
  for (int i = 0; i < nf; ++i) sys.reduced_rhs[i] = folded[sys.free_dofs[i]];
  std::vector<Eigen::Triplet<double>> triplets;
  for (int col = 0; col < n; ++col) {
    if (sys.constrained[col]) continue;
    for (Eigen::SparseMatrix<double>::InnerIterator it(sys.matrix, col); it; ++it)
      if (!sys.constrained[it.row()])
        triplets.emplace_back(reduced_index[it.row()], reduced_index[col], it.value());
  }
  sys.reduced_matrix.resize(nf, nf);
  sys.reduced_matrix.setFromTriplets(triplets.begin(), triplets.end());
  sys.reduced = true;
  return sys;
}

WgFunction CondensedSystem::recover(const Vector& edge_coeffs) const {
  WgFunction u(map_);
  int interior_total = map_.n_cells * map_.cell_dim();
  u.coeffs.tail(map_.size() - interior_total) = edge_coeffs;
  const ElementOperators& ops = *ops_;
  for (int c = 0; c < map_.n_cells; ++c) {
    const auto& dofs = ops[c].global_dofs;
    int ni = map_.cell_dim();
    int nedge = static_cast<int>(dofs.size()) - ni;
    Vector ue(nedge);
    for (int r = 0; r < nedge; ++r) ue[r] = edge_coeffs[dofs[ni + r] - interior_total];
    u.coeffs.segment(map_.cell_offset(c), ni) =
        interior_solve_load_[c] - interior_solve_coupling_[c] * ue;
  }
  return u;
}

} // namespace sfwg
