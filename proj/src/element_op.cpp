#include "sfwg/element_op.hpp"

#include "sfwg/exceptions.hpp"
#include "sfwg/parallel.hpp"
#include "sfwg/projection.hpp"
#include "sfwg/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <limits>
#include <mutex>
#include <string>

namespace sfwg {

Vector ElementOperator::solve_mass(const Vector& rhs) const {
  Vector x = mass_llt_.solve(rhs);
  int n = static_cast<int>(rhs.size());
  Vector r(n);
  for (int i = 0; i < n; ++i) {
    long double acc = static_cast<long double>(rhs[i]);
    for (int c = 0; c < n; ++c)
      acc -= static_cast<long double>(mass(i, c)) * static_cast<long double>(x[c]);
    r[i] = static_cast<double>(acc);
  }
  x += mass_llt_.solve(r);
  return x;
}

Vector ElementOperator::lift(const Vector& v_local) const {
  return solve_mass(lift_rhs * v_local);
}

ElementOperator element_stiffness(const PolyMesh& mesh, int cell, int k, int j,
                                  ElementOperatorOptions opts) {
  if (j <= k) throw std::invalid_argument("lift degree j must exceed k");
  ElementOperator op;
  op.cell = cell;
  op.k = k;
  op.j = j;

  CellBasis basis(mesh, cell, j);
  int nk0 = poly_space_dim(k);

  op.mass = cell_mass_matrix(mesh, cell, j);
  op.mass_llt_.compute(op.mass);
  if (op.mass_llt_.info() != Eigen::Success)
    throw ConditioningError("lifted mass matrix is not SPD on cell " + std::to_string(cell));
  {
    Eigen::SelfAdjointEigenSolver<Matrix> es(op.mass, Eigen::EigenvaluesOnly);
    double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
    op.mass_condition = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  }

  const auto& loop = mesh.cell(cell);
  const auto& edges = mesh.cell_edges(cell);
  int m = static_cast<int>(loop.size());
  DofMap map(mesh, k);
  int n_loc = nk0 + m * (map.vb_dim() + map.vn_dim());

  int dimj = basis.dimension();
  op.lift_rhs = Matrix::Zero(dimj, n_loc);
  // interior block: (psi_m, Delta phi_i) via the exact Laplacian expansion
  Matrix lap = basis.laplacian_coefficients();
  op.lift_rhs.leftCols(nk0) = (lap * op.mass).leftCols(nk0);

  op.edge_signs.resize(m);
  int edge_exactness = j + k + 1;
  int col_b = nk0;
  int col_n = nk0 + m * map.vb_dim();
  for (int q = 0; q < m; ++q) {
    int e = edges[q];
    Vector2 n_out = mesh.outward_normal(cell, q);
    double sign = mesh.edge_sign(cell, q);
    if (opts.inject_sign_fault) sign = 1.0;
    op.edge_signs[q] = sign;

    EdgeQuadratureRule quad = edge_quadrature(mesh, e, edge_exactness);
    EdgeBasis eb(mesh, e, k);
    EdgeBasis en(mesh, e, k - 1);
    Matrix chi_b = eb.values(quad.tcoord);
    Matrix chi_n = en.values(quad.tcoord);
    Matrix phi = basis.values(quad.points);
    Matrix dphix, dphiy;
    basis.gradients(quad.points, dphix, dphiy);
    Matrix dphin = dphix * n_out.x() + dphiy * n_out.y();

    op.lift_rhs.middleCols(col_b, map.vb_dim()) -=
        dphin.transpose() * quad.weights.asDiagonal() * chi_b;
    op.lift_rhs.middleCols(col_n, map.vn_dim()) +=
        sign * (phi.transpose() * quad.weights.asDiagonal() * chi_n);
    col_b += map.vb_dim();
    col_n += map.vn_dim();
  }

  Matrix lifted = op.mass_llt_.solve(op.lift_rhs);
  // one refinement pass per column, long double residuals
  for (int c = 0; c < n_loc; ++c) {
    Vector r(dimj);
    for (int i = 0; i < dimj; ++i) {
      long double acc = static_cast<long double>(op.lift_rhs(i, c));
      for (int t = 0; t < dimj; ++t)
        acc -= static_cast<long double>(op.mass(i, t)) * static_cast<long double>(lifted(t, c));
      r[i] = static_cast<double>(acc);
    }
    lifted.col(c) += op.mass_llt_.solve(r);
  }
  op.stiffness = op.lift_rhs.transpose() * lifted;
  op.stiffness = 0.5 * (op.stiffness + op.stiffness.transpose()).eval();

  op.global_dofs = map.cell_dofs(mesh, cell);
  return op;
}

ElementOperators::ElementOperators(const PolyMesh& mesh, int k, int j,
                                   ElementOperatorOptions opts)
    : mesh_(&mesh), k_(k), j_(j), map_(mesh, k) {
  if (k < 2) throw std::invalid_argument("weak Galerkin space requires k >= 2");
  if (j <= k) throw std::invalid_argument("lift degree j must exceed k");
  ops_.resize(mesh.n_cells());
  std::exception_ptr failure;
  std::mutex mtx;
  parallel_for(mesh.n_cells(), [&](int c) {
    try {
      ops_[c] = element_stiffness(mesh, c, k, j, opts);
    } catch (...) {
      std::lock_guard<std::mutex> lock(mtx);
      if (!failure) failure = std::current_exception();
    }
  });
  if (failure) std::rethrow_exception(failure);
}

double ElementOperators::max_mass_condition() const {
  double worst = 0.0;
  for (const auto& op : ops_) worst = std::max(worst, op.mass_condition);
  return worst;
}

Vector ElementOperators::local_coefficients(const WgFunction& v, int cell) const {
  const auto& dofs = ops_[cell].global_dofs;
  Vector local(dofs.size());
  for (size_t i = 0; i < dofs.size(); ++i) local[i] = v.coeffs[dofs[i]];
  return local;
}

Vector interpolate_local(const ElementOperators& ops, int cell, const ScalarField& u,
                         const VectorField& grad_u) {
  const PolyMesh& mesh = ops.mesh();
  const DofMap& map = ops.dofmap();
  int k = ops.k();
  const auto& cedges = mesh.cell_edges(cell);
  int m = static_cast<int>(cedges.size());
  Vector local(ops[cell].n_local());
  local.head(map.cell_dim()) = project_onto_cell(u, mesh, cell, k);
  for (int q = 0; q < m; ++q)
    local.segment(map.cell_dim() + q * map.vb_dim(), map.vb_dim()) =
        project_onto_edge(u, mesh, cedges[q], k);
  for (int q = 0; q < m; ++q) {
    const Vector2 ne = mesh.edge(cedges[q]).normal;
    auto dn = [&](const Vector2& p) { return grad_u(p).dot(ne); };
    local.segment(map.cell_dim() + m * map.vb_dim() + q * map.vn_dim(), map.vn_dim()) =
        project_onto_edge(dn, mesh, cedges[q], k - 1);
  }
  return local;
}

double commuting_identity_residual(const ElementOperators& ops, int cell, const ScalarField& u,
                                   const VectorField& grad_u, const ScalarField& lap_u) {
  const PolyMesh& mesh = ops.mesh();
  const ElementOperator& op = ops[cell];
  int j = ops.j();
  CellBasis basis(mesh, cell, j);

  Vector lift_coeffs = op.lift(interpolate_local(ops, cell, u, grad_u));

  QuadratureRule quad = cell_quadrature(mesh, cell, std::max(2 * j + 4, 13));
  Matrix phi = basis.values(quad.points);
  Vector lv(quad.size());
  for (int p = 0; p < quad.size(); ++p) lv[p] = lap_u(quad.points.row(p).transpose());
  Vector proj_coeffs = op.solve_mass(phi.transpose() * quad.weights.cwiseProduct(lv));

  Vector d = lift_coeffs - proj_coeffs;
  double norm2 = d.dot(op.mass * d);
  return std::sqrt(std::max(0.0, norm2));
}

} // namespace sfwg
