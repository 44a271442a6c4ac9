#include "sfwg/projection.hpp"

#include "sfwg/basis.hpp"
#include "sfwg/exceptions.hpp"
#include "sfwg/quadrature.hpp"

#include <Eigen/Cholesky>

#include <algorithm>

namespace sfwg {

namespace {

// Residual refinement with long double accumulation keeps the forward error
// of ill-conditioned monomial Gram solves near working precision.
void refine_once(const Matrix& gram, const Eigen::LLT<Matrix>& llt, const Vector& rhs, Vector& x) {
  int n = static_cast<int>(rhs.size());
  Vector r(n);
  for (int i = 0; i < n; ++i) {
    long double acc = static_cast<long double>(rhs[i]);
    for (int c = 0; c < n; ++c)
      acc -= static_cast<long double>(gram(i, c)) * static_cast<long double>(x[c]);
    r[i] = static_cast<double>(acc);
  }
  x += llt.solve(r);
}

} // namespace

Vector solve_spd(const Matrix& gram, const Vector& rhs) {
  Eigen::LLT<Matrix> llt(gram);
  if (llt.info() != Eigen::Success)
    throw ConditioningError("dense Cholesky of a local Gram matrix failed");
  Vector x = llt.solve(rhs);
  refine_once(gram, llt, rhs, x);
  return x;
}

Matrix cell_mass_matrix(const PolyMesh& mesh, int cell, int degree, int exactness) {
  if (mesh.cell_area(cell) <= 0.0) throw GeometryError("cell with nonpositive area");
  if (exactness < 2 * degree) exactness = 2 * degree;
  QuadratureRule quad = cell_quadrature(mesh, cell, exactness);
  CellBasis basis(mesh, cell, degree);
  Matrix vals = basis.values(quad.points);
  Matrix mass = vals.transpose() * quad.weights.asDiagonal() * vals;
  return 0.5 * (mass + mass.transpose());
}

Vector project_onto_cell(const ScalarField& f, const PolyMesh& mesh, int cell, int degree,
                         int exactness) {
  if (exactness < 0) exactness = std::max(2 * degree + 4, 13);
  QuadratureRule quad = cell_quadrature(mesh, cell, exactness);
  CellBasis basis(mesh, cell, degree);
  Matrix vals = basis.values(quad.points);
  Vector fv(quad.size());
  for (int p = 0; p < quad.size(); ++p) fv[p] = f(quad.points.row(p).transpose());
  Matrix mass = vals.transpose() * quad.weights.asDiagonal() * vals;
  mass = 0.5 * (mass + mass.transpose());
  Vector rhs = vals.transpose() * quad.weights.cwiseProduct(fv);
  return solve_spd(mass, rhs);
}

Vector project_onto_edge(const ScalarField& f, const PolyMesh& mesh, int edge, int degree,
                         int exactness) {
  if (exactness < 0) exactness = std::max(2 * degree + 4, 13);
  EdgeQuadratureRule quad = edge_quadrature(mesh, edge, exactness);
  EdgeBasis basis(mesh, edge, degree);
  Matrix vals = basis.values(quad.tcoord);
  Vector fv(quad.size());
  for (int p = 0; p < quad.size(); ++p) fv[p] = f(quad.points.row(p).transpose());
  Vector rhs = vals.transpose() * quad.weights.cwiseProduct(fv);
  return solve_spd(basis.mass(), rhs);
}

WgFunction interpolate(const PolyMesh& mesh, int k, const ScalarField& u,
                       const VectorField& grad_u) {
  DofMap map(mesh, k);
  WgFunction v(map);
  for (int c = 0; c < mesh.n_cells(); ++c)
    v.coeffs.segment(map.cell_offset(c), map.cell_dim()) = project_onto_cell(u, mesh, c, k);
  for (int e = 0; e < mesh.n_edges(); ++e) {
    v.coeffs.segment(map.vb_offset(e), map.vb_dim()) = project_onto_edge(u, mesh, e, k);
    const Vector2 ne = mesh.edge(e).normal;
    ScalarField dn = [&](const Vector2& x) { return grad_u(x).dot(ne); };
    v.coeffs.segment(map.vn_offset(e), map.vn_dim()) = project_onto_edge(dn, mesh, e, k - 1);
  }
  return v;
}

} // namespace sfwg
