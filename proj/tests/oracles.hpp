// Test-only oracles, kept independent of the library's quadrature, basis and
// lifting code paths: exact monomial integrals from closed forms, a dense
// least-squares element operator assembled with its own 25-point rule, and a
// Monte-Carlo polygon integrator.
#pragma once

#include "sfwg/mesh.hpp"
#include "sfwg/types.hpp"

namespace oracle {

/// Exact integral of x^a y^b over a triangle (affine map + factorials).
double triangle_monomial_integral(const sfwg::Vector2& v0, const sfwg::Vector2& v1,
                                  const sfwg::Vector2& v2, int a, int b);

/// Exact integral of x^a y^b over a CCW convex polygon (divergence theorem,
/// closed-form segment integrals).
double polygon_monomial_integral(const std::vector<sfwg::Vector2>& loop, int a, int b);

/// Exact integral over a cell of the product of two scaled monomials of the
/// cell's own basis (centroid/diameter scaling), giving the mass matrix
/// without any quadrature.
sfwg::Matrix exact_cell_mass_matrix(const sfwg::PolyMesh& mesh, int cell, int degree);

/// Element operator assembled densely from hardcoded Gauss constants (5x5
/// collapsed rule per fan triangle, 5-point edge rule) and solved by
/// column-pivoted QR. Follows the documented conventions: scaled monomials,
/// local DOF order [v_0 | per-edge v_b | per-edge v_n], stored edge
/// orientation for edge bases, sign n_e . n on the v_n block.
struct DenseElementOracle {
  sfwg::Matrix mass;      // quadrature Gram of P_j(T)
  sfwg::Matrix lift_rhs;  // B
  sfwg::Matrix stiffness; // B^T M^+ B via QR solves

  sfwg::Vector lift(const sfwg::Vector& v_local) const;
};
DenseElementOracle dense_element_oracle(const sfwg::PolyMesh& mesh, int cell, int k, int j);

/// Monte-Carlo mass matrix of the scaled monomial basis on a convex cell.
sfwg::Matrix monte_carlo_mass_matrix(const sfwg::PolyMesh& mesh, int cell, int degree,
                                     long samples, unsigned seed);

} // namespace oracle
