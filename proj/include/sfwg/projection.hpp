// Local L2 projections: Q_0 onto P_k(T), Q_b onto P_k(e), Q_n onto
// P_{k-1}(e), the lifted projection onto P_j(T), and the global interpolant
// Q_h u = {Q_0 u, Q_b u, Q_n(grad u . n_e) n_e}.
#pragma once

#include "sfwg/dofmap.hpp"
#include "sfwg/mesh.hpp"
#include "sfwg/types.hpp"

namespace sfwg {

/// Gram matrix of the scaled monomial basis of degree `degree` on a cell.
/// Quadrature is exact for degree 2*degree unless a higher exactness is
/// requested.
Matrix cell_mass_matrix(const PolyMesh& mesh, int cell, int degree, int exactness = -1);

/// L2 projection of f onto P_degree(T). For non-polynomial data the default
/// quadrature exactness is 2*degree + 4.
Vector project_onto_cell(const ScalarField& f, const PolyMesh& mesh, int cell, int degree,
                         int exactness = -1);

/// L2 projection of f onto P_degree(e).
Vector project_onto_edge(const ScalarField& f, const PolyMesh& mesh, int edge, int degree,
                         int exactness = -1);

/// Q_h u: projects u into the interior blocks, its trace into the v_b
/// blocks, and grad u . n_e (the stored edge normal) into the v_n blocks.
WgFunction interpolate(const PolyMesh& mesh, int k, const ScalarField& u,
                       const VectorField& grad_u);

/// Solves the SPD system G x = rhs by dense Cholesky with one residual
/// refinement pass in extended precision; shared by all projection paths.
Vector solve_spd(const Matrix& gram, const Vector& rhs);

} // namespace sfwg
