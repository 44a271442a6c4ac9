// Global assembly of (D_w u_h, D_w v)_Th = (f, v_0), essential boundary
// conditions u_b = Q_b g and u_n (n_e . n) = Q_n phi, symmetric constraint
// elimination, and optional static condensation of cell-interior DOFs.
#pragma once

#include "sfwg/dofmap.hpp"
#include "sfwg/element_op.hpp"
#include "sfwg/types.hpp"

#include <Eigen/SparseCore>
#include <vector>

namespace sfwg {

struct LinearSystem {
  Eigen::SparseMatrix<double> matrix; // full symmetric operator
  Vector rhs;
  DofMap map;

  // filled by apply_boundary
  bool reduced = false;
  std::vector<char> constrained;
  Vector constrained_values;
  Eigen::SparseMatrix<double> reduced_matrix;
  Vector reduced_rhs;
  std::vector<int> free_dofs; // reduced index -> global dof
};

/// Assembles A = sum_T scatter(K_T) and the load b_i = (f, psi_i)_T on
/// interior DOFs (zero on edge DOFs).
LinearSystem assemble(const ElementOperators& ops, const ScalarField& f);

/// Sets boundary v_b blocks to Q_b g, boundary v_n blocks to
/// (n_e . n) Q_n phi_n with n the outward domain normal, folds constrained
/// columns into the right-hand side and forms the reduced SPD system.
LinearSystem apply_boundary(LinearSystem system, const PolyMesh& mesh, const ScalarField& g,
                            const ScalarField& phi_n);

/// Expands a reduced solution over the system's own index space
/// (constrained entries carry their boundary values).
Vector expand_in_system_space(const LinearSystem& system, const Vector& reduced_solution);

/// Expands a reduced solution to the full coefficient vector (constrained
/// DOFs carry their boundary values).
WgFunction expand_solution(const LinearSystem& system, const Vector& reduced_solution);

/// Static condensation: the cell-interior blocks are eliminated per cell by
/// a Schur complement before the global solve; recover() restores them.
class CondensedSystem {
public:
  CondensedSystem(const ElementOperators& ops, const ScalarField& f);

  /// Reduced edge-DOF system with boundary conditions applied.
  LinearSystem edge_system(const PolyMesh& mesh, const ScalarField& g,
                           const ScalarField& phi_n) const;

  /// Recovers interior coefficients given the solved edge coefficients.
  WgFunction recover(const Vector& edge_coeffs) const;

private:
  const ElementOperators* ops_;
  DofMap map_;
  std::vector<Matrix> interior_solve_coupling_; // K_ii^{-1} K_ie per cell
  std::vector<Vector> interior_solve_load_;     // K_ii^{-1} b_i per cell
  Eigen::SparseMatrix<double> schur_;
  Vector schur_rhs_;
};

} // namespace sfwg
