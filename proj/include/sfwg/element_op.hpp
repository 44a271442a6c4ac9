// Per-cell weak Laplacian machinery: the lifting into P_j(T) defined by
//   (D_w v, phi)_T = (v_0, Delta phi)_T - <v_b, grad phi . n>_dT
//                    + <v_n (n_e . n), phi>_dT,
// its matrix form M_j c = B v, and the element stiffness K = B^T M_j^{-1} B.
#pragma once

#include "sfwg/basis.hpp"
#include "sfwg/dofmap.hpp"
#include "sfwg/mesh.hpp"
#include "sfwg/types.hpp"

#include <Eigen/Cholesky>
#include <memory>
#include <vector>

namespace sfwg {

struct ElementOperatorOptions {
  /// Test hook: forces every n_e . n sign to +1, which is wrong on one side
  /// of each interior edge.
  bool inject_sign_fault = false;
};

struct ElementOperator {
  int cell = -1;
  int k = 2, j = 4;
  Matrix mass;               // M_j, lifted-space Gram matrix
  Matrix lift_rhs;           // B, dim P_j x n_loc
  Matrix stiffness;          // K = B^T M_j^{-1} B, symmetric PSD
  std::vector<int> global_dofs;
  std::vector<double> edge_signs; // n_e . n per local side
  double mass_condition = 0.0;

  int n_local() const { return static_cast<int>(lift_rhs.cols()); }

  /// Coefficients of D_w v in P_j(T) for a local coefficient vector.
  Vector lift(const Vector& v_local) const;

  /// Solve M_j x = rhs through the cached Cholesky factor (one extended
  /// precision refinement pass).
  Vector solve_mass(const Vector& rhs) const;

private:
  friend ElementOperator element_stiffness(const PolyMesh&, int, int, int,
                                           ElementOperatorOptions);
  Eigen::LLT<Matrix> mass_llt_;
};

/// Builds and caches one ElementOperator per cell (cells are independent and
/// built in parallel; the cache is immutable afterwards).
class ElementOperators {
public:
  ElementOperators(const PolyMesh& mesh, int k, int j, ElementOperatorOptions opts = {});

  const ElementOperator& operator[](int cell) const { return ops_[cell]; }
  int size() const { return static_cast<int>(ops_.size()); }
  int k() const { return k_; }
  int j() const { return j_; }
  const PolyMesh& mesh() const { return *mesh_; }
  const DofMap& dofmap() const { return map_; }

  /// Largest lifted-mass condition number over all cells.
  double max_mass_condition() const;

  /// Gather of the local coefficient block of a global function.
  Vector local_coefficients(const WgFunction& v, int cell) const;

private:
  const PolyMesh* mesh_;
  int k_, j_;
  DofMap map_;
  std::vector<ElementOperator> ops_;
};

/// Builds a single cell operator (used by ElementOperators and tests).
ElementOperator element_stiffness(const PolyMesh& mesh, int cell, int k, int j,
                                  ElementOperatorOptions opts = {});

/// Local coefficients of the interpolant Q_h u on one cell, in the
/// documented local DOF order.
Vector interpolate_local(const ElementOperators& ops, int cell, const ScalarField& u,
                         const VectorField& grad_u);

/// || D_w(embed u) - Pi_j(Delta u) ||_{L2(T)} on one cell, where the
/// embedding uses the exact trace of u and of grad u . n_e. Zero (to
/// round-off) whenever u is a polynomial of degree <= k.
double commuting_identity_residual(const ElementOperators& ops, int cell, const ScalarField& u,
                                   const VectorField& grad_u, const ScalarField& lap_u);

} // namespace sfwg
