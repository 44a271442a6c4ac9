// Sparse SPD solves of the reduced system: direct Cholesky (default) or
// conjugate gradients with an optional Jacobi preconditioner.
#pragma once

#include "sfwg/assembly.hpp"
#include "sfwg/types.hpp"

namespace sfwg {

struct SolverConfig {
  enum class Method { DirectCholesky, ConjugateGradient };
  enum class Preconditioner { None, Jacobi };

  Method method = Method::DirectCholesky;
  double cg_tolerance = 1e-12; // relative residual
  int cg_max_iterations = 20000;
  Preconditioner preconditioner = Preconditioner::Jacobi;

  void validate() const;
};

/// Solves the reduced system and returns the free-DOF coefficients in the
/// system's own index space. Direct solves are residual-verified a
/// posteriori (relative residual <= 1e-10).
Vector solve_reduced(const LinearSystem& system, const SolverConfig& config = {});

/// Convenience wrapper: solve and expand, constrained DOFs carrying their
/// boundary values.
WgFunction solve(const LinearSystem& system, const SolverConfig& config = {});

} // namespace sfwg
