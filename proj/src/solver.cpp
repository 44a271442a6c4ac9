#include "sfwg/solver.hpp"

#include "sfwg/exceptions.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>

namespace sfwg {

void SolverConfig::validate() const {
  if (!(cg_tolerance > 0.0 && cg_tolerance < 1.0))
    throw ConfigError("cg tolerance must lie in (0, 1)");
  if (cg_max_iterations < 1) throw ConfigError("cg max iterations must be >= 1");
}

Vector solve_reduced(const LinearSystem& sys, const SolverConfig& config) {
  config.validate();
  if (!sys.reduced)
    throw std::invalid_argument("solve: apply_boundary must be called before solving");
  const Eigen::SparseMatrix<double>& a = sys.reduced_matrix;
  const Vector& b = sys.reduced_rhs;
  if (b.size() == 0) return Vector();

  if (config.method == SolverConfig::Method::DirectCholesky) {
    Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(a);
    if (llt.info() != Eigen::Success)
      throw NotSpdError("sparse Cholesky factorization failed: reduced matrix is not SPD");
    Vector x = llt.solve(b);
    // refinement with extended-precision residuals; the ill-scaled monomial
    // Gram blocks push kappa(A) high enough that plain double residuals
    // leave visible noise in the energy of discrete differences
    for (int pass = 0; pass < 2; ++pass) {
      int n = static_cast<int>(b.size());
      std::vector<long double> acc(n);
      for (int i = 0; i < n; ++i) acc[i] = static_cast<long double>(b[i]);
      for (int col = 0; col < a.outerSize(); ++col)
        for (Eigen::SparseMatrix<double>::InnerIterator it(a, col); it; ++it)
          acc[it.row()] -= static_cast<long double>(it.value()) *
                           static_cast<long double>(x[it.col()]);
      Vector r(n);
      for (int i = 0; i < n; ++i) r[i] = static_cast<double>(acc[i]);
      x += llt.solve(r);
    }
    double bnorm = b.norm();
    double resid = (a * x - b).norm();
    double rel = bnorm > 0.0 ? resid / bnorm : resid;
    if (rel > 1e-10)
      throw NotSpdError("direct solve residual " + std::to_string(rel) +
                        " exceeds 1e-10; assembled system is suspect");
    return x;
  }

  if (config.preconditioner == SolverConfig::Preconditioner::Jacobi) {
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                             Eigen::DiagonalPreconditioner<double>>
        cg(a);
    cg.setTolerance(config.cg_tolerance);
    cg.setMaxIterations(config.cg_max_iterations);
    Vector x = cg.solve(b);
    if (cg.info() != Eigen::Success)
      throw IterativeFailure("conjugate gradients did not converge", cg.error());
    return x;
  }
  Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                           Eigen::IdentityPreconditioner>
      cg(a);
  cg.setTolerance(config.cg_tolerance);
  cg.setMaxIterations(config.cg_max_iterations);
  Vector x = cg.solve(b);
  if (cg.info() != Eigen::Success)
    throw IterativeFailure("conjugate gradients did not converge", cg.error());
  return x;
}

WgFunction solve(const LinearSystem& sys, const SolverConfig& config) {
  return expand_solution(sys, solve_reduced(sys, config));
}

} // namespace sfwg
