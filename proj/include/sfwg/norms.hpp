// Error norms and norm diagnostics: the energy norm induced by the
// stabilizer-free form, the discrete H2 norm, the error-report columns of
// the convergence tables, observed rates, and the norm-equivalence sweep.
#pragma once

#include "sfwg/element_op.hpp"
#include "sfwg/solutions.hpp"
#include "sfwg/types.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace sfwg {

/// ||| v ||| = ( sum_T || D_w v ||^2_T )^{1/2} = ( sum_T v_T' K_T v_T )^{1/2}.
double energy_norm(const WgFunction& v, const ElementOperators& ops);

/// || v ||_{2,h}: cell Laplacian plus h_T^{-3}-weighted trace mismatch and
/// h_T^{-1}-weighted normal-derivative mismatch, both cell sides of every
/// interior edge contributing.
double discrete_h2_norm(const WgFunction& v, const ElementOperators& ops);

struct ErrorReport {
  int level = 0;
  double h = 0.0;
  int dofs = 0;
  double l2 = 0.0;        // || u_0 - u ||_0
  double h1 = 0.0;        // broken H1 seminorm of u_0 - u
  double energy = 0.0;    // ||| u_h - u ||| with D_w u realized as Pi_j(Delta u)
  double energy_qh = 0.0; // ||| u_h - Q_h u ||| (discrete comparand)
  double h2h = 0.0;       // || Q_h u - u_h ||_{2,h}
  double l2_q0 = 0.0;     // || Q_0 u - u_0 ||_0
};

/// Computes every error column against a registered exact solution.
ErrorReport error_report(const WgFunction& u_h, const SolutionRecord& exact,
                         const ElementOperators& ops);

struct ConvergenceRow {
  ErrorReport report;
  // log2(e_prev / e_this); empty on the first row or when an error vanishes
  std::optional<double> rate_l2, rate_h1, rate_energy;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
};

/// Observed rates between consecutive reports (h must halve between rows).
ConvergenceReport convergence_rates(const std::vector<ErrorReport>& reports);

/// Least-squares slope of log(error) against log(h) over the given reports.
double log_log_slope(const std::vector<double>& hs, const std::vector<double>& errors);

struct NormEquivalenceResult {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
};

/// Ratio ||| v ||| / || v ||_{2,h} over seeded random coefficient vectors.
NormEquivalenceResult norm_equivalence_sweep(const ElementOperators& ops, int n_samples,
                                             std::uint64_t seed);

} // namespace sfwg
