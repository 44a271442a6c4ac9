// Compiled-in registry of manufactured solutions of Delta^2 u = f on the
// unit square, each with value, gradient, Laplacian and source, plus the
// boundary data derived from them.
#pragma once

#include "sfwg/types.hpp"

#include <string>
#include <vector>

namespace sfwg {

struct SolutionRecord {
  std::string name;
  ScalarField value;
  VectorField gradient;
  ScalarField laplacian;
  ScalarField source; // Delta^2 u
  /// Extended-precision value, used by the finite-difference identity check.
  std::function<long double(long double, long double)> value_ld;
};

/// Built-in solutions: exp_xy, sin_sin, poly2, poly3, poly4.
const std::vector<SolutionRecord>& solution_registry();

/// Lookup by name; throws ConfigError for unknown names.
const SolutionRecord& find_solution(const std::string& name);

/// Spot-checks Delta^2 u = f by a 13-point finite-difference biharmonic
/// stencil at seeded random interior points. Returns the largest deviation
/// relative to the sampled magnitude of f.
double verify_biharmonic_identity(const SolutionRecord& record, int n_points = 10,
                                  double step = 1e-3, unsigned seed = 20240915);

} // namespace sfwg
