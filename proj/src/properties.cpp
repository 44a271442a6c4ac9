#include "sfwg/properties.hpp"

#include "sfwg/assembly.hpp"
#include "sfwg/norms.hpp"
#include "sfwg/projection.hpp"
#include "sfwg/solver.hpp"

#include <Eigen/SparseCholesky>

#include <cmath>
#include <random>
#include <sstream>

namespace sfwg {

int default_lift_degree(GridKind kind, int k) {
  return kind == GridKind::UniformTriangle ? k + 2 : k + 3;
}

namespace {

const char* family_name(GridKind kind) {
  return kind == GridKind::UniformTriangle ? "triangle" : "pentagon";
}

// Random polynomial of degree <= k in a cell's scaled monomial frame.
struct CellPolynomial {
  Vector2 center;
  double scale = 1.0;
  std::vector<std::pair<int, int>> powers;
  Vector coeffs;

  double value(const Vector2& p) const {
    double xi = (p.x() - center.x()) / scale, eta = (p.y() - center.y()) / scale;
    double s = 0.0;
    for (size_t i = 0; i < powers.size(); ++i)
      s += coeffs[i] * std::pow(xi, powers[i].first) * std::pow(eta, powers[i].second);
    return s;
  }
  Vector2 gradient(const Vector2& p) const {
    double xi = (p.x() - center.x()) / scale, eta = (p.y() - center.y()) / scale;
    Vector2 g(0.0, 0.0);
    for (size_t i = 0; i < powers.size(); ++i) {
      auto [a, b] = powers[i];
      if (a > 0) g.x() += coeffs[i] * a * std::pow(xi, a - 1) * std::pow(eta, b) / scale;
      if (b > 0) g.y() += coeffs[i] * b * std::pow(xi, a) * std::pow(eta, b - 1) / scale;
    }
    return g;
  }
  double laplacian(const Vector2& p) const {
    double xi = (p.x() - center.x()) / scale, eta = (p.y() - center.y()) / scale;
    double s = 0.0;
    for (size_t i = 0; i < powers.size(); ++i) {
      auto [a, b] = powers[i];
      if (a >= 2) s += coeffs[i] * a * (a - 1) * std::pow(xi, a - 2) * std::pow(eta, b);
      if (b >= 2) s += coeffs[i] * b * (b - 1) * std::pow(xi, a) * std::pow(eta, b - 2);
    }
    return s / (scale * scale);
  }
};

SuiteResult commuting_suite(const PropertyOptions& opts) {
  SuiteResult res;
  res.name = "commuting_identity";
  double worst = 0.0;
  std::ostringstream detail;
  for (GridKind kind : opts.families) {
    for (int k : opts.degrees) {
      GridFamily fam{kind, opts.commuting_level, opts.alpha};
      PolyMesh mesh = generate(fam);
      ElementOperators ops(mesh, k, default_lift_degree(kind, k),
                           {opts.inject_sign_fault});
      std::mt19937_64 rng(0x5f3759dfull + k + 17 * static_cast<int>(kind));
      std::uniform_real_distribution<double> unif(-1.0, 1.0);
      for (int c = 0; c < mesh.n_cells(); ++c) {
        CellPolynomial poly;
        poly.center = mesh.cell_centroid(c);
        poly.scale = mesh.cell_diameter(c);
        CellBasis basis(mesh, c, k);
        poly.powers = basis.powers();
        poly.coeffs.resize(basis.dimension());
        for (int t = 0; t < opts.commuting_polys_per_cell; ++t) {
          for (int i = 0; i < poly.coeffs.size(); ++i) poly.coeffs[i] = unif(rng);
          double r = commuting_identity_residual(
              ops, c, [&](const Vector2& p) { return poly.value(p); },
              [&](const Vector2& p) { return poly.gradient(p); },
              [&](const Vector2& p) { return poly.laplacian(p); });
          worst = std::max(worst, r);
        }
      }
    }
  }
  res.passed = worst <= opts.commuting_tolerance;
  detail << "max residual " << worst << " (tolerance " << opts.commuting_tolerance << ")";
  res.detail = detail.str();
  return res;
}

SuiteResult norm_equivalence_suite(const PropertyOptions& opts) {
  SuiteResult res;
  res.name = "norm_equivalence";
  res.passed = true;
  std::ostringstream detail;
  for (GridKind kind : opts.families) {
    for (int k : opts.degrees) {
      int j = opts.explore_j ? *opts.explore_j : default_lift_degree(kind, k);
      double level1_min = 0.0;
      for (int level = 1; level <= opts.norm_equivalence_max_level; ++level) {
        PolyMesh mesh = generate({kind, level, opts.alpha});
        ElementOperators ops(mesh, k, j, {opts.inject_sign_fault});
        std::uint64_t seed = 0x9e3779b9ull ^ (static_cast<std::uint64_t>(k) << 32) ^
                             (static_cast<std::uint64_t>(kind) << 40) ^ level;
        NormEquivalenceResult sweep =
            norm_equivalence_sweep(ops, opts.norm_equivalence_samples, seed);
        detail << family_name(kind) << " k=" << k << " j=" << j << " level=" << level
               << " ratio=[" << sweep.min_ratio << ", " << sweep.max_ratio << "] seed=" << seed
               << "; ";
        if (!std::isfinite(sweep.min_ratio) || !std::isfinite(sweep.max_ratio) ||
            sweep.min_ratio <= 0.0)
          res.passed = false;
        if (level == 1)
          level1_min = sweep.min_ratio;
        else if (!opts.explore_j && sweep.min_ratio < 0.7 * level1_min)
          res.passed = false;
      }
    }
  }
  if (opts.explore_j) res.name = "norm_equivalence_exploratory";
  res.detail = detail.str();
  return res;
}

SuiteResult spd_suite(const PropertyOptions& opts) {
  SuiteResult res;
  res.name = "spd_wellposedness";
  res.passed = true;
  double worst_condition = 0.0;
  std::ostringstream detail;
  ScalarField zero = [](const Vector2&) { return 0.0; };
  for (GridKind kind : opts.families) {
    for (int k : opts.degrees) {
      for (int level = 1; level <= opts.spd_max_level; ++level) {
        PolyMesh mesh = generate({kind, level, opts.alpha});
        ElementOperators ops(mesh, k, default_lift_degree(kind, k),
                             {opts.inject_sign_fault});
        worst_condition = std::max(worst_condition, ops.max_mass_condition());
        LinearSystem sys = apply_boundary(assemble(ops, zero), mesh, zero, zero);
        Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(sys.reduced_matrix);
        if (llt.info() != Eigen::Success) {
          res.passed = false;
          detail << family_name(kind) << " k=" << k << " level=" << level
                 << ": Cholesky failed; ";
        }
      }
    }
  }
  if (res.passed) detail << "Cholesky positive on all tested meshes";
  detail << "; max lifted-mass condition " << worst_condition;
  res.detail = detail.str();
  return res;
}

SuiteResult kernel_suite(const PropertyOptions& opts) {
  SuiteResult res;
  res.name = "kernel_linears";
  res.passed = true;
  std::ostringstream detail;
  ScalarField zero = [](const Vector2&) { return 0.0; };
  const std::vector<std::pair<ScalarField, VectorField>> linears = {
      {[](const Vector2&) { return 1.0; }, [](const Vector2&) { return Vector2(0, 0); }},
      {[](const Vector2& p) { return p.x(); }, [](const Vector2&) { return Vector2(1, 0); }},
      {[](const Vector2& p) { return p.y(); }, [](const Vector2&) { return Vector2(0, 1); }}};
  for (GridKind kind : opts.families) {
    for (int k : opts.degrees) {
      PolyMesh mesh = generate({kind, 2, opts.alpha});
      ElementOperators ops(mesh, k, default_lift_degree(kind, k), {opts.inject_sign_fault});
      LinearSystem sys = assemble(ops, zero);
      double anorm = 0.0; // infinity norm
      Vector rowsum = Vector::Zero(sys.rhs.size());
      for (int col = 0; col < sys.matrix.outerSize(); ++col)
        for (Eigen::SparseMatrix<double>::InnerIterator it(sys.matrix, col); it; ++it)
          rowsum[it.row()] += std::abs(it.value());
      anorm = rowsum.maxCoeff();
      for (const auto& [u, gu] : linears) {
        WgFunction v = interpolate(mesh, k, u, gu);
        double resid = (sys.matrix * v.coeffs).norm();
        double bound = 1e-10 * anorm * v.coeffs.norm();
        if (resid > bound) {
          res.passed = false;
          detail << family_name(kind) << " k=" << k << ": |A v| = " << resid << " > " << bound
                 << "; ";
        }
      }
    }
  }
  if (res.passed) detail << "embedded linear polynomials annihilated";
  res.detail = detail.str();
  return res;
}

} // namespace

std::vector<SuiteResult> run_property_suites(const PropertyOptions& opts) {
  if (opts.explore_j) return {norm_equivalence_suite(opts)};
  return {commuting_suite(opts), norm_equivalence_suite(opts), spd_suite(opts),
          kernel_suite(opts)};
}

} // namespace sfwg
