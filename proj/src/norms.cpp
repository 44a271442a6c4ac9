#include "sfwg/norms.hpp"

#include "sfwg/exceptions.hpp"
#include "sfwg/parallel.hpp"
#include "sfwg/projection.hpp"
#include "sfwg/quadrature.hpp"

#include <cmath>
#include <random>

namespace sfwg {

double energy_norm(const WgFunction& v, const ElementOperators& ops) {
  const PolyMesh& mesh = ops.mesh();
  std::vector<double> parts(mesh.n_cells());
  parallel_for(mesh.n_cells(), [&](int c) {
    Vector local = ops.local_coefficients(v, c);
    parts[c] = local.dot(ops[c].stiffness * local);
  });
  double total = 0.0;
  for (double p : parts) total += p;
  return std::sqrt(std::max(0.0, total));
}

namespace {

double h2_cell_contribution(const WgFunction& v, const ElementOperators& ops, int c) {
  const PolyMesh& mesh = ops.mesh();
  const DofMap& map = v.map;
  int k = map.k;
  int nk0 = map.cell_dim();
  CellBasis basis(mesh, c, k);
  Vector c0 = v.coeffs.segment(map.cell_offset(c), nk0);

  // || Delta v_0 ||_T^2 via the exact Laplacian expansion and the P_k Gram
  // block of the cached lifted mass matrix
  Matrix lap = basis.laplacian_coefficients();
  Vector clap = lap.transpose() * c0;
  double total = clap.dot(ops[c].mass.topLeftCorner(nk0, nk0) * clap);

  double hT = mesh.cell_diameter(c);
  double w_trace = 1.0 / (hT * hT * hT);
  double w_normal = 1.0 / hT;
  const auto& cedges = mesh.cell_edges(c);
  int m = static_cast<int>(cedges.size());
  for (int q = 0; q < m; ++q) {
    int e = cedges[q];
    EdgeQuadratureRule quad = edge_quadrature(mesh, e, 2 * k + 2);
    Matrix phi = basis.values(quad.points);
    Matrix dphix, dphiy;
    basis.gradients(quad.points, dphix, dphiy);
    Vector2 n_out = mesh.outward_normal(c, q);
    double sign = ops[c].edge_signs[q];

    EdgeBasis eb(mesh, e, k);
    EdgeBasis en(mesh, e, k - 1);
    Vector vb = eb.values(quad.tcoord) * v.coeffs.segment(map.vb_offset(e), map.vb_dim());
    Vector vn = en.values(quad.tcoord) * v.coeffs.segment(map.vn_offset(e), map.vn_dim());

    Vector v0 = phi * c0;
    Vector dv0n = (dphix * n_out.x() + dphiy * n_out.y()) * c0;
    total += w_trace * quad.weights.dot((v0 - vb).cwiseAbs2());
    total += w_normal * quad.weights.dot((dv0n - sign * vn).cwiseAbs2());
  }
  return total;
}

} // namespace

double discrete_h2_norm(const WgFunction& v, const ElementOperators& ops) {
  const PolyMesh& mesh = ops.mesh();
  std::vector<double> parts(mesh.n_cells());
  parallel_for(mesh.n_cells(), [&](int c) { parts[c] = h2_cell_contribution(v, ops, c); });
  double total = 0.0;
  for (double p : parts) total += p;
  return std::sqrt(std::max(0.0, total));
}

ErrorReport error_report(const WgFunction& u_h, const SolutionRecord& exact,
                         const ElementOperators& ops) {
  if (!exact.value || !exact.gradient || !exact.laplacian)
    throw ConfigError("solution record '" + exact.name +
                      "' lacks value, gradient or Laplacian data");
  const PolyMesh& mesh = ops.mesh();
  const DofMap& map = ops.dofmap();
  int k = ops.k(), j = ops.j();
  int nk0 = map.cell_dim();

  WgFunction q_h = interpolate(mesh, k, exact.value, exact.gradient);
  WgFunction diff(map);
  diff.coeffs = u_h.coeffs - q_h.coeffs;

  struct CellPart {
    double l2 = 0, h1 = 0, energy = 0, l2q = 0;
  };
  std::vector<CellPart> parts(mesh.n_cells());
  int exactness = std::max(2 * j + 4, 2 * k + 6);

  parallel_for(mesh.n_cells(), [&](int c) {
    CellPart part;
    QuadratureRule quad = cell_quadrature(mesh, c, exactness);
    CellBasis basis(mesh, c, j);
    Matrix phi = basis.values(quad.points);
    Matrix dphix, dphiy;
    basis.gradients(quad.points, dphix, dphiy);

    Vector c0 = u_h.coeffs.segment(map.cell_offset(c), nk0);
    Vector uv(quad.size()), lv(quad.size());
    Vector gx(quad.size()), gy(quad.size());
    for (int p = 0; p < quad.size(); ++p) {
      Vector2 x = quad.points.row(p).transpose();
      uv[p] = exact.value(x);
      lv[p] = exact.laplacian(x);
      Vector2 gr = exact.gradient(x);
      gx[p] = gr.x();
      gy[p] = gr.y();
    }

    Vector u0 = phi.leftCols(nk0) * c0;
    part.l2 = quad.weights.dot((u0 - uv).cwiseAbs2());
    Vector du0x = dphix.leftCols(nk0) * c0;
    Vector du0y = dphiy.leftCols(nk0) * c0;
    part.h1 = quad.weights.dot((du0x - gx).cwiseAbs2() + (du0y - gy).cwiseAbs2());

    // ||| . ||| cell term with D_w u realized as Pi_j(Delta u)
    const ElementOperator& op = ops[c];
    Vector lift = op.lift(ops.local_coefficients(u_h, c));
    Vector proj = op.solve_mass(phi.transpose() * quad.weights.cwiseProduct(lv));
    Vector d = lift - proj;
    part.energy = d.dot(op.mass * d);

    Vector dq = diff.coeffs.segment(map.cell_offset(c), nk0);
    part.l2q = dq.dot(op.mass.topLeftCorner(nk0, nk0) * dq);
    parts[c] = part;
  });

  ErrorReport rep;
  rep.h = mesh.mesh_size();
  rep.dofs = map.size();
  if (mesh.provenance) rep.level = mesh.provenance->level;
  double l2 = 0, h1 = 0, en = 0, l2q = 0;
  for (const auto& p : parts) {
    l2 += p.l2;
    h1 += p.h1;
    en += p.energy;
    l2q += p.l2q;
  }
  rep.l2 = std::sqrt(std::max(0.0, l2));
  rep.h1 = std::sqrt(std::max(0.0, h1));
  rep.energy = std::sqrt(std::max(0.0, en));
  rep.l2_q0 = std::sqrt(std::max(0.0, l2q));
  rep.energy_qh = energy_norm(diff, ops);
  rep.h2h = discrete_h2_norm(diff, ops);
  return rep;
}

namespace {

std::optional<double> rate_of(double prev, double cur) {
  if (prev <= 0.0 || cur <= 0.0) return std::nullopt;
  return std::log2(prev / cur);
}

} // namespace

ConvergenceReport convergence_rates(const std::vector<ErrorReport>& reports) {
  ConvergenceReport out;
  out.rows.reserve(reports.size());
  for (size_t i = 0; i < reports.size(); ++i) {
    ConvergenceRow row;
    row.report = reports[i];
    if (i > 0) {
      row.rate_l2 = rate_of(reports[i - 1].l2, reports[i].l2);
      row.rate_h1 = rate_of(reports[i - 1].h1, reports[i].h1);
      row.rate_energy = rate_of(reports[i - 1].energy, reports[i].energy);
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

double log_log_slope(const std::vector<double>& hs, const std::vector<double>& errors) {
  if (hs.size() != errors.size() || hs.size() < 2)
    throw std::invalid_argument("log_log_slope needs at least two samples");
  double mx = 0, my = 0;
  int n = static_cast<int>(hs.size());
  std::vector<double> lx(n), ly(n);
  for (int i = 0; i < n; ++i) {
    lx[i] = std::log(hs[i]);
    ly[i] = std::log(errors[i]);
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double num = 0, den = 0;
  for (int i = 0; i < n; ++i) {
    num += (lx[i] - mx) * (ly[i] - my);
    den += (lx[i] - mx) * (lx[i] - mx);
  }
  return num / den;
}

NormEquivalenceResult norm_equivalence_sweep(const ElementOperators& ops, int n_samples,
                                             std::uint64_t seed) {
  const DofMap& map = ops.dofmap();
  NormEquivalenceResult res;
  res.samples = n_samples;
  res.seed = seed;
  res.min_ratio = std::numeric_limits<double>::infinity();
  res.max_ratio = 0.0;

  std::mt19937_64 rng(seed);
  auto gaussian = [&rng]() {
    // Box-Muller on explicit uniforms, reproducible across standard libraries
    double u1 = (rng() >> 11) * 0x1.0p-53 + 0x1.0p-54;
    double u2 = (rng() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  };

  for (int s = 0; s < n_samples; ++s) {
    WgFunction v(map);
    for (int i = 0; i < map.size(); ++i) v.coeffs[i] = gaussian();
    double num = energy_norm(v, ops);
    double den = discrete_h2_norm(v, ops);
    if (den == 0.0) continue;
    double ratio = num / den;
    res.min_ratio = std::min(res.min_ratio, ratio);
    res.max_ratio = std::max(res.max_ratio, ratio);
  }
  return res;
}

} // namespace sfwg
