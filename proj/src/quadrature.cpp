#include "sfwg/quadrature.hpp"

#include "sfwg/exceptions.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace sfwg {

void gauss_legendre(int n, Vector& nodes, Vector& weights) {
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Chebyshev initial guess, Newton on P_n
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p0 = 0.0, p1 = 0.0;
    for (int it = 0; it < 100; ++it) {
      p0 = 1.0;
      p1 = x;
      for (int m = 2; m <= n; ++m) {
        double p2 = ((2 * m - 1) * x * p1 - (m - 1) * p0) / m;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    p0 = 1.0;
    p1 = x;
    for (int m = 2; m <= n; ++m) {
      double p2 = ((2 * m - 1) * x * p1 - (m - 1) * p0) / m;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (x * p1 - p0) / (x * x - 1.0);
    nodes[n - 1 - i] = x;
    weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

namespace {

const std::pair<Vector, Vector>& cached_gauss(int n) {
  static std::map<int, std::pair<Vector, Vector>> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) {
    Vector x, w;
    gauss_legendre(n, x, w);
    it = cache.emplace(n, std::make_pair(std::move(x), std::move(w))).first;
  }
  return it->second;
}

// Reference rule on the unit triangle {(0,0),(1,0),(0,1)} via the collapsed
// square map (x, y) = (u(1-w), uw) with Jacobian u; the u-direction carries
// one extra polynomial degree.
QuadratureRule reference_triangle_rule(int exactness) {
  int nu = (exactness + 2) / 2 + 1;
  int nw = (exactness + 1) / 2 + 1;
  const auto& [gu, wu] = cached_gauss(nu);
  const auto& [gw, ww] = cached_gauss(nw);
  QuadratureRule rule;
  rule.exactness = exactness;
  rule.points.resize(nu * nw, 2);
  rule.weights.resize(nu * nw);
  int idx = 0;
  for (int a = 0; a < nu; ++a) {
    double u = 0.5 * (gu[a] + 1.0);
    double cu = 0.5 * wu[a];
    for (int b = 0; b < nw; ++b) {
      double w = 0.5 * (gw[b] + 1.0);
      double cw = 0.5 * ww[b];
      rule.points(idx, 0) = u * (1.0 - w);
      rule.points(idx, 1) = u * w;
      rule.weights[idx] = cu * cw * u;
      ++idx;
    }
  }
  return rule;
}

} // namespace

QuadratureRule triangle_quadrature(const Vector2& v0, const Vector2& v1, const Vector2& v2,
                                   int exactness) {
  QuadratureRule ref = reference_triangle_rule(exactness);
  Eigen::Matrix2d jac;
  jac.col(0) = v1 - v0;
  jac.col(1) = v2 - v0;
  double det = jac(0, 0) * jac(1, 1) - jac(0, 1) * jac(1, 0);
  if (det <= 0.0) throw GeometryError("triangle with nonpositive orientation in quadrature");
  QuadratureRule rule;
  rule.exactness = exactness;
  rule.points = (ref.points * jac.transpose()).rowwise() + v0.transpose();
  rule.weights = ref.weights * det;
  return rule;
}

QuadratureRule cell_quadrature(const PolyMesh& mesh, int cell, int exactness) {
  if (mesh.cell_area(cell) <= 0.0) throw GeometryError("cell with nonpositive area");
  const auto& loop = mesh.cell(cell);
  const Vector2& c = mesh.cell_centroid(cell);
  int m = static_cast<int>(loop.size());
  QuadratureRule ref = reference_triangle_rule(exactness);
  int per = ref.size();
  QuadratureRule rule;
  rule.exactness = exactness;
  rule.points.resize(per * m, 2);
  rule.weights.resize(per * m);
  for (int q = 0; q < m; ++q) {
    QuadratureRule part =
        triangle_quadrature(c, mesh.vertex(loop[q]), mesh.vertex(loop[(q + 1) % m]), exactness);
    rule.points.middleRows(q * per, per) = part.points;
    rule.weights.segment(q * per, per) = part.weights;
  }
  return rule;
}

EdgeQuadratureRule edge_quadrature(const PolyMesh& mesh, int edge, int exactness) {
  int n = exactness / 2 + 1; // 2n-1 >= exactness
  const auto& [gx, gw] = cached_gauss(n);
  const MeshEdge& e = mesh.edge(edge);
  Vector2 pa = mesh.vertex(e.a), pb = mesh.vertex(e.b);
  Vector2 mid = 0.5 * (pa + pb);
  Vector2 half = 0.5 * (pb - pa);
  EdgeQuadratureRule rule;
  rule.exactness = exactness;
  rule.points.resize(n, 2);
  rule.weights.resize(n);
  rule.tcoord = gx;
  for (int i = 0; i < n; ++i) {
    rule.points.row(i) = (mid + gx[i] * half).transpose();
    rule.weights[i] = gw[i] * 0.5 * e.length;
  }
  return rule;
}

} // namespace sfwg
