// Quadrature on convex polygonal cells (fan triangulation from the centroid,
// tensor Gauss rules per triangle) and Gauss-Legendre rules on edges.
#pragma once

#include "sfwg/mesh.hpp"
#include "sfwg/types.hpp"

namespace sfwg {

/// Points and weights integrating polynomials up to `exactness` exactly.
struct QuadratureRule {
  PointList points;
  Vector weights;
  int exactness = 0;

  int size() const { return static_cast<int>(weights.size()); }
};

/// Edge rule; `tcoord` holds the scaled arc-length coordinate
/// 2(s - s_mid)/|e| in [-1, 1] of each point, in the edge's stored
/// orientation.
struct EdgeQuadratureRule {
  PointList points;
  Vector weights;
  Vector tcoord;
  int exactness = 0;

  int size() const { return static_cast<int>(weights.size()); }
};

/// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, Vector& nodes, Vector& weights);

/// Rule on the triangle (v0, v1, v2), exact for total degree <= exactness.
QuadratureRule triangle_quadrature(const Vector2& v0, const Vector2& v1, const Vector2& v2,
                                   int exactness);

/// Rule on a convex cell via fan triangulation from the centroid.
QuadratureRule cell_quadrature(const PolyMesh& mesh, int cell, int exactness);

/// Gauss rule along an edge, exact for 1D polynomials of degree <= exactness.
EdgeQuadratureRule edge_quadrature(const PolyMesh& mesh, int edge, int exactness);

} // namespace sfwg
