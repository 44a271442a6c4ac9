// Scaled monomial bases: ((x-x_T)/h_T)^a ((y-y_T)/h_T)^b on cells, ordered by
// total degree, and powers of the scaled arc-length coordinate on edges.
#pragma once

#include "sfwg/mesh.hpp"
#include "sfwg/types.hpp"

#include <utility>
#include <vector>

namespace sfwg {

/// dim P_d in two variables.
constexpr int poly_space_dim(int degree) { return (degree + 1) * (degree + 2) / 2; }

class CellBasis {
public:
  CellBasis(const PolyMesh& mesh, int cell, int degree);

  int degree() const { return degree_; }
  int dimension() const { return static_cast<int>(powers_.size()); }
  const Vector2& center() const { return center_; }
  double scale() const { return scale_; }
  const std::vector<std::pair<int, int>>& powers() const { return powers_; }

  /// phi_i at each point: (npts x dim).
  Matrix values(const PointList& pts) const;
  /// Partial derivatives at each point, (npts x dim) each.
  void gradients(const PointList& pts, Matrix& dx, Matrix& dy) const;

  /// Exact expansion of the Laplacian in the same basis: row i holds the
  /// coefficients of Delta phi_i, so functions map as c |-> L^T c.
  Matrix laplacian_coefficients() const;

private:
  int degree_;
  Vector2 center_;
  double scale_;
  std::vector<std::pair<int, int>> powers_;
};

class EdgeBasis {
public:
  EdgeBasis(const PolyMesh& mesh, int edge, int degree);

  int degree() const { return degree_; }
  int dimension() const { return degree_ + 1; }

  /// t^a for each scaled coordinate in tcoord: (npts x dim).
  Matrix values(const Vector& tcoord) const;
  /// Scaled coordinate of physical points lying on the edge.
  Vector tcoord_of(const PointList& pts) const;

  /// Closed-form edge mass matrix: |e| [a+b even] / (a+b+1).
  Matrix mass() const;

private:
  int degree_;
  Vector2 mid_;
  Vector2 tangent_; // unit, stored orientation
  double length_;
};

} // namespace sfwg
