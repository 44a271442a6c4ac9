// Common scalar/vector aliases used across the library.
#pragma once

#include <Eigen/Core>
#include <functional>

namespace sfwg {

using Vector2 = Eigen::Vector2d;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using PointList = Eigen::Matrix<double, Eigen::Dynamic, 2>;

/// Scalar field evaluable at a point of the plane.
using ScalarField = std::function<double(const Vector2&)>;
/// Vector field (e.g. a gradient) evaluable at a point.
using VectorField = std::function<Vector2(const Vector2&)>;

} // namespace sfwg
