#include "sfwg/basis.hpp"

namespace sfwg {

CellBasis::CellBasis(const PolyMesh& mesh, int cell, int degree)
    : degree_(degree), center_(mesh.cell_centroid(cell)), scale_(mesh.cell_diameter(cell)) {
  powers_.reserve(poly_space_dim(degree));
  for (int l = 0; l <= degree; ++l)
    for (int i = 0; i <= l; ++i) powers_.emplace_back(l - i, i);
}

Matrix CellBasis::values(const PointList& pts) const {
  int npts = static_cast<int>(pts.rows());
  int dim = dimension();
  // all powers of xi and eta up to degree, then combine
  Matrix xi_pow(npts, degree_ + 1), eta_pow(npts, degree_ + 1);
  xi_pow.col(0).setOnes();
  eta_pow.col(0).setOnes();
  for (int p = 0; p < npts; ++p) {
    double xi = (pts(p, 0) - center_.x()) / scale_;
    double eta = (pts(p, 1) - center_.y()) / scale_;
    for (int d = 1; d <= degree_; ++d) {
      xi_pow(p, d) = xi_pow(p, d - 1) * xi;
      eta_pow(p, d) = eta_pow(p, d - 1) * eta;
    }
  }
  Matrix vals(npts, dim);
  for (int i = 0; i < dim; ++i)
    vals.col(i) = xi_pow.col(powers_[i].first).cwiseProduct(eta_pow.col(powers_[i].second));
  return vals;
}

void CellBasis::gradients(const PointList& pts, Matrix& dx, Matrix& dy) const {
  int npts = static_cast<int>(pts.rows());
  int dim = dimension();
  Matrix xi_pow(npts, degree_ + 1), eta_pow(npts, degree_ + 1);
  xi_pow.col(0).setOnes();
  eta_pow.col(0).setOnes();
  for (int p = 0; p < npts; ++p) {
    double xi = (pts(p, 0) - center_.x()) / scale_;
    double eta = (pts(p, 1) - center_.y()) / scale_;
    for (int d = 1; d <= degree_; ++d) {
      xi_pow(p, d) = xi_pow(p, d - 1) * xi;
      eta_pow(p, d) = eta_pow(p, d - 1) * eta;
    }
  }
  dx.resize(npts, dim);
  dy.resize(npts, dim);
  for (int i = 0; i < dim; ++i) {
    auto [a, b] = powers_[i];
    if (a == 0)
      dx.col(i).setZero();
    else
      dx.col(i) = (a / scale_) * xi_pow.col(a - 1).cwiseProduct(eta_pow.col(b));
    if (b == 0)
      dy.col(i).setZero();
    else
      dy.col(i) = (b / scale_) * xi_pow.col(a).cwiseProduct(eta_pow.col(b - 1));
  }
}

Matrix CellBasis::laplacian_coefficients() const {
  int dim = dimension();
  Matrix lap = Matrix::Zero(dim, dim);
  auto index_of = [this](int a, int b) {
    int l = a + b;
    return l * (l + 1) / 2 + b;
  };
  double s2 = scale_ * scale_;
  for (int i = 0; i < dim; ++i) {
    auto [a, b] = powers_[i];
    if (a >= 2) lap(i, index_of(a - 2, b)) += a * (a - 1) / s2;
    if (b >= 2) lap(i, index_of(a, b - 2)) += b * (b - 1) / s2;
  }
  return lap;
}

EdgeBasis::EdgeBasis(const PolyMesh& mesh, int edge, int degree) : degree_(degree) {
  const MeshEdge& e = mesh.edge(edge);
  Vector2 pa = mesh.vertex(e.a), pb = mesh.vertex(e.b);
  mid_ = 0.5 * (pa + pb);
  length_ = e.length;
  tangent_ = (pb - pa) / length_;
}

Matrix EdgeBasis::values(const Vector& tcoord) const {
  int npts = static_cast<int>(tcoord.size());
  Matrix vals(npts, degree_ + 1);
  vals.col(0).setOnes();
  for (int d = 1; d <= degree_; ++d) vals.col(d) = vals.col(d - 1).cwiseProduct(tcoord);
  return vals;
}

Vector EdgeBasis::tcoord_of(const PointList& pts) const {
  Vector t(pts.rows());
  for (int p = 0; p < pts.rows(); ++p) {
    Vector2 d = pts.row(p).transpose() - mid_;
    t[p] = 2.0 * d.dot(tangent_) / length_;
  }
  return t;
}

Matrix EdgeBasis::mass() const {
  int dim = degree_ + 1;
  Matrix m(dim, dim);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      m(a, b) = (a + b) % 2 == 0 ? length_ / (a + b + 1) : 0.0;
  return m;
}

} // namespace sfwg
