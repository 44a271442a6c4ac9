#include "sfwg/projection.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include "oracles.hpp"
#include "sfwg/basis.hpp"
#include "sfwg/quadrature.hpp"

#include <doctest.h>

#include <random>

using namespace sfwg;

namespace {

PolyMesh unit_square_cell() {
  return PolyMesh::from_cells(
      {Vector2(0, 0), Vector2(1, 0), Vector2(1, 1), Vector2(0, 1)}, {{0, 1, 2, 3}});
}

PolyMesh unit_right_triangle() {
  return PolyMesh::from_cells({Vector2(0, 0), Vector2(1, 0), Vector2(0, 1)}, {{0, 1, 2}});
}

} // namespace

TEST_CASE("mass matrix of degree 0 on the unit square is [area]") {
  PolyMesh mesh = unit_square_cell();
  Matrix m = cell_mass_matrix(mesh, 0, 0);
  REQUIRE(m.rows() == 1);
  CHECK(m(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("mass matrix on the unit right triangle matches closed forms") {
  PolyMesh mesh = unit_right_triangle();
  for (int d : {1, 2, 4}) {
    Matrix m = cell_mass_matrix(mesh, 0, d);
    Matrix exact = oracle::exact_cell_mass_matrix(mesh, 0, d);
    CHECK(m(0, 0) == doctest::Approx(0.5).epsilon(1e-14)); // int_T 1 = area
    CHECK((m - exact).norm() <= 1e-14 * exact.norm());
    CHECK((m - m.transpose()).norm() <= 1e-14 * m.norm());
    Eigen::LLT<Matrix> llt(m);
    CHECK(llt.info() == Eigen::Success);
  }
}

TEST_CASE("pentagon cell mass matrix agrees with Monte-Carlo integration") {
  PolyMesh mesh = generate({GridKind::PentagonMacro, 2});
  int cell = 7;
  Matrix m = cell_mass_matrix(mesh, cell, 2);
  Matrix mc = oracle::monte_carlo_mass_matrix(mesh, cell, 2, 1000000, 424242);
  CHECK((m - mc).norm() <= 1e-3 * m.norm());
}

TEST_CASE("projection reproduces members of the target space") {
  PolyMesh mesh = generate({GridKind::PentagonMacro, 1});
  auto f = [](const Vector2& p) { return p.x() + p.y(); };
  for (int c = 0; c < mesh.n_cells(); ++c) {
    Vector coeffs = project_onto_cell(f, mesh, c, 2);
    CellBasis basis(mesh, c, 2);
    QuadratureRule quad = cell_quadrature(mesh, c, 6);
    Matrix vals = basis.values(quad.points);
    for (int p = 0; p < quad.size(); ++p) {
      double got = vals.row(p).dot(coeffs);
      double want = f(quad.points.row(p).transpose());
      CHECK(got == doctest::Approx(want).epsilon(1e-12));
    }
  }
}

TEST_CASE("project_Qn of the constant 1 is the constant 1") {
  PolyMesh mesh = generate({GridKind::UniformTriangle, 2});
  auto one = [](const Vector2&) { return 1.0; };
  for (int e = 0; e < mesh.n_edges(); ++e) {
    Vector coeffs = project_onto_edge(one, mesh, e, 1);
    CHECK(coeffs[0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(std::abs(coeffs[1]) <= 1e-13);
  }
}

TEST_CASE("projection of exp(x+y) matches a dense normal-equations oracle") {
  PolyMesh mesh = unit_right_triangle();
  auto f = [](const Vector2& p) { return std::exp(p.x() + p.y()); };
  Vector coeffs = project_onto_cell(f, mesh, 0, 2);

  // oracle: 64-point tensor rule built from scratch, dense normal equations
  const double n8[8] = {0.01985507175123188, 0.10166676129318664, 0.2372337950418355,
                        0.40828267875217505, 0.59171732124782495, 0.7627662049581645,
                        0.89833323870681336, 0.98014492824876812};
  const double w8[8] = {0.05061426814518813, 0.11119051722668724, 0.15685332293894364,
                        0.18134189168918099, 0.18134189168918099, 0.15685332293894364,
                        0.11119051722668724, 0.05061426814518813};
  Vector2 centroid = mesh.cell_centroid(0);
  double h = mesh.cell_diameter(0);
  std::vector<std::pair<int, int>> powers = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  Matrix gram = Matrix::Zero(6, 6);
  Vector rhs = Vector::Zero(6);
  for (int iu = 0; iu < 8; ++iu)
    for (int iw = 0; iw < 8; ++iw) {
      double u = n8[iu], w = n8[iw];
      double x = u * (1.0 - w), y = u * w; // collapsed map, Jacobian u
      double wt = w8[iu] * w8[iw] * u;
      Vector phi(6);
      for (int i = 0; i < 6; ++i)
        phi[i] = std::pow((x - centroid.x()) / h, powers[i].first) *
                 std::pow((y - centroid.y()) / h, powers[i].second);
      gram += wt * phi * phi.transpose();
      rhs += wt * f(Vector2(x, y)) * phi;
    }
  Vector expect = gram.colPivHouseholderQr().solve(rhs);
  CHECK((coeffs - expect).norm() <= 1e-10 * expect.norm());
}

TEST_CASE("projection idempotence and orthogonality of the residual") {
  PolyMesh mesh = generate({GridKind::PentagonMacro, 2});
  auto f = [](const Vector2& p) { return std::exp(p.x() + p.y()); };
  int cell = 12;
  int d = 3;
  Vector coeffs = project_onto_cell(f, mesh, cell, d);
  CellBasis basis(mesh, cell, d);
  // project the projection: must reproduce the coefficients
  auto pf = [&](const Vector2& p) {
    PointList pt(1, 2);
    pt(0, 0) = p.x();
    pt(0, 1) = p.y();
    return basis.values(pt).row(0).dot(coeffs);
  };
  Vector coeffs2 = project_onto_cell(pf, mesh, cell, d);
  CHECK((coeffs2 - coeffs).norm() <= 1e-12 * (1.0 + coeffs.norm()));

  // residual orthogonal to the target space (tested with richer quadrature)
  QuadratureRule quad = cell_quadrature(mesh, cell, 2 * d + 8);
  Matrix vals = basis.values(quad.points);
  Vector fv(quad.size());
  for (int p = 0; p < quad.size(); ++p) fv[p] = f(quad.points.row(p).transpose());
  Vector residual = fv - vals * coeffs;
  Vector inner = vals.transpose() * quad.weights.cwiseProduct(residual);
  double fnorm = std::sqrt(quad.weights.dot(fv.cwiseAbs2()));
  CHECK(inner.cwiseAbs().maxCoeff() <= 1e-10 * fnorm);
}

TEST_CASE("interpolation: constants, coordinate fields, smooth fields") {
  PolyMesh mesh = generate({GridKind::UniformTriangle, 2});
  int k = 2;
  DofMap map(mesh, k);

  WgFunction one = interpolate(
      mesh, k, [](const Vector2&) { return 1.0; },
      [](const Vector2&) { return Vector2(0, 0); });
  for (int c = 0; c < mesh.n_cells(); ++c) {
    Vector c0 = one.coeffs.segment(map.cell_offset(c), map.cell_dim());
    CHECK(c0[0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(c0.tail(map.cell_dim() - 1).cwiseAbs().maxCoeff() <= 1e-13);
  }
  for (int e = 0; e < mesh.n_edges(); ++e) {
    CHECK(one.coeffs[map.vb_offset(e)] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(std::abs(one.coeffs[map.vn_offset(e)]) <= 1e-13); // grad 1 = 0
  }

  // u = x: on a vertical edge with n_e = (1, 0) the v_n block is constant 1
  WgFunction xf = interpolate(
      mesh, k, [](const Vector2& p) { return p.x(); },
      [](const Vector2&) { return Vector2(1, 0); });
  int checked = 0;
  for (int e = 0; e < mesh.n_edges(); ++e) {
    const auto& edge = mesh.edge(e);
    Vector2 t = mesh.vertex(edge.b) - mesh.vertex(edge.a);
    if (std::abs(t.x()) < 1e-15) { // vertical edge
      double expected = edge.normal.x(); // n_e = (+-1, 0)
      CHECK(xf.coeffs[map.vn_offset(e)] == doctest::Approx(expected).epsilon(1e-13));
      ++checked;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("cellwise projection residual orthogonality for exp on level 3, k=3") {
  PolyMesh mesh = generate({GridKind::UniformTriangle, 3});
  int k = 3;
  auto u = [](const Vector2& p) { return std::exp(p.x() + p.y()); };
  double worst = 0.0;
  for (int c = 0; c < mesh.n_cells(); ++c) {
    Vector coeffs = project_onto_cell(u, mesh, c, k);
    CellBasis basis(mesh, c, k);
    QuadratureRule quad = cell_quadrature(mesh, c, 2 * k + 8);
    Matrix vals = basis.values(quad.points);
    Vector fv(quad.size());
    for (int p = 0; p < quad.size(); ++p) fv[p] = u(quad.points.row(p).transpose());
    Vector inner = vals.transpose() * quad.weights.cwiseProduct(fv - vals * coeffs);
    double fnorm = std::sqrt(quad.weights.dot(fv.cwiseAbs2()));
    worst = std::max(worst, inner.cwiseAbs().maxCoeff() / fnorm);
  }
  CHECK(worst <= 1e-10);
}
