#include "sfwg/element_op.hpp"

#include "oracles.hpp"
#include "sfwg/projection.hpp"
#include "sfwg/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <doctest.h>

#include <random>

using namespace sfwg;

namespace {

PolyMesh unit_right_triangle() {
  return PolyMesh::from_cells({Vector2(0, 0), Vector2(1, 0), Vector2(0, 1)}, {{0, 1, 2}});
}

PolyMesh unit_square_mesh(int level = 2) { return generate({GridKind::UniformTriangle, level}); }

// L2(T) norm of a lifted-coefficient vector
double lift_norm(const ElementOperator& op, const Vector& coeffs) {
  return std::sqrt(std::max(0.0, coeffs.dot(op.mass * coeffs)));
}

} // namespace

TEST_CASE("lift of the constant one vanishes") {
  PolyMesh mesh = unit_square_mesh();
  ElementOperators ops(mesh, 2, 4);
  for (int c = 0; c < mesh.n_cells(); ++c) {
    Vector local = interpolate_local(
        ops, c, [](const Vector2&) { return 1.0; },
        [](const Vector2&) { return Vector2(0, 0); });
    // zero as a function of L2(T); the raw coefficients carry the
    // double-precision noise floor amplified by cond(M_j)
    CHECK(lift_norm(ops[c], ops[c].lift(local)) <= 1e-11);
  }
}

TEST_CASE("lift of x^2 is the constant 2 (commuting identity forced)") {
  PolyMesh mesh = unit_square_mesh();
  ElementOperators ops(mesh, 2, 4);
  for (int c = 0; c < mesh.n_cells(); ++c) {
    Vector local = interpolate_local(
        ops, c, [](const Vector2& p) { return p.x() * p.x(); },
        [](const Vector2& p) { return Vector2(2 * p.x(), 0); });
    Vector lifted = ops[c].lift(local);
    CHECK(lifted[0] == doctest::Approx(2.0).epsilon(1e-11));
    Vector diff = lifted;
    diff[0] -= 2.0;
    CHECK(lift_norm(ops[c], diff) <= 1e-11); // equals the constant 2 in L2(T)
  }
}

TEST_CASE("single v_b unit vector: lift matches the dense 25-point oracle") {
  PolyMesh mesh = unit_right_triangle();
  ElementOperators ops(mesh, 2, 4);
  oracle::DenseElementOracle dense = oracle::dense_element_oracle(mesh, 0, 2, 4);
  int n = ops[0].n_local();
  REQUIRE(dense.lift_rhs.cols() == n);
  DofMap map = ops.dofmap();
  Vector v = Vector::Zero(n);
  v[map.cell_dim() + 1] = 1.0; // a v_b DOF on the first edge
  Vector got = ops[0].lift(v);
  Vector expect = dense.lift(v);
  CHECK((got - expect).norm() <= 1e-10 * (1.0 + expect.norm()));
}

TEST_CASE("element stiffness matches the dense oracle (unit right triangle, k=2, j=4)") {
  PolyMesh mesh = unit_right_triangle();
  ElementOperators ops(mesh, 2, 4);
  oracle::DenseElementOracle dense = oracle::dense_element_oracle(mesh, 0, 2, 4);
  const Matrix& k_lib = ops[0].stiffness;
  CHECK((k_lib - dense.stiffness).norm() <= 1e-10 * dense.stiffness.norm());
}

TEST_CASE("element stiffness is symmetric positive semidefinite") {
  PolyMesh mesh = generate({GridKind::PentagonMacro, 2});
  ElementOperators ops(mesh, 2, 5);
  for (int c : {0, 4, 11, 19}) {
    const Matrix& k = ops[c].stiffness;
    CHECK((k - k.transpose()).norm() <= 1e-12 * k.norm());
    Eigen::SelfAdjointEigenSolver<Matrix> es(k, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() >= -1e-10 * k.norm());
  }
}

TEST_CASE("v' K v = 16 area(T) for the embedding of x^2 + y^2") {
  PolyMesh mesh = unit_square_mesh();
  ElementOperators ops(mesh, 2, 4);
  for (int c = 0; c < mesh.n_cells(); ++c) {
    Vector local = interpolate_local(
        ops, c, [](const Vector2& p) { return p.squaredNorm(); },
        [](const Vector2& p) { return Vector2(2 * p.x(), 2 * p.y()); });
    double got = local.dot(ops[c].stiffness * local);
    CHECK(got == doctest::Approx(16.0 * mesh.cell_area(c)).epsilon(1e-10));
  }
}

TEST_CASE("j <= k is rejected") {
  PolyMesh mesh = unit_right_triangle();
  CHECK_THROWS_AS(ElementOperators(mesh, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(element_stiffness(mesh, 0, 3, 3), std::invalid_argument);
}

TEST_CASE("lift is linear") {
  PolyMesh mesh = generate({GridKind::PentagonMacro, 1});
  ElementOperators ops(mesh, 2, 5);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> unif(-1, 1);
  int n = ops[2].n_local();
  Vector v(n), w(n);
  for (int i = 0; i < n; ++i) {
    v[i] = unif(rng);
    w[i] = unif(rng);
  }
  double a = 0.7, b = -1.3;
  Vector combined = ops[2].lift(a * v + b * w);
  Vector split = a * ops[2].lift(v) + b * ops[2].lift(w);
  CHECK((combined - split).norm() <= 1e-12 * (1.0 + split.norm()));
}

TEST_CASE("v' K v equals the squared L2 norm of the lift") {
  PolyMesh mesh = generate({GridKind::PentagonMacro, 1});
  ElementOperators ops(mesh, 2, 5);
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> unif(-1, 1);
  for (int c = 0; c < mesh.n_cells(); ++c) {
    Vector v(ops[c].n_local());
    for (int i = 0; i < v.size(); ++i) v[i] = unif(rng);
    double quad_form = v.dot(ops[c].stiffness * v);
    Vector lifted = ops[c].lift(v);
    double norm2 = lifted.dot(ops[c].mass * lifted);
    CHECK(quad_form == doctest::Approx(norm2).epsilon(1e-11));
    CHECK(quad_form >= 0.0);
  }
}

TEST_CASE("kernel of K contains exactly the embedded harmonic polynomials (k=2)") {
  PolyMesh mesh = unit_square_mesh();
  ElementOperators ops(mesh, 2, 4);
  const std::vector<std::pair<ScalarField, VectorField>> harmonics = {
      {[](const Vector2&) { return 1.0; }, [](const Vector2&) { return Vector2(0, 0); }},
      {[](const Vector2& p) { return p.x(); }, [](const Vector2&) { return Vector2(1, 0); }},
      {[](const Vector2& p) { return p.y(); }, [](const Vector2&) { return Vector2(0, 1); }},
      {[](const Vector2& p) { return p.x() * p.y(); },
       [](const Vector2& p) { return Vector2(p.y(), p.x()); }},
      {[](const Vector2& p) { return p.x() * p.x() - p.y() * p.y(); },
       [](const Vector2& p) { return Vector2(2 * p.x(), -2 * p.y()); }}};
  for (int c : {0, 3}) {
    double knorm = ops[c].stiffness.norm();
    for (const auto& [u, gu] : harmonics) {
      Vector local = interpolate_local(ops, c, u, gu);
      CHECK((ops[c].stiffness * local).cwiseAbs().maxCoeff() <= 1e-11 * (1.0 + knorm));
    }
    // x^2 is not harmonic: K v != 0
    Vector local = interpolate_local(
        ops, c, [](const Vector2& p) { return p.x() * p.x(); },
        [](const Vector2& p) { return Vector2(2 * p.x(), 0); });
    CHECK(local.dot(ops[c].stiffness * local) ==
          doctest::Approx(4.0 * mesh.cell_area(c)).epsilon(1e-10));
  }
}

TEST_CASE("commuting identity: polynomials of degree <= k are exact") {
  for (GridKind kind : {GridKind::UniformTriangle, GridKind::PentagonMacro}) {
    PolyMesh mesh = generate({kind, 2});
    int k = 2, j = kind == GridKind::UniformTriangle ? 4 : 5;
    ElementOperators ops(mesh, k, j);
    auto u = [](const Vector2& p) { return p.x() * p.x() - p.x() * p.y() + 2.0; };
    auto gu = [](const Vector2& p) { return Vector2(2 * p.x() - p.y(), -p.x()); };
    auto lu = [](const Vector2&) { return 2.0; };
    for (int c = 0; c < mesh.n_cells(); ++c)
      CHECK(commuting_identity_residual(ops, c, u, gu, lu) <= 1e-11);

    // constants: both sides vanish
    for (int c = 0; c < mesh.n_cells(); ++c)
      CHECK(commuting_identity_residual(
                ops, c, [](const Vector2&) { return 3.0; },
                [](const Vector2&) { return Vector2(0, 0); },
                [](const Vector2&) { return 0.0; }) <= 2e-11); // at the cond(M_6) noise floor on pentagon cells
  }
}

TEST_CASE("commuting residual for exp(x+y) decreases under refinement") {
  // levels 3..6, k=2, j=4: max cellwise residual decays at order >= k - 0.5
  auto u = [](const Vector2& p) { return std::exp(p.x() + p.y()); };
  auto gu = [](const Vector2& p) {
    double e = std::exp(p.x() + p.y());
    return Vector2(e, e);
  };
  auto lu = [](const Vector2& p) { return 2.0 * std::exp(p.x() + p.y()); };
  std::vector<double> residuals;
  for (int level = 3; level <= 6; ++level) {
    PolyMesh mesh = generate({GridKind::UniformTriangle, level});
    ElementOperators ops(mesh, 2, 4);
    double worst = 0.0;
    for (int c = 0; c < mesh.n_cells(); ++c)
      worst = std::max(worst, commuting_identity_residual(ops, c, u, gu, lu));
    residuals.push_back(worst);
  }
  for (size_t i = 1; i < residuals.size(); ++i) {
    double order = std::log2(residuals[i - 1] / residuals[i]);
    CHECK(order >= 2.0 - 0.5);
  }
}

TEST_CASE("sign fault injection breaks the commuting identity") {
  PolyMesh mesh = unit_square_mesh();
  ElementOperators good(mesh, 2, 4);
  ElementOperators bad(mesh, 2, 4, {true});
  auto u = [](const Vector2& p) { return p.x() * p.x(); };
  auto gu = [](const Vector2& p) { return Vector2(2 * p.x(), 0); };
  auto lu = [](const Vector2&) { return 2.0; };
  double worst_good = 0.0, worst_bad = 0.0;
  for (int c = 0; c < mesh.n_cells(); ++c) {
    worst_good = std::max(worst_good, commuting_identity_residual(good, c, u, gu, lu));
    worst_bad = std::max(worst_bad, commuting_identity_residual(bad, c, u, gu, lu));
  }
  CHECK(worst_good <= 1e-11);
  CHECK(worst_bad > 1e-3);
}
