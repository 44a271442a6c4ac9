#include "sfwg/mesh.hpp"

#include "sfwg/exceptions.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace sfwg;

namespace {

// shoelace, written independently of the library's area computation
double shoelace(const PolyMesh& mesh, int cell) {
  const auto& loop = mesh.cell(cell);
  int m = static_cast<int>(loop.size());
  double a2 = 0.0;
  for (int q = 0; q < m; ++q) {
    auto p = mesh.vertex(loop[q]);
    auto r = mesh.vertex(loop[(q + 1) % m]);
    a2 += p.x() * r.y() - r.x() * p.y();
  }
  return 0.5 * a2;
}

} // namespace

TEST_CASE("level-1 triangle grid: two unit right triangles") {
  PolyMesh mesh = generate({GridKind::UniformTriangle, 1});
  CHECK(mesh.n_vertices() == 4);
  CHECK(mesh.n_cells() == 2);
  CHECK(mesh.n_edges() == 5);
  CHECK(mesh.total_area() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(mesh.mesh_size() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  // the split runs along the diagonal from (1,0) to (0,1)
  bool found_diagonal = false;
  for (int e = 0; e < mesh.n_edges(); ++e) {
    const auto& edge = mesh.edge(e);
    Vector2 pa = mesh.vertex(edge.a), pb = mesh.vertex(edge.b);
    if (!edge.boundary) {
      found_diagonal = true;
      std::set<std::pair<double, double>> pts = {{pa.x(), pa.y()}, {pb.x(), pb.y()}};
      CHECK(pts == std::set<std::pair<double, double>>{{0.0, 1.0}, {1.0, 0.0}});
    }
  }
  CHECK(found_diagonal);
}

TEST_CASE("triangle level 3 has 2*4^2 = 32 cells") {
  PolyMesh mesh = generate({GridKind::UniformTriangle, 3});
  CHECK(mesh.n_cells() == 32);
}

TEST_CASE("pentagon level 2: 20 convex cells tiling the square") {
  // level-2 geometry by hand: 4 macro-squares of side 1/2, each contributing
  // 4 pentagons of area 0.18875 * s^2 and one rhombus of area 0.245 * s^2
  // (alpha = 0.15)
  PolyMesh mesh = generate({GridKind::PentagonMacro, 2});
  CHECK(mesh.n_cells() == 20);
  double s = 0.5;
  // diagonals of the central quadrilateral have length (1 - 2 alpha) s
  double rhombus_area = 0.5 * ((1.0 - 0.3) * s) * ((1.0 - 0.3) * s);
  double pentagon_area = (s * s - rhombus_area) / 4.0;
  CHECK(pentagon_area == doctest::Approx(0.18875 * s * s).epsilon(1e-14));
  int n_rhombi = 0, n_pentagons = 0;
  for (int c = 0; c < mesh.n_cells(); ++c) {
    double area = shoelace(mesh, c);
    CHECK(area > 0.0);
    CHECK(mesh.cell_area(c) == doctest::Approx(area).epsilon(1e-14));
    if (mesh.cell(c).size() == 4) {
      ++n_rhombi;
      CHECK(area == doctest::Approx(rhombus_area).epsilon(1e-13));
    } else {
      ++n_pentagons;
      REQUIRE(mesh.cell(c).size() == 5);
      CHECK(area == doctest::Approx(pentagon_area).epsilon(1e-13));
    }
  }
  CHECK(n_rhombi == 4);
  CHECK(n_pentagons == 16);
  CHECK(mesh.total_area() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("refinement: counts, h halving, family checks") {
  PolyMesh tri1 = generate({GridKind::UniformTriangle, 1});
  PolyMesh tri2 = refine(tri1, *tri1.provenance);
  CHECK(tri2.n_cells() == 8);
  CHECK(tri2.mesh_size() == 0.5 * tri1.mesh_size()); // dyadic coordinates: exact

  PolyMesh pent2 = generate({GridKind::PentagonMacro, 2});
  PolyMesh pent3 = refine(pent2, *pent2.provenance);
  CHECK(pent3.n_cells() == 80);
  CHECK(pent3.mesh_size() == doctest::Approx(0.5 * pent2.mesh_size()).epsilon(1e-12));

  CHECK_THROWS_AS(refine(tri2, *pent2.provenance), std::invalid_argument);
  PolyMesh no_prov = PolyMesh::from_cells(
      {Vector2(0, 0), Vector2(1, 0), Vector2(0, 1)}, {{0, 1, 2}});
  CHECK_THROWS_AS(refine(no_prov, GridFamily{}), std::invalid_argument);
  CHECK_THROWS_AS(generate({GridKind::UniformTriangle, 0}), std::invalid_argument);
}

TEST_CASE("mesh invariants at levels 1-6: Euler relation, edge sharing, normals") {
  for (GridKind kind : {GridKind::UniformTriangle, GridKind::PentagonMacro}) {
    for (int level = 1; level <= 6; ++level) {
      PolyMesh mesh = generate({kind, level});
      // Euler relation for a planar subdivision of a disk
      CHECK(mesh.n_vertices() - mesh.n_edges() + mesh.n_cells() == 1);
      int expected =
          (kind == GridKind::UniformTriangle ? 2 : 5) * (1 << (2 * (level - 1)));
      CHECK(mesh.n_cells() == expected);
      CHECK(mesh.total_area() == doctest::Approx(1.0).epsilon(1e-12));
      for (int e = 0; e < mesh.n_edges(); ++e) {
        const auto& edge = mesh.edge(e);
        CHECK(edge.cell_minus >= 0);
        if (edge.boundary)
          CHECK(edge.cell_plus == -1);
        else
          CHECK(edge.cell_plus > edge.cell_minus);
        // normal orthogonal to the edge and unit
        Vector2 t = mesh.vertex(edge.b) - mesh.vertex(edge.a);
        CHECK(std::abs(edge.normal.dot(t)) <= 1e-14 * t.norm());
        CHECK(std::abs(edge.normal.norm() - 1.0) <= 1e-14);
      }
    }
  }
}

TEST_CASE("triangle refinement nesting: parent area equals 4 children") {
  PolyMesh coarse = generate({GridKind::UniformTriangle, 2});
  PolyMesh fine = generate({GridKind::UniformTriangle, 3});
  // uniform similarity: every fine cell has exactly 1/4 of a parent area
  double parent = coarse.cell_area(0);
  double child_sum = 0.0;
  for (int c = 0; c < 4; ++c) child_sum += fine.cell_area(c);
  CHECK(child_sum == doctest::Approx(parent).epsilon(1e-14));
  double total_fine = 0, total_coarse = 0;
  for (int c = 0; c < fine.n_cells(); ++c) total_fine += fine.cell_area(c);
  for (int c = 0; c < coarse.n_cells(); ++c) total_coarse += coarse.cell_area(c);
  CHECK(total_fine == doctest::Approx(total_coarse).epsilon(1e-14));
}

TEST_CASE("generated vertices shared between cells are bit-identical") {
  PolyMesh mesh = generate({GridKind::PentagonMacro, 3});
  // no two distinct vertices coincide
  std::set<std::pair<double, double>> coords;
  for (int v = 0; v < mesh.n_vertices(); ++v)
    coords.insert({mesh.vertex(v).x(), mesh.vertex(v).y()});
  CHECK(static_cast<int>(coords.size()) == mesh.n_vertices());
}

TEST_CASE("edge normal convention: from smaller cell index toward larger") {
  PolyMesh mesh = generate({GridKind::UniformTriangle, 2});
  for (int e = 0; e < mesh.n_edges(); ++e) {
    const auto& edge = mesh.edge(e);
    int c = edge.cell_minus;
    const auto& cedges = mesh.cell_edges(c);
    for (size_t q = 0; q < cedges.size(); ++q)
      if (cedges[q] == static_cast<int>(e))
        CHECK(edge.normal.dot(mesh.outward_normal(c, static_cast<int>(q))) ==
              doctest::Approx(1.0).epsilon(1e-14));
  }
}
