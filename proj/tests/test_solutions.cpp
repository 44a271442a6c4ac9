#include "sfwg/solutions.hpp"

#include "sfwg/exceptions.hpp"

#include <doctest.h>

using namespace sfwg;

TEST_CASE("registry contents and lookup") {
  CHECK(solution_registry().size() == 5);
  CHECK(find_solution("exp_xy").name == "exp_xy");
  CHECK_THROWS_AS(find_solution("nope"), ConfigError);
}

TEST_CASE("built-ins satisfy biharmonic identity by finite differences") {
  for (const auto& rec : solution_registry()) {
    double dev = verify_biharmonic_identity(rec, 10, 1e-3);
    INFO(rec.name);
    CHECK(dev <= 1e-5);
  }
}

TEST_CASE("gradient and Laplacian are consistent with the values") {
  // central differences at a fixed point, loose tolerance
  for (const auto& rec : solution_registry()) {
    Vector2 p(0.37, 0.61);
    const double h = 1e-5;
    double ux = (rec.value(p + Vector2(h, 0)) - rec.value(p - Vector2(h, 0))) / (2 * h);
    double uy = (rec.value(p + Vector2(0, h)) - rec.value(p - Vector2(0, h))) / (2 * h);
    Vector2 g = rec.gradient(p);
    CHECK(ux == doctest::Approx(g.x()).epsilon(1e-7).scale(1.0));
    CHECK(uy == doctest::Approx(g.y()).epsilon(1e-7).scale(1.0));
    double lap = (rec.value(p + Vector2(h, 0)) + rec.value(p - Vector2(h, 0)) +
                  rec.value(p + Vector2(0, h)) + rec.value(p - Vector2(0, h)) -
                  4 * rec.value(p)) /
                 (h * h);
    CHECK(lap == doctest::Approx(rec.laplacian(p)).epsilon(1e-3).scale(10.0));
  }
}
