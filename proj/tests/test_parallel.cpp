#include "sfwg/parallel.hpp"

#include "sfwg/assembly.hpp"
#include "sfwg/norms.hpp"
#include "sfwg/solutions.hpp"
#include "sfwg/solver.hpp"

#include <doctest.h>

#include <cstdlib>

using namespace sfwg;

namespace {

ErrorReport run_level3(int threads) {
  setenv("SFWG_THREADS", std::to_string(threads).c_str(), 1);
  const SolutionRecord& exact = find_solution("exp_xy");
  auto phi_n = [&](const Vector2& x) {
    Vector2 n(0, 0);
    const double eps = 1e-12;
    if (x.x() < eps) n = Vector2(-1, 0);
    else if (x.x() > 1 - eps) n = Vector2(1, 0);
    else if (x.y() < eps) n = Vector2(0, -1);
    else n = Vector2(0, 1);
    return exact.gradient(x).dot(n);
  };
  PolyMesh mesh = generate({GridKind::UniformTriangle, 3});
  ElementOperators ops(mesh, 2, 4);
  LinearSystem sys = apply_boundary(assemble(ops, exact.source), mesh, exact.value, phi_n);
  WgFunction u_h = solve(sys);
  ErrorReport rep = error_report(u_h, exact, ops);
  unsetenv("SFWG_THREADS");
  return rep;
}

} // namespace

TEST_CASE("parallel_for covers the index range exactly once") {
  setenv("SFWG_THREADS", "4", 1);
  std::vector<int> hits(1000, 0);
  parallel_for(1000, [&](int i) { hits[i] += 1; });
  unsetenv("SFWG_THREADS");
  for (int h : hits) CHECK(h == 1);
}

TEST_CASE("results are bit-identical for any thread count") {
  ErrorReport serial = run_level3(1);
  ErrorReport threaded = run_level3(5);
  CHECK(serial.l2 == threaded.l2);
  CHECK(serial.h1 == threaded.h1);
  CHECK(serial.energy == threaded.energy);
  CHECK(serial.energy_qh == threaded.energy_qh);
  CHECK(serial.h2h == threaded.h2h);
  CHECK(serial.l2_q0 == threaded.l2_q0);
}
