#include "sfwg/solutions.hpp"

#include "sfwg/exceptions.hpp"

#include <cmath>
#include <random>

namespace sfwg {

namespace {

SolutionRecord make_exp_xy() {
  SolutionRecord r;
  r.name = "exp_xy";
  r.value = [](const Vector2& p) { return std::exp(p.x() + p.y()); };
  r.gradient = [](const Vector2& p) {
    double e = std::exp(p.x() + p.y());
    return Vector2(e, e);
  };
  r.laplacian = [](const Vector2& p) { return 2.0 * std::exp(p.x() + p.y()); };
  r.source = [](const Vector2& p) { return 4.0 * std::exp(p.x() + p.y()); };
  r.value_ld = [](long double x, long double y) { return std::exp(x + y); };
  return r;
}

SolutionRecord make_sin_sin() {
  SolutionRecord r;
  r.name = "sin_sin";
  const double pi = M_PI;
  r.value = [pi](const Vector2& p) { return std::sin(pi * p.x()) * std::sin(pi * p.y()); };
  r.gradient = [pi](const Vector2& p) {
    return Vector2(pi * std::cos(pi * p.x()) * std::sin(pi * p.y()),
                   pi * std::sin(pi * p.x()) * std::cos(pi * p.y()));
  };
  r.laplacian = [pi](const Vector2& p) {
    return -2.0 * pi * pi * std::sin(pi * p.x()) * std::sin(pi * p.y());
  };
  r.source = [pi](const Vector2& p) {
    return 4.0 * pi * pi * pi * pi * std::sin(pi * p.x()) * std::sin(pi * p.y());
  };
  r.value_ld = [](long double x, long double y) {
    const long double pi_ld = 3.14159265358979323846264338327950288L;
    return std::sin(pi_ld * x) * std::sin(pi_ld * y);
  };
  return r;
}

// u = x^2 + xy + y^2 + x - y + 1
SolutionRecord make_poly2() {
  SolutionRecord r;
  r.name = "poly2";
  r.value = [](const Vector2& p) {
    return p.x() * p.x() + p.x() * p.y() + p.y() * p.y() + p.x() - p.y() + 1.0;
  };
  r.gradient = [](const Vector2& p) {
    return Vector2(2.0 * p.x() + p.y() + 1.0, p.x() + 2.0 * p.y() - 1.0);
  };
  r.laplacian = [](const Vector2&) { return 4.0; };
  r.source = [](const Vector2&) { return 0.0; };
  r.value_ld = [](long double x, long double y) { return x * x + x * y + y * y + x - y + 1.0L; };
  return r;
}

// u = x^3 + x^2 y + x y^2 - y^3 + x^2 - y^2
SolutionRecord make_poly3() {
  SolutionRecord r;
  r.name = "poly3";
  r.value = [](const Vector2& p) {
    double x = p.x(), y = p.y();
    return x * x * x + x * x * y + x * y * y - y * y * y + x * x - y * y;
  };
  r.gradient = [](const Vector2& p) {
    double x = p.x(), y = p.y();
    return Vector2(3 * x * x + 2 * x * y + y * y + 2 * x, x * x + 2 * x * y - 3 * y * y - 2 * y);
  };
  r.laplacian = [](const Vector2& p) { return 8.0 * p.x() - 4.0 * p.y(); };
  r.source = [](const Vector2&) { return 0.0; };
  r.value_ld = [](long double x, long double y) {
    return x * x * x + x * x * y + x * y * y - y * y * y + x * x - y * y;
  };
  return r;
}

// u = x^4 + x^3 y + x y^3 + y^4, Delta^2 u = 48
SolutionRecord make_poly4() {
  SolutionRecord r;
  r.name = "poly4";
  r.value = [](const Vector2& p) {
    double x = p.x(), y = p.y();
    return x * x * x * x + x * x * x * y + x * y * y * y + y * y * y * y;
  };
  r.gradient = [](const Vector2& p) {
    double x = p.x(), y = p.y();
    return Vector2(4 * x * x * x + 3 * x * x * y + y * y * y,
                   x * x * x + 3 * x * y * y + 4 * y * y * y);
  };
  r.laplacian = [](const Vector2& p) {
    double x = p.x(), y = p.y();
    return 12 * x * x + 12 * x * y + 12 * y * y;
  };
  r.source = [](const Vector2&) { return 48.0; };
  r.value_ld = [](long double x, long double y) {
    return x * x * x * x + x * x * x * y + x * y * y * y + y * y * y * y;
  };
  return r;
}

} // namespace

const std::vector<SolutionRecord>& solution_registry() {
  static const std::vector<SolutionRecord> registry = {
      make_exp_xy(), make_sin_sin(), make_poly2(), make_poly3(), make_poly4()};
  return registry;
}

const SolutionRecord& find_solution(const std::string& name) {
  for (const auto& r : solution_registry())
    if (r.name == name) return r;
  std::string known;
  for (const auto& r : solution_registry()) known += " " + r.name;
  throw ConfigError("unknown solution '" + name + "'; registry has:" + known);
}

double verify_biharmonic_identity(const SolutionRecord& record, int n_points, double step,
                                  unsigned seed) {
  if (!record.value || !record.source)
    throw ConfigError("solution record '" + record.name + "' lacks value or source data");
  auto u = [&](long double x, long double y) -> long double {
    if (record.value_ld) return record.value_ld(x, y);
    return record.value(Vector2(static_cast<double>(x), static_cast<double>(y)));
  };
  const long double h = step;
  // 13-point biharmonic stencil, O(h^2)
  auto fd = [&](long double x, long double y) -> long double {
    long double s = 20.0L * u(x, y);
    s -= 8.0L * (u(x + h, y) + u(x - h, y) + u(x, y + h) + u(x, y - h));
    s += 2.0L * (u(x + h, y + h) + u(x + h, y - h) + u(x - h, y + h) + u(x - h, y - h));
    s += u(x + 2 * h, y) + u(x - 2 * h, y) + u(x, y + 2 * h) + u(x, y - 2 * h);
    return s / (h * h * h * h);
  };

  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> interior(0.1, 0.9);
  double scale = 1.0;
  std::vector<Vector2> pts(n_points);
  for (auto& p : pts) {
    p = Vector2(interior(rng), interior(rng));
    scale = std::max(scale, std::abs(record.source(p)));
  }
  double worst = 0.0;
  for (const auto& p : pts) {
    long double approx = fd(p.x(), p.y());
    double exact = record.source(p);
    worst = std::max(worst, std::abs(static_cast<double>(approx) - exact) / scale);
  }
  return worst;
}

} // namespace sfwg
