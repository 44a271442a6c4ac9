// Command-line driver: convergence studies (`solve`), structural property
// suites (`check`), and mesh file emission (`mesh emit`).
//
// Exit codes: 0 ok, 2 configuration error, 3 solver failure, 4 property
// failure.
#include "sfwg/assembly.hpp"
#include "sfwg/exceptions.hpp"
#include "sfwg/norms.hpp"
#include "sfwg/properties.hpp"
#include "sfwg/report.hpp"
#include "sfwg/solutions.hpp"
#include "sfwg/solver.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace sfwg;

struct RunConfig {
  std::string family = "triangle";
  std::string levels = "1..4";
  int k = 2;
  int j = -1; // default: k+2 triangles, k+3 pentagons
  double alpha = 0.15;
  std::string solution = "exp_xy";
  std::string solver = "auto";
  bool condense = false;
  std::string out;
  std::string format = "csv";

  GridKind kind() const {
    if (family == "triangle") return GridKind::UniformTriangle;
    if (family == "pentagon") return GridKind::PentagonMacro;
    throw ConfigError("unknown family '" + family + "' (triangle|pentagon)");
  }

  std::pair<int, int> level_range() const {
    auto sep = levels.find("..");
    int lo, hi;
    try {
      if (sep == std::string::npos) {
        lo = hi = std::stoi(levels);
      } else {
        lo = std::stoi(levels.substr(0, sep));
        hi = std::stoi(levels.substr(sep + 2));
      }
    } catch (const std::exception&) {
      throw ConfigError("could not parse level range '" + levels + "' (expected A..B)");
    }
    if (lo < 1 || hi < lo || hi > 8)
      throw ConfigError("level range must satisfy 1 <= A <= B <= 8");
    return {lo, hi};
  }

  int lift_degree() const {
    int jj = j > 0 ? j : default_lift_degree(kind(), k);
    if (k < 2) throw ConfigError("the weak Galerkin space requires k >= 2");
    if (jj <= k) throw ConfigError("lift degree j must exceed k");
    return jj;
  }

  SolverConfig solver_config(int free_dofs) const {
    SolverConfig cfg;
    if (solver == "cholesky" || (solver == "auto" && free_dofs <= 200000))
      cfg.method = SolverConfig::Method::DirectCholesky;
    else if (solver == "cg" || solver == "auto")
      cfg.method = SolverConfig::Method::ConjugateGradient;
    else
      throw ConfigError("unknown solver '" + solver + "' (cholesky|cg)");
    return cfg;
  }
};

int run_solve(const RunConfig& cfg) {
  auto [lo, hi] = cfg.level_range();
  int j = cfg.lift_degree();
  const SolutionRecord& exact = find_solution(cfg.solution);
  if (cfg.solver != "auto" && cfg.solver != "cholesky" && cfg.solver != "cg")
    throw ConfigError("unknown solver '" + cfg.solver + "' (cholesky|cg)");

  ScalarField g = exact.value;
  VectorField grad = exact.gradient;

  std::vector<ErrorReport> reports;
  bool failed = false;
  std::string failure_note;

  PolyMesh mesh = generate({cfg.kind(), lo, cfg.alpha});
  for (int level = lo; level <= hi; ++level) {
    try {
      ElementOperators ops(mesh, cfg.k, j);
      // Neumann-type datum: outward normal derivative on the boundary.
      // apply_boundary converts it to the stored-normal coefficient.
      auto phi_n = [&](const Vector2& x) -> double {
        Vector2 n(0, 0);
        const double eps = 1e-12;
        if (x.x() < eps) n = Vector2(-1, 0);
        else if (x.x() > 1 - eps) n = Vector2(1, 0);
        else if (x.y() < eps) n = Vector2(0, -1);
        else n = Vector2(0, 1);
        return grad(x).dot(n);
      };
      WgFunction u_h;
      if (cfg.condense) {
        CondensedSystem cs(ops, exact.source);
        LinearSystem sys = cs.edge_system(mesh, g, phi_n);
        SolverConfig scfg = cfg.solver_config(static_cast<int>(sys.free_dofs.size()));
        u_h = cs.recover(expand_in_system_space(sys, solve_reduced(sys, scfg)));
      } else {
        LinearSystem sys = apply_boundary(assemble(ops, exact.source), mesh, g, phi_n);
        SolverConfig scfg = cfg.solver_config(static_cast<int>(sys.free_dofs.size()));
        u_h = solve(sys, scfg);
      }
      ErrorReport rep = error_report(u_h, exact, ops);
      rep.level = level;
      reports.push_back(rep);
    } catch (const IterativeFailure& e) {
      failed = true;
      failure_note = "solver failure at level " + std::to_string(level) + ": " + e.what() +
                     " (residual " + std::to_string(e.residual()) + ")";
      break;
    } catch (const NotSpdError& e) {
      failed = true;
      failure_note = "solver failure at level " + std::to_string(level) + ": " + e.what();
      break;
    }
    if (level < hi) mesh = refine(mesh, *mesh.provenance);
  }

  ConvergenceReport conv = convergence_rates(reports);
  std::string title = std::string(cfg.family) + " grids, P" + std::to_string(cfg.k) +
                      " (j=" + std::to_string(j) + "), u = " + cfg.solution;
  std::string rendered =
      cfg.format == "md" ? render_markdown(conv, title) : render_csv(conv);
  if (failed) rendered += "# " + failure_note + "\n";

  if (!cfg.out.empty()) {
    std::ofstream f(cfg.out);
    if (!f) throw ConfigError("cannot open output path '" + cfg.out + "'");
    f << rendered;
  }
  std::cout << rendered;
  if (failed) {
    std::cerr << failure_note << "\n";
    return 3;
  }
  return 0;
}

int run_check(PropertyOptions opts) {
  std::vector<SuiteResult> results = run_property_suites(opts);
  nlohmann::json summary;
  bool all_passed = true;
  for (const auto& r : results) {
    summary["suites"][r.name] = {{"passed", r.passed}, {"detail", r.detail}};
    all_passed &= r.passed;
  }
  summary["passed"] = all_passed;
  std::cout << summary.dump(2) << "\n";
  if (!all_passed) {
    for (const auto& r : results)
      if (!r.passed) std::cerr << "property failure: " << r.name << "\n";
    return 4;
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"stabilizer-free weak Galerkin solver for the biharmonic equation"};
  app.require_subcommand(1);

  RunConfig cfg;
  CLI::App* solve_cmd = app.add_subcommand("solve", "run a convergence study");
  solve_cmd->add_option("--family", cfg.family, "grid family: triangle|pentagon");
  solve_cmd->add_option("--levels", cfg.levels, "level range A..B (max 8)");
  solve_cmd->add_option("--k", cfg.k, "polynomial degree k >= 2");
  solve_cmd->add_option("--j", cfg.j, "weak Laplacian degree (default k+2 / k+3)");
  solve_cmd->add_option("--alpha", cfg.alpha, "pentagon offset (default 0.15)");
  solve_cmd->add_option("--solution", cfg.solution, "exact solution name");
  solve_cmd->add_option("--solver", cfg.solver,
                        "cholesky|cg (default: direct up to 200k free DOFs)");
  solve_cmd->add_flag("--condense", cfg.condense, "static condensation of interior DOFs");
  solve_cmd->add_option("--out", cfg.out, "output table path");
  solve_cmd->add_option("--format", cfg.format, "csv|md");

  PropertyOptions popts;
  int explore_j = 0;
  std::string check_family = "both";
  CLI::App* check_cmd = app.add_subcommand("check", "run the property suites");
  check_cmd->add_flag("--inject-sign-fault", popts.inject_sign_fault,
                      "fault injection: mis-sign n_e . n");
  check_cmd->add_option("--explore-j", explore_j,
                        "norm-equivalence report for this lift degree (no assertion)");
  check_cmd->add_option("--family", check_family, "triangle|pentagon|both");
  check_cmd->add_option("--alpha", popts.alpha, "pentagon offset");

  GridFamily emit_family;
  std::string emit_kind = "triangle", emit_out;
  CLI::App* mesh_cmd = app.add_subcommand("mesh", "mesh utilities");
  CLI::App* emit_cmd = mesh_cmd->add_subcommand("emit", "write a generated mesh file");
  emit_cmd->add_option("--family", emit_kind, "triangle|pentagon");
  emit_cmd->add_option("--level", emit_family.level, "grid level >= 1");
  emit_cmd->add_option("--alpha", emit_family.alpha, "pentagon offset");
  emit_cmd->add_option("--out", emit_out, "output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (solve_cmd->parsed()) return run_solve(cfg);
    if (check_cmd->parsed()) {
      if (explore_j > 0) popts.explore_j = explore_j;
      if (check_family == "triangle") popts.families = {GridKind::UniformTriangle};
      else if (check_family == "pentagon") popts.families = {GridKind::PentagonMacro};
      else if (check_family != "both")
        throw sfwg::ConfigError("unknown family '" + check_family + "'");
      return run_check(popts);
    }
    if (emit_cmd->parsed()) {
      if (emit_kind == "triangle") emit_family.kind = sfwg::GridKind::UniformTriangle;
      else if (emit_kind == "pentagon") emit_family.kind = sfwg::GridKind::PentagonMacro;
      else throw sfwg::ConfigError("unknown family '" + emit_kind + "'");
      if (emit_family.level < 1 || emit_family.level > 8)
        throw sfwg::ConfigError("mesh emit level must lie in [1, 8]");
      sfwg::PolyMesh mesh = sfwg::generate(emit_family);
      std::ofstream f(emit_out);
      if (!f) throw sfwg::ConfigError("cannot open output path '" + emit_out + "'");
      sfwg::write_mesh(mesh, f);
      return 0;
    }
  } catch (const sfwg::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const sfwg::IterativeFailure& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 3;
  } catch (const sfwg::NotSpdError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
