// tropical: solve, verify and generate tropical optimization problems.
//
//   tropical solve problem.json [--json]
//   tropical verify problem.json [--samples N] [--seed S] [--step R] [--window W] [--radius R]
//   tropical gen cheb_box [--n 3] [--seed S] [--semifield max-plus]
//   tropical algebra spectral matrix.txt [--semifield min-plus]

#include <iostream>

#include <CLI11.hpp>

#include "tropical/commands.hpp"
#include "tropical/error.hpp"

namespace {

tropical::Rational to_rational(const std::string& text) { return tropical::parse_rational(text); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Closed-form tropical optimization with brute-force verification"};
  app.require_subcommand(1);

  tropical::CommandOptions opt;
  std::string path, kind, operation;
  std::string step, window, radius;

  auto* solve = app.add_subcommand("solve", "Solve a problem file");
  solve->add_option("file", path, "Problem file (JSON)")->required();
  solve->add_flag("--json", opt.json, "Emit the structured report");

  auto* verify = app.add_subcommand("verify", "Solve, then cross-check with the grid and sampling oracle");
  verify->add_option("file", path, "Problem file (JSON)")->required();
  verify->add_flag("--json", opt.json, "Emit the structured report");
  verify->add_option("--samples", opt.samples, "Solution-set members to check");
  verify->add_option("--seed", opt.seed, "Sampling seed");
  verify->add_option("--step", step, "Grid step, e.g. 1/4 (default 1/lcm(1..n+1))");
  verify->add_option("--window", window, "Sampling window for unbounded directions (log units)");
  verify->add_option("--radius", radius, "Grid half-width around the reported solution (log units)");
  verify->add_option("--grid-cap", opt.grid_cap, "Maximum number of grid points");

  auto* gen = app.add_subcommand("gen", "Generate a random instance satisfying the kind's preconditions");
  gen->add_option("kind", kind, "Problem kind")->required();
  gen->add_option("--n", opt.n, "Number of unknowns")->check(CLI::Range(1, 8));
  gen->add_option("--seed", opt.seed, "Generator seed");
  gen->add_option("--semifield", opt.semifield, "max-plus, min-plus, max-times or min-times");

  auto* algebra = app.add_subcommand("algebra", "Kleene star, spectral radius or Tr of a matrix");
  algebra->add_option("operation", operation, "star, spectral or tr")->required();
  algebra->add_option("file", path, "Matrix file: JSON array of rows, or text rows")->required();
  algebra->add_option("--semifield", opt.semifield, "max-plus, min-plus, max-times or min-times");
  algebra->add_flag("--json", opt.json, "Emit JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : tropical::kExitInputError;
  }

  try {
    if (!step.empty()) opt.step = to_rational(step);
    if (!window.empty()) opt.window = to_rational(window);
    if (!radius.empty()) opt.radius = to_rational(radius);
  } catch (const tropical::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return tropical::kExitInputError;
  }

  if (*solve) return tropical::cmd_solve(path, opt, std::cout, std::cerr);
  if (*verify) return tropical::cmd_verify(path, opt, std::cout, std::cerr);
  if (*gen) return tropical::cmd_gen(kind, opt, std::cout, std::cerr);
  return tropical::cmd_algebra(operation, path, opt, std::cout, std::cerr);
}
