// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tropical/commands.hpp"
#include "tropical/document.hpp"
#include "tropical/generator.hpp"
#include "tropical/oracle.hpp"
#include "tropical/solvers.hpp"

using namespace tropical;
using MP = MaxPlus;

namespace {

// Pinned limits. All comparisons below are exact rational equalities.
constexpr double kSpectralSeconds = 10.0;
constexpr double kSolverGridSeconds = 300.0;
constexpr std::int64_t kSamplesPerInstance = 20;
constexpr std::int64_t kSubFixpointSamples = 50;
constexpr std::int64_t kGridLow = -8;
constexpr std::int64_t kGridHigh = 8;
const Rational kLooseLow{-100};
const Rational kLooseHigh{100};

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  Scalar<MP> entry() { return integer(0, 4) == 0 ? Scalar<MP>::zero() : Scalar<MP>::from_int(integer(-5, 5)); }
  Matrix<MP> matrix(Index m, Index n) {
    Matrix<MP> a(m, n);
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < n; ++j) a(i, j) = entry();
    return a;
  }
  Vector<MP> vector(Index n) {
    Vector<MP> v(n);
    for (Index i = 0; i < n; ++i) v(i) = entry();
    return v;
  }

 private:
  std::mt19937_64 eng_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Vector<MP> constant(Index n, const Rational& v) { return Vector<MP>::Constant(n, Scalar<MP>(v)); }

Outcome spectral_equivalence() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(1001);
  for (int t = 0; t < 500; ++t) {
    const Index n = rng.integer(1, 5);
    const auto a = rng.matrix(n, n);
    const auto fast = spectral_radius(a);
    const auto slow = oracle::cycle_mean_radius(a);
    if (!(fast == slow)) o.fail("instance " + std::to_string(t) + ": " + to_string(fast) + " vs " + to_string(slow));
  }
  const double s = seconds_since(t0);
  if (s >= kSpectralSeconds) o.fail("took " + std::to_string(s) + " s");
  if (o.pass) o.detail = "500 matrices, " + std::to_string(s) + " s";
  return o;
}

Outcome principal_solution() {
  Outcome o;
  Rng rng(1002);
  const auto bump = Scalar<MP>::from_int(1);
  int done = 0;
  while (done < 500) {
    const Index m = rng.integer(1, 5), n = rng.integer(1, 5);
    const auto a = rng.matrix(m, n);
    if (!is_column_regular(a)) continue;
    Vector<MP> d(m);
    for (Index i = 0; i < m; ++i) d(i) = Scalar<MP>::from_int(rng.integer(-5, 5));
    const auto x = *principal_solution_leq(a, d).upper;
    if (!oracle::satisfies_leq(a, x, d)) o.fail("principal solution infeasible at instance " + std::to_string(done));
    for (Index j = 0; j < n; ++j) {
      Vector<MP> y = x;
      y(j) = otimes(y(j), bump);
      if (oracle::satisfies_leq(a, y, d)) o.fail("bump of x_" + std::to_string(j + 1) + " stays feasible");
    }
    ++done;
  }
  if (o.pass) o.detail = "500 instances";
  return o;
}

Outcome sub_fixpoint_dichotomy() {
  Outcome o;
  Rng rng(1003);
  int bounded = 0, unbounded = 0, gridded = 0;
  for (int t = 0; t < 500; ++t) {
    const Index n = rng.integer(1, 4);
    const auto a = rng.matrix(n, n);
    const auto b = rng.vector(n);
    const auto set = solve_sub_fixpoint(a, b);
    if (tr_functional(a) <= Scalar<MP>::one()) {
      ++bounded;
      if (set.empty()) o.fail("Tr(A) <= 1 but reported empty");
      const SolutionSet<MP> s = set;
      for (const auto& x : oracle::sample_solution_set(s, kSubFixpointSamples, std::uint64_t(t))) {
        if (!oracle::satisfies_sub_fixpoint(a, b, x)) o.fail("sample violates A x (+) b <= x");
      }
    } else {
      ++unbounded;
      if (!set.empty()) o.fail("Tr(A) > 1 but reported nonempty");
      if (n > 3) continue;
      ++gridded;
      std::vector<std::int64_t> idx(static_cast<std::size_t>(n), kGridLow);
      Vector<MP> x(n);
      for (;;) {
        for (Index i = 0; i < n; ++i) x(i) = Scalar<MP>::from_int(idx[static_cast<std::size_t>(i)]);
        if (oracle::satisfies_sub_fixpoint(a, b, x)) {
          o.fail("Tr(A) > 1 yet a grid point solves it");
          break;
        }
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] > kGridHigh) idx[k++] = kGridLow;
        if (k == idx.size()) break;
      }
    }
  }
  if (o.pass) {
    o.detail = std::to_string(bounded) + " with Tr <= 1, " + std::to_string(unbounded) + " without (" +
               std::to_string(gridded) + " grid-checked)";
  }
  return o;
}

Outcome solver_vs_grid() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::int64_t points = 0;
  for (const auto kind : kAllKinds) {
    const Index max_n = kind == ProblemKind::rayleigh_two_constraints ? 2 : 3;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const Index n = 1 + Index(seed % std::uint64_t(max_n));
      const auto pr = generate_problem<MP>(kind, n, seed);
      const auto rep = solve(pr);
      const std::string where = std::string(kind_name(kind)) + " seed " + std::to_string(seed);
      if (!rep.solved()) {
        o.fail(where + ": " + rep.reason);
        continue;
      }
      oracle::VerifyOptions opt;
      opt.samples = kSamplesPerInstance;
      opt.seed = seed;
      const auto vr = oracle::verify_report(pr, rep, opt);
      points += vr.grid_points;
      for (const auto& c : vr.checks) {
        if (!c.passed) o.fail(where + ": " + c.name + " " + c.detail);
      }
      if (vr.samples_checked < kSamplesPerInstance) o.fail(where + ": too few samples");
    }
  }
  const double s = seconds_since(t0);
  if (s >= kSolverGridSeconds) o.fail("took " + std::to_string(s) + " s");
  if (o.pass) o.detail = "1700 instances, " + std::to_string(points) + " grid points, " + std::to_string(s) + " s";
  return o;
}

Outcome specialization_lattice() {
  Outcome o;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const Index n = 1 + Index(seed % 3);
    const std::string s = " (seed " + std::to_string(seed) + ")";

    auto tc = generate_problem<MP>(ProblemKind::rayleigh_two_constraints, n, seed);
    const auto c_zero =
        solve_rayleigh_two_constraints(*tc.A, *tc.B, zero_matrix<MP>(n, n), *tc.g, constant(n, 0));
    const auto lower = solve_rayleigh_lower(*tc.A, *tc.B, *tc.g);
    if (!c_zero.solved() || !lower.solved() || !(c_zero.optimum == lower.optimum)) o.fail("C = 0 vs lower" + s);

    auto bx = generate_problem<MP>(ProblemKind::rayleigh_box, n, seed);
    const auto b_zero =
        solve_rayleigh_two_constraints(*bx.A, zero_matrix<MP>(n, n), identity<MP>(n), *bx.g, *bx.h);
    const auto box = solve_rayleigh_box(*bx.A, *bx.g, *bx.h);
    if (!b_zero.solved() || !box.solved() || !(b_zero.optimum == box.optimum)) o.fail("B = 0, C = I vs box" + s);

    auto cb = generate_problem<MP>(ProblemKind::cheb_box, n, seed);
    const auto kleene = solve_cheb_kleene_box(zero_matrix<MP>(n, n), *cb.p, *cb.q, *cb.g, *cb.h);
    const auto cheb = solve_cheb_box(*cb.p, *cb.q, *cb.g, *cb.h);
    if (!kleene.solved() || !cheb.solved() || !(kleene.optimum == cheb.optimum)) o.fail("B = 0 vs cheb_box" + s);

    auto af = generate_problem<MP>(ProblemKind::rayleigh_affine, n, seed);
    const auto loose = solve_new_boxed_spectral(*af.A, *af.p, *af.q, constant(n, kLooseLow),
                                                constant(n, kLooseHigh), *af.r);
    const auto affine = solve_rayleigh_affine(*af.A, *af.p, *af.q, *af.r);
    if (!loose.solved() || !affine.solved() || !(loose.optimum == affine.optimum)) o.fail("loose box vs affine" + s);
  }
  if (o.pass) o.detail = "4 x 200 instances";
  return o;
}

Outcome stated_value() {
  Outcome o;
  const Index n = 3;
  const auto rep = solve_span_min(identity<MP>(n), identity<MP>(n), ones<MP>(n), ones<MP>(n));
  if (!rep.solved()) o.fail(rep.reason);
  else if (!(rep.optimum == Scalar<MP>::one())) o.fail("Delta = " + to_string(rep.optimum));
  else if (!(std::get<RaySolution<MP>>(rep.solution).direction == ones<MP>(n))) o.fail("direction is not 1");
  if (o.pass) o.detail = "Delta = 0, direction (0, 0, 0)";
  return o;
}

Outcome lower_bound_chain() {
  Outcome o;
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    const Index n = 1 + Index(seed % 4);
    const auto pr = generate_problem<MP>(ProblemKind::new_boxed_spectral, n, seed);
    const auto rep = solve(pr);
    const std::string s = " (seed " + std::to_string(seed) + ")";
    if (!rep.solved()) {
      o.fail(rep.reason + s);
      continue;
    }
    const auto lambda = oracle::cycle_mean_radius(*pr.A);
    const auto qp = power(dot(conj(*pr.q), *pr.p), Rational(1, 2));
    const auto bound = oplus(oplus(lambda, qp), *pr.r);
    if (!(bound <= rep.optimum)) o.fail("mu below the bound" + s);
    if (!(tr_functional(Matrix<MP>(otimes(inverse(rep.optimum), *pr.A))) <= Scalar<MP>::one())) {
      o.fail("Tr(mu^-1 A) > 1" + s);
    }
  }
  if (o.pass) o.detail = "500 instances";
  return o;
}

Outcome deterministic_verify() {
  Outcome o;
  CommandOptions gen;
  gen.seed = 2024;
  gen.n = 3;
  std::ostringstream doc, err;
  if (cmd_gen("new_boxed_spectral", gen, doc, err) != kExitOk) {
    o.fail("gen failed: " + err.str());
    return o;
  }
  const auto path = std::filesystem::temp_directory_path() / "tropical_acceptance.json";
  std::ofstream(path) << doc.str();

  CommandOptions opt;
  opt.json = true;
  opt.seed = 99;
  std::ostringstream a, b;
  const int ra = cmd_verify(path.string(), opt, a, err);
  const int rb = cmd_verify(path.string(), opt, b, err);
  std::filesystem::remove(path);
  if (ra != kExitOk || rb != kExitOk) o.fail("exit codes " + std::to_string(ra) + ", " + std::to_string(rb));
  if (a.str() != b.str()) o.fail("reports differ");
  if (a.str().empty()) o.fail("empty report");
  if (o.pass) o.detail = std::to_string(a.str().size()) + " identical bytes";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"spectral radius equals cycle mean", spectral_equivalence},
      {"principal solution feasible and maximal", principal_solution},
      {"A x (+) b <= x solvable iff Tr(A) <= 1", sub_fixpoint_dichotomy},
      {"solvers match the grid oracle", solver_vs_grid},
      {"specializations agree", specialization_lattice},
      {"span_min with A = B = I", stated_value},
      {"new_boxed_spectral lower bound", lower_bound_chain},
      {"verify output is deterministic", deterministic_verify},
  };
  int failures = 0;
  int index = 1;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << index++ << " " << name << ": " << o.detail << std::endl;
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
