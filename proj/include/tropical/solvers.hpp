#pragma once

/**
 * @file solvers.hpp
 * @brief Direct, closed-form solutions to tropical optimization problems.
 *
 * Every solver validates its preconditions first and either returns the
 * optimum together with a description of the full solution set, or an
 * infeasible report naming the failed condition. Dimension mismatches are
 * input errors and throw.
 *
 * The minimum of a problem is found by treating it as a parameter, reducing
 * "objective <= parameter" to a linear inequality A x (+) b <= x and reading
 * the least admissible parameter off that inequality's existence condition.
 * The formulas below are the results of that reduction.
 */

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tropical/linear_systems.hpp"
#include "tropical/problem.hpp"

namespace tropical {

enum class Status { solved, infeasible };

struct Diagnostic {
  std::string check;
  bool passed = false;
};

/// { alpha * direction : alpha > zero }.
template <Semifield F>
struct RaySolution {
  Vector<F> direction;
};

/// Solutions of the span maximization problems: one coordinate k is pinned to
/// alpha * point_k, the others satisfy x_j <= alpha * point_j. When `map` is
/// set the family describes u and the solutions are x = map * u.
template <Semifield F>
struct ComponentwiseFamily {
  struct Branch {
    Index pinned = 0;     // k
    Index bound_row = 0;  // s
    Vector<F> point;      // alpha = one, every free coordinate at its bound
  };
  /// One branch per maximizing (k, s) pair; ties are all listed, without a
  /// claim that they exhaust the solution set.
  std::vector<Branch> branches;
  std::optional<Matrix<F>> map;
};

template <Semifield F>
using SolutionSet = std::variant<std::monostate, BoxSolutionSet<F>, GeneratedSolutionSet<F>,
                                 RaySolution<F>, ComponentwiseFamily<F>>;

template <Semifield F>
struct OptimumReport {
  ProblemKind kind = ProblemKind::cheb_box;
  Status status = Status::infeasible;
  Scalar<F> optimum;
  SolutionSet<F> solution;
  /// False when the solution object describes some, not necessarily all, optimal points.
  bool complete = true;
  /// Machine-readable code when infeasible: NO_REGULAR_SOLUTION,
  /// INFEASIBLE_BOUNDS or PRECONDITION_FAILED.
  std::string reason;
  std::vector<Diagnostic> diagnostics;

  bool solved() const { return status == Status::solved; }
};

namespace detail {

template <Semifield F>
class ReportBuilder {
 public:
  explicit ReportBuilder(ProblemKind kind) { report_.kind = kind; }

  /// Records a check. The first failing check decides the reason code.
  ReportBuilder& require(std::string check, bool passed,
                         std::string_view reason = "PRECONDITION_FAILED") {
    report_.diagnostics.push_back({std::move(check), passed});
    if (!passed && report_.reason.empty()) report_.reason = std::string(reason);
    return *this;
  }

  /// A check that follows from the others; recorded but never gating.
  void note(std::string check, bool passed) { report_.diagnostics.push_back({std::move(check), passed}); }

  bool failed() const { return !report_.reason.empty(); }

  OptimumReport<F> infeasible() && {
    report_.status = Status::infeasible;
    return std::move(report_);
  }

  OptimumReport<F> solved(Scalar<F> optimum, SolutionSet<F> solution, bool complete = true) && {
    report_.status = Status::solved;
    report_.optimum = std::move(optimum);
    report_.solution = std::move(solution);
    report_.complete = complete;
    return std::move(report_);
  }

 private:
  OptimumReport<F> report_;
};

inline void expect(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::shape_mismatch, what);
}

template <class D>
void expect_square(const Eigen::MatrixBase<D>& a, Index n, const char* name) {
  expect(a.rows() == n && a.cols() == n,
         std::string(name) + " must be " + std::to_string(n) + "x" + std::to_string(n));
}

template <class D>
void expect_size(const Eigen::MatrixBase<D>& v, Index n, const char* name) {
  expect(v.size() == n, std::string(name) + " must have " + std::to_string(n) + " entries");
}

/// fn(parts) for every tuple of `length` nonnegative integers whose sum lies in [lo, hi].
template <class Fn>
void for_each_composition(int length, int lo, int hi, Fn&& fn) {
  if (hi < 0 || length < 0) return;
  std::vector<int> parts(static_cast<std::size_t>(length), 0);
  auto rec = [&](auto& self, int pos, int sum) -> void {
    if (pos == length) {
      if (sum >= lo) fn(parts);
      return;
    }
    for (int v = 0; sum + v <= hi; ++v) {
      parts[static_cast<std::size_t>(pos)] = v;
      self(self, pos + 1, sum + v);
    }
  };
  rec(rec, 0, 0);
}

template <Semifield F>
Scalar<F> root(const Scalar<F>& x, std::int64_t k) {
  return power(x, Rational(1, k));
}

/// Upper bound (w)^- of a bound row w, or none when w vanishes.
template <Semifield F>
std::optional<Vector<F>> upper_from_row(const RowVector<F>& w) {
  if (is_zero(w)) return std::nullopt;
  return Vector<F>(conj(w));
}

/// theta = lambda (+) (+)_{k=1}^{n-1} (+)_{1 <= i_1+...+i_k <= n-k} tr^{1/k}(A B^i1 ... A B^ik).
template <Semifield F>
Scalar<F> lower_constrained_radius(const Matrix<F>& a, const Matrix<F>& b) {
  const auto n = static_cast<int>(a.rows());
  const auto bpow = powers(b, n + 1);
  Scalar<F> theta = spectral_radius(a);
  for (int k = 1; k <= n - 1; ++k) {
    for_each_composition(k, 1, n - k, [&](const std::vector<int>& parts) {
      Matrix<F> m = identity<F>(n);
      for (int i : parts) m = otimes(otimes(m, a), bpow[static_cast<std::size_t>(i)]);
      theta = oplus(theta, root(trace(m), k));
    });
  }
  return theta;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Chebyshev-like approximation

/// minimize q^- x (+) x^- p subject to g <= x <= h.
template <Semifield F>
OptimumReport<F> solve_cheb_box(const Vector<F>& p, const Vector<F>& q, const Vector<F>& g,
                                const Vector<F>& h) {
  const Index n = p.size();
  detail::expect_size(q, n, "q");
  detail::expect_size(g, n, "g");
  detail::expect_size(h, n, "h");
  detail::ReportBuilder<F> rb(ProblemKind::cheb_box);
  rb.require("p regular", is_regular(p))
      .require("q regular", is_regular(q))
      .require("h regular", is_regular(h), "NO_REGULAR_SOLUTION")
      .require("g <= h", leq(g, h), "INFEASIBLE_BOUNDS");
  if (rb.failed()) return std::move(rb).infeasible();

  const RowVector<F> qc = conj(q);
  const RowVector<F> hc = conj(h);
  const Scalar<F> mu = oplus(oplus(detail::root(dot(qc, p), 2), dot(qc, g)), dot(hc, p));
  const Scalar<F> mu_inv = inverse(mu);
  Vector<F> lower = oplus(otimes(mu_inv, p), g);
  Vector<F> upper = conj(oplus(otimes(mu_inv, qc), hc));
  return std::move(rb).solved(mu, BoxSolutionSet<F>::make(std::move(lower), std::move(upper)));
}

/// minimize q^- A x (+) (A x)^- p subject to x >= g. Reports one attaining point.
template <Semifield F>
OptimumReport<F> solve_cheb_image_lower(const Matrix<F>& a, const Vector<F>& p,
                                        const Vector<F>& q, const Vector<F>& g) {
  detail::expect_size(p, a.rows(), "p");
  detail::expect_size(q, a.rows(), "q");
  detail::expect_size(g, a.cols(), "g");
  detail::ReportBuilder<F> rb(ProblemKind::cheb_image_lower);
  rb.require("A regular", is_regular(a))
      .require("p regular", is_regular(p))
      .require("q regular", is_regular(q));
  if (rb.failed()) return std::move(rb).infeasible();

  const RowVector<F> qa = otimes(conj(q), a);
  const Vector<F> qa_conj = conj(qa);
  const Scalar<F> mu = oplus(detail::root(dot(conj(otimes(a, qa_conj)), p), 2), dot(qa, g));
  Vector<F> x = otimes(mu, qa_conj);
  return std::move(rb).solved(mu, BoxSolutionSet<F>::make(x, x), /*complete=*/false);
}

/// minimize x^- p (+) q^- x subject to B x (+) g <= x, x <= h.
template <Semifield F>
OptimumReport<F> solve_cheb_kleene_box(const Matrix<F>& b, const Vector<F>& p,
                                       const Vector<F>& q, const Vector<F>& g,
                                       const Vector<F>& h) {
  const Index n = b.rows();
  detail::expect_square(b, n, "B");
  detail::expect_size(p, n, "p");
  detail::expect_size(q, n, "q");
  detail::expect_size(g, n, "g");
  detail::expect_size(h, n, "h");
  detail::ReportBuilder<F> rb(ProblemKind::cheb_kleene_box);
  auto star = kleene_star(b);
  rb.require("Tr(B) <= 1", star.closure_valid, "NO_REGULAR_SOLUTION")
      .require("p nonzero", !is_zero(p))
      .require("q regular", is_regular(q))
      .require("h regular", is_regular(h));
  if (rb.failed()) return std::move(rb).infeasible();
  const Matrix<F>& bs = star.matrix;
  const RowVector<F> hc = conj(h);
  rb.require("h^- B* g <= 1", dot(otimes(hc, bs), g) <= Scalar<F>::one(), "INFEASIBLE_BOUNDS");
  if (rb.failed()) return std::move(rb).infeasible();

  const RowVector<F> qc = conj(q);
  const Vector<F> bp = otimes(bs, p);
  const Scalar<F> theta =
      oplus(oplus(detail::root(dot(qc, bp), 2), dot(hc, bp)), dot(otimes(qc, bs), g));
  const Scalar<F> theta_inv = inverse(theta);
  Vector<F> lower = oplus(g, otimes(theta_inv, p));
  auto upper = detail::upper_from_row<F>(otimes(oplus(hc, otimes(theta_inv, qc)), bs));
  return std::move(rb).solved(
      theta, GeneratedSolutionSet<F>::make(bs, std::move(lower), std::move(upper)));
}

/// minimize x^- p (+) q^- x subject to B x <= x.
template <Semifield F>
OptimumReport<F> solve_cheb_kleene(const Matrix<F>& b, const Vector<F>& p, const Vector<F>& q) {
  const Index n = b.rows();
  detail::expect_square(b, n, "B");
  detail::expect_size(p, n, "p");
  detail::expect_size(q, n, "q");
  detail::ReportBuilder<F> rb(ProblemKind::cheb_kleene);
  auto star = kleene_star(b);
  rb.require("Tr(B) <= 1", star.closure_valid, "NO_REGULAR_SOLUTION")
      .require("p nonzero", !is_zero(p))
      .require("q regular", is_regular(q));
  if (rb.failed()) return std::move(rb).infeasible();

  const Matrix<F>& bs = star.matrix;
  const RowVector<F> qbs = otimes(conj(q), bs);
  const Scalar<F> theta = detail::root(dot(qbs, p), 2);
  Vector<F> lower = otimes(inverse(theta), p);
  Vector<F> upper = otimes(theta, Vector<F>(conj(qbs)));
  return std::move(rb).solved(
      theta, GeneratedSolutionSet<F>::make(bs, std::move(lower), std::move(upper)));
}

// ---------------------------------------------------------------------------
// Span seminorm

/// minimize q^- B x (A x)^- p.
template <Semifield F>
OptimumReport<F> solve_span_min(const Matrix<F>& a, const Matrix<F>& b, const Vector<F>& p,
                                const Vector<F>& q) {
  detail::expect(a.rows() == b.rows() && a.cols() == b.cols(), "A and B must have the same shape");
  detail::expect_size(p, a.rows(), "p");
  detail::expect_size(q, a.rows(), "q");
  detail::ReportBuilder<F> rb(ProblemKind::span_min);
  rb.require("A row-regular", is_row_regular(a))
      .require("B column-regular", is_column_regular(b))
      .require("p nonzero", !is_zero(p))
      .require("q regular", is_regular(q));
  if (rb.failed()) return std::move(rb).infeasible();

  Vector<F> direction = conj(otimes(conj(q), b));
  const Scalar<F> delta = dot(conj(otimes(a, direction)), p);
  return std::move(rb).solved(delta, RaySolution<F>{std::move(direction)});
}

/// minimize 1^T A x (A x)^- 1.
template <Semifield F>
OptimumReport<F> solve_span_min_special(const Matrix<F>& a) {
  if (!is_regular(a)) {
    detail::ReportBuilder<F> rb(ProblemKind::span_min_special);
    rb.require("A regular", false);
    return std::move(rb).infeasible();
  }
  const Vector<F> one = ones<F>(a.rows());
  OptimumReport<F> out = solve_span_min(a, a, one, one);
  out.kind = ProblemKind::span_min_special;
  out.diagnostics.insert(out.diagnostics.begin(), Diagnostic{"A regular", true});
  return out;
}

/// minimize 1^T y y^- 1 subject to C x = y, D x <= x.
template <Semifield F>
OptimumReport<F> solve_span_min_constrained(const Matrix<F>& c, const Matrix<F>& d) {
  const Index n = c.cols();
  detail::expect_square(d, n, "D");
  detail::ReportBuilder<F> rb(ProblemKind::span_min_constrained);
  auto star = kleene_star(d);
  rb.require("C regular", is_regular(c))
      .require("Tr(D) <= 1", star.closure_valid, "NO_REGULAR_SOLUTION");
  if (rb.failed()) return std::move(rb).infeasible();

  const Matrix<F> cd = otimes(c, star.matrix);
  const Vector<F> w = conj(otimes(RowVector<F>(ones<F>(c.rows()).transpose()), cd));
  const Scalar<F> delta = dot(conj(otimes(cd, w)), ones<F>(c.rows()));
  return std::move(rb).solved(delta, RaySolution<F>{otimes(star.matrix, w)});
}

namespace detail {

/// Branches (k, s) of the span maximization family for given column scores.
template <Semifield F>
std::vector<typename ComponentwiseFamily<F>::Branch> span_max_branches(
    const Matrix<F>& a, const Vector<F>& p, const std::vector<Scalar<F>>& score) {
  Scalar<F> best;
  for (const auto& s : score) best = oplus(best, s);
  std::vector<typename ComponentwiseFamily<F>::Branch> out;
  for (Index k = 0; k < a.cols(); ++k) {
    if (!(score[static_cast<std::size_t>(k)] == best)) continue;
    Scalar<F> row_best;
    for (Index i = 0; i < a.rows(); ++i) row_best = oplus(row_best, odivide(p(i), a(i, k)));
    for (Index s = 0; s < a.rows(); ++s) {
      if (!(odivide(p(s), a(s, k)) == row_best)) continue;
      Vector<F> point(a.cols());
      for (Index j = 0; j < a.cols(); ++j) point(j) = odivide(p(s), a(s, j));
      // a_k^- p equals a_sk^-1 p_s for the maximizing s.
      point(k) = row_best;
      out.push_back({k, s, std::move(point)});
    }
  }
  return out;
}

}  // namespace detail

/// maximize q^- B x (A x)^- p.
template <Semifield F>
OptimumReport<F> solve_span_max(const Matrix<F>& a, const Matrix<F>& b, const Vector<F>& p,
                                const Vector<F>& q) {
  detail::expect(a.cols() == b.cols(), "A and B must have the same number of columns");
  detail::expect_size(p, a.rows(), "p");
  detail::expect_size(q, b.rows(), "q");
  detail::ReportBuilder<F> rb(ProblemKind::span_max);
  rb.require("A has regular columns", has_regular_columns(a))
      .require("B column-regular", is_column_regular(b))
      .require("p regular", is_regular(p))
      .require("q regular", is_regular(q));
  if (rb.failed()) return std::move(rb).infeasible();

  const RowVector<F> qc = conj(q);
  const Scalar<F> delta = dot(otimes(otimes(qc, b), conj(a)), p);
  std::vector<Scalar<F>> score;
  for (Index i = 0; i < a.cols(); ++i) {
    score.push_back(otimes(dot(qc, b.col(i)), dot(conj(a.col(i)), p)));
  }
  ComponentwiseFamily<F> family{detail::span_max_branches(a, p, score), std::nullopt};
  const bool single = family.branches.size() == 1;
  return std::move(rb).solved(delta, std::move(family), single);
}

/// maximize ||B x|| ||(A x)^-||.
template <Semifield F>
OptimumReport<F> solve_span_max_norm(const Matrix<F>& a, const Matrix<F>& b) {
  detail::expect(a.cols() == b.cols(), "A and B must have the same number of columns");
  detail::ReportBuilder<F> rb(ProblemKind::span_max_norm);
  rb.require("A has regular columns", has_regular_columns(a))
      .require("B column-regular", is_column_regular(b));
  if (rb.failed()) return std::move(rb).infeasible();

  const Scalar<F> delta = norm(otimes(b, conj(a)));
  std::vector<Scalar<F>> score;
  for (Index i = 0; i < a.cols(); ++i) score.push_back(otimes(norm(b.col(i)), norm(conj(a.col(i)))));
  ComponentwiseFamily<F> family{detail::span_max_branches(a, ones<F>(a.rows()), score),
                                std::nullopt};
  const bool single = family.branches.size() == 1;
  return std::move(rb).solved(delta, std::move(family), single);
}

/// maximize q^- B x (A x)^- p subject to C x <= x, via x = C* u.
template <Semifield F>
OptimumReport<F> solve_span_max_constrained(const Matrix<F>& a, const Matrix<F>& b,
                                            const Matrix<F>& c, const Vector<F>& p,
                                            const Vector<F>& q) {
  detail::expect_square(c, a.cols(), "C");
  auto star = kleene_star(c);
  if (!star.closure_valid) {
    detail::ReportBuilder<F> rb(ProblemKind::span_max_constrained);
    rb.require("Tr(C) <= 1", false, "NO_REGULAR_SOLUTION");
    return std::move(rb).infeasible();
  }
  OptimumReport<F> out =
      solve_span_max(Matrix<F>(otimes(a, star.matrix)), Matrix<F>(otimes(b, star.matrix)), p, q);
  out.kind = ProblemKind::span_max_constrained;
  out.diagnostics.insert(out.diagnostics.begin(), Diagnostic{"Tr(C) <= 1", true});
  if (auto* family = std::get_if<ComponentwiseFamily<F>>(&out.solution)) {
    family->map = star.matrix;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Spectral radius as an extremal value

/// minimize x^- A x.
template <Semifield F>
OptimumReport<F> solve_rayleigh(const Matrix<F>& a) {
  detail::expect_square(a, a.rows(), "A");
  detail::ReportBuilder<F> rb(ProblemKind::rayleigh);
  const Scalar<F> lambda = spectral_radius(a);
  rb.require("lambda > 0", !lambda.is_zero());
  if (rb.failed()) return std::move(rb).infeasible();
  Matrix<F> gen = kleene_star(otimes(inverse(lambda), a)).matrix;
  return std::move(rb).solved(
      lambda, GeneratedSolutionSet<F>::make(std::move(gen), zero_vector<F>(a.rows()), std::nullopt));
}

/// minimize x^- A x (+) x^- p (+) q^- x (+) r.
template <Semifield F>
OptimumReport<F> solve_rayleigh_affine(const Matrix<F>& a, const Vector<F>& p,
                                       const Vector<F>& q, const Scalar<F>& r) {
  const Index n = a.rows();
  detail::expect_square(a, n, "A");
  detail::expect_size(p, n, "p");
  detail::expect_size(q, n, "q");
  detail::ReportBuilder<F> rb(ProblemKind::rayleigh_affine);
  const Scalar<F> lambda = spectral_radius(a);
  rb.require("lambda > 0", !lambda.is_zero()).require("q regular", is_regular(q));
  if (rb.failed()) return std::move(rb).infeasible();

  const RowVector<F> qc = conj(q);
  Scalar<F> mu = oplus(lambda, r);
  Vector<F> ap = p;  // A^(m-1) p
  for (Index m = 1; m <= n; ++m) {
    if (m > 1) ap = otimes(a, ap);
    mu = oplus(mu, detail::root(dot(qc, ap), m + 1));
  }
  const Scalar<F> mu_inv = inverse(mu);
  Matrix<F> gen = kleene_star(otimes(mu_inv, a)).matrix;
  Vector<F> lower = otimes(mu_inv, p);
  Vector<F> upper = otimes(mu, Vector<F>(conj(otimes(qc, gen))));
  return std::move(rb).solved(
      mu, GeneratedSolutionSet<F>::make(std::move(gen), std::move(lower), std::move(upper)));
}

/// minimize x^- A x subject to B x (+) g <= x, C x <= h.
///
/// Besides a column-regular C, the zero matrix C is accepted: the second
/// constraint then vanishes and the set has no upper bound.
template <Semifield F>
OptimumReport<F> solve_rayleigh_two_constraints(const Matrix<F>& a, const Matrix<F>& b,
                                                const Matrix<F>& c, const Vector<F>& g,
                                                const Vector<F>& h) {
  const Index n = a.rows();
  detail::expect_square(a, n, "A");
  detail::expect_square(b, n, "B");
  detail::expect(c.cols() == n, "C must have " + std::to_string(n) + " columns");
  detail::expect_size(g, n, "g");
  detail::expect_size(h, c.rows(), "h");
  detail::ReportBuilder<F> rb(ProblemKind::rayleigh_two_constraints);
  const Scalar<F> lambda = spectral_radius(a);
  auto bstar = kleene_star(b);
  const bool c_zero = is_zero(c);
  rb.require("lambda > 0", !lambda.is_zero())
      .require("Tr(B) <= 1", bstar.closure_valid, "NO_REGULAR_SOLUTION")
      .require("C column-regular or zero", c_zero || is_column_regular(c))
      .require("h regular", is_regular(h));
  if (rb.failed()) return std::move(rb).infeasible();
  const RowVector<F> hc = conj(h);
  const RowVector<F> hcc = otimes(hc, c);
  rb.require("h^- C B* g <= 1", dot(otimes(hcc, bstar.matrix), g) <= Scalar<F>::one(),
             "INFEASIBLE_BOUNDS");
  if (rb.failed()) return std::move(rb).infeasible();

  const auto nn = static_cast<int>(n);
  const auto bpow = powers(b, n + 1);
  const Matrix<F> tail = oplus(identity<F>(n), Matrix<F>(otimes(g, hcc)));
  Scalar<F> theta;
  for (int k = 1; k <= nn; ++k) {
    detail::for_each_composition(k + 1, 0, nn - k, [&](const std::vector<int>& parts) {
      Matrix<F> m = bpow[static_cast<std::size_t>(parts[0])];
      for (int j = 1; j <= k; ++j) {
        m = otimes(otimes(m, a), bpow[static_cast<std::size_t>(parts[static_cast<std::size_t>(j)])]);
      }
      theta = oplus(theta, detail::root(trace(otimes(m, tail)), k));
    });
  }
  const Matrix<F> gen = kleene_star(oplus(otimes(inverse(theta), a), b)).matrix;
  auto upper = detail::upper_from_row<F>(otimes(hcc, gen));
  return std::move(rb).solved(theta, GeneratedSolutionSet<F>::make(gen, g, std::move(upper)));
}

/// minimize x^- A x subject to B x (+) g <= x.
template <Semifield F>
OptimumReport<F> solve_rayleigh_lower(const Matrix<F>& a, const Matrix<F>& b, const Vector<F>& g) {
  const Index n = a.rows();
  detail::expect_square(a, n, "A");
  detail::expect_square(b, n, "B");
  detail::expect_size(g, n, "g");
  detail::ReportBuilder<F> rb(ProblemKind::rayleigh_lower);
  rb.require("lambda > 0", !spectral_radius(a).is_zero())
      .require("Tr(B) <= 1", tr_functional(b) <= Scalar<F>::one(), "NO_REGULAR_SOLUTION");
  if (rb.failed()) return std::move(rb).infeasible();

  const Scalar<F> theta = detail::lower_constrained_radius(a, b);
  Matrix<F> gen = kleene_star(oplus(otimes(inverse(theta), a), b)).matrix;
  return std::move(rb).solved(theta,
                              GeneratedSolutionSet<F>::make(std::move(gen), g, std::nullopt));
}

/// minimize x^- A x subject to g <= x <= h.
template <Semifield F>
OptimumReport<F> solve_rayleigh_box(const Matrix<F>& a, const Vector<F>& g, const Vector<F>& h) {
  const Index n = a.rows();
  detail::expect_square(a, n, "A");
  detail::expect_size(g, n, "g");
  detail::expect_size(h, n, "h");
  detail::ReportBuilder<F> rb(ProblemKind::rayleigh_box);
  const Scalar<F> lambda = spectral_radius(a);
  rb.require("lambda > 0", !lambda.is_zero()).require("h regular", is_regular(h));
  if (rb.failed()) return std::move(rb).infeasible();
  const RowVector<F> hc = conj(h);
  rb.require("h^- g <= 1", dot(hc, g) <= Scalar<F>::one(), "INFEASIBLE_BOUNDS");
  if (rb.failed()) return std::move(rb).infeasible();

  Scalar<F> theta = lambda;
  Vector<F> ag = g;
  for (Index k = 1; k <= n; ++k) {
    ag = otimes(a, ag);
    theta = oplus(theta, detail::root(dot(hc, ag), k));
  }
  Matrix<F> gen = kleene_star(otimes(inverse(theta), a)).matrix;
  auto upper = detail::upper_from_row<F>(otimes(hc, gen));
  return std::move(rb).solved(theta,
                              GeneratedSolutionSet<F>::make(std::move(gen), g, std::move(upper)));
}

/// minimize x^- A x (+) x^- p subject to B x (+) g <= x.
template <Semifield F>
OptimumReport<F> solve_rayleigh_p_lower(const Matrix<F>& a, const Matrix<F>& b,
                                        const Vector<F>& p, const Vector<F>& g) {
  const Index n = a.rows();
  detail::expect_square(a, n, "A");
  detail::expect_square(b, n, "B");
  detail::expect_size(p, n, "p");
  detail::expect_size(g, n, "g");
  detail::ReportBuilder<F> rb(ProblemKind::rayleigh_p_lower);
  rb.require("lambda > 0", !spectral_radius(a).is_zero())
      .require("Tr(B) <= 1", tr_functional(b) <= Scalar<F>::one(), "NO_REGULAR_SOLUTION");
  if (rb.failed()) return std::move(rb).infeasible();

  const Scalar<F> theta = detail::lower_constrained_radius(a, b);
  const Scalar<F> theta_inv = inverse(theta);
  Matrix<F> gen = kleene_star(oplus(otimes(theta_inv, a), b)).matrix;
  Vector<F> lower = oplus(otimes(theta_inv, p), g);
  return std::move(rb).solved(
      theta, GeneratedSolutionSet<F>::make(std::move(gen), std::move(lower), std::nullopt));
}

/// minimize x^- A x (+) x^- p (+) q^- x (+) r subject to g <= x <= h.
template <Semifield F>
OptimumReport<F> solve_new_boxed_spectral(const Matrix<F>& a, const Vector<F>& p,
                                          const Vector<F>& q, const Vector<F>& g,
                                          const Vector<F>& h, const Scalar<F>& r) {
  const Index n = a.rows();
  detail::expect_square(a, n, "A");
  detail::expect_size(p, n, "p");
  detail::expect_size(q, n, "q");
  detail::expect_size(g, n, "g");
  detail::expect_size(h, n, "h");
  detail::ReportBuilder<F> rb(ProblemKind::new_boxed_spectral);
  const Scalar<F> lambda = spectral_radius(a);
  rb.require("lambda > 0", !lambda.is_zero())
      .require("q regular", is_regular(q))
      .require("h regular", is_regular(h));
  if (rb.failed()) return std::move(rb).infeasible();
  const RowVector<F> qc = conj(q);
  const RowVector<F> hc = conj(h);
  rb.require("h^- g <= 1", dot(hc, g) <= Scalar<F>::one(), "INFEASIBLE_BOUNDS");
  if (rb.failed()) return std::move(rb).infeasible();

  Scalar<F> mu = oplus(lambda, r);
  Vector<F> ap = p;  // A^m p
  Vector<F> ag = g;  // A^m g
  for (Index m = 0; m < n; ++m) {
    if (m > 0) {
      ap = otimes(a, ap);
      ag = otimes(a, ag);
    }
    mu = oplus(mu, detail::root(dot(qc, ap), m + 2));
    mu = oplus(mu, detail::root(oplus(dot(qc, ag), dot(hc, ap)), m + 1));
    if (m > 0) mu = oplus(mu, detail::root(dot(hc, ag), m));
  }
  const Scalar<F> mu_inv = inverse(mu);
  const Matrix<F> scaled = otimes(mu_inv, a);
  rb.note("Tr(mu^-1 A) <= 1", tr_functional(scaled) <= Scalar<F>::one());
  Matrix<F> gen = kleene_star(scaled).matrix;
  Vector<F> lower = oplus(otimes(mu_inv, p), g);
  auto upper = detail::upper_from_row<F>(otimes(oplus(otimes(mu_inv, qc), hc), gen));
  return std::move(rb).solved(
      mu, GeneratedSolutionSet<F>::make(std::move(gen), std::move(lower), std::move(upper)));
}

// ---------------------------------------------------------------------------

/// Dispatch on the problem kind.
template <Semifield F>
OptimumReport<F> solve(const Problem<F>& pr) {
  switch (pr.kind) {
    case ProblemKind::cheb_box:
      return solve_cheb_box(pr.vector('p'), pr.vector('q'), pr.vector('g'), pr.vector('h'));
    case ProblemKind::cheb_image_lower:
      return solve_cheb_image_lower(pr.matrix('A'), pr.vector('p'), pr.vector('q'), pr.vector('g'));
    case ProblemKind::cheb_kleene_box:
      return solve_cheb_kleene_box(pr.matrix('B'), pr.vector('p'), pr.vector('q'), pr.vector('g'),
                                   pr.vector('h'));
    case ProblemKind::cheb_kleene:
      return solve_cheb_kleene(pr.matrix('B'), pr.vector('p'), pr.vector('q'));
    case ProblemKind::span_min:
      return solve_span_min(pr.matrix('A'), pr.matrix('B'), pr.vector('p'), pr.vector('q'));
    case ProblemKind::span_min_special:
      return solve_span_min_special(pr.matrix('A'));
    case ProblemKind::span_min_constrained:
      return solve_span_min_constrained(pr.matrix('C'), pr.matrix('D'));
    case ProblemKind::span_max:
      return solve_span_max(pr.matrix('A'), pr.matrix('B'), pr.vector('p'), pr.vector('q'));
    case ProblemKind::span_max_norm:
      return solve_span_max_norm(pr.matrix('A'), pr.matrix('B'));
    case ProblemKind::span_max_constrained:
      return solve_span_max_constrained(pr.matrix('A'), pr.matrix('B'), pr.matrix('C'),
                                        pr.vector('p'), pr.vector('q'));
    case ProblemKind::rayleigh:
      return solve_rayleigh(pr.matrix('A'));
    case ProblemKind::rayleigh_affine:
      return solve_rayleigh_affine(pr.matrix('A'), pr.vector('p'), pr.vector('q'), pr.scalar_r());
    case ProblemKind::rayleigh_two_constraints:
      return solve_rayleigh_two_constraints(pr.matrix('A'), pr.matrix('B'), pr.matrix('C'),
                                            pr.vector('g'), pr.vector('h'));
    case ProblemKind::rayleigh_lower:
      return solve_rayleigh_lower(pr.matrix('A'), pr.matrix('B'), pr.vector('g'));
    case ProblemKind::rayleigh_box:
      return solve_rayleigh_box(pr.matrix('A'), pr.vector('g'), pr.vector('h'));
    case ProblemKind::rayleigh_p_lower:
      return solve_rayleigh_p_lower(pr.matrix('A'), pr.matrix('B'), pr.vector('p'), pr.vector('g'));
    case ProblemKind::new_boxed_spectral:
      return solve_new_boxed_spectral(pr.matrix('A'), pr.vector('p'), pr.vector('q'),
                                      pr.vector('g'), pr.vector('h'), pr.scalar_r());
  }
  throw Error(ErrorCode::parse, "unknown problem kind");
}

}  // namespace tropical
