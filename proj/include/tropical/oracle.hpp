#pragma once

/**
 * @file oracle.hpp
 * @brief Brute-force cross-checks for the closed-form solvers.
 *
 * Nothing here calls into the matrix algebra or the solvers. Instances are
 * mapped into a max-plus "log domain" (max-plus as is, min-plus negated, the
 * times carriers through +-log2) where (+) is max and (x) is +, and all
 * objectives and constraints are evaluated there directly.
 *
 * For the (.,+) carriers every value is scaled by a common denominator and
 * stored as int64, so evaluation is exact. The (.,x) carriers use doubles and
 * compare with kLogTolerance (log2 units).
 *
 * Grid specs and windows are in log units: the carrier itself for (.,+), the
 * base-2 exponent for (.,x).
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "tropical/solvers.hpp"

namespace tropical::oracle {

inline constexpr std::int64_t kDefaultGridCap = 10'000'000;
/// Sampled interpolation weights are multiples of 1/kSampleDenominator.
inline constexpr std::int64_t kSampleDenominator = 16;
/// Absolute tolerance in log2 units for the (.,x) carriers.
inline constexpr double kLogTolerance = 1e-7;
inline const Rational kDefaultRadius{2};
inline const Rational kDefaultWindow{10};

/// 1 / lcm(1, ..., n+1).
inline Rational default_step(Index n) {
  std::int64_t l = 1;
  for (std::int64_t k = 2; k <= n + 1; ++k) l = std::lcm(l, k);
  return Rational(1, l);
}

struct GridSpec {
  std::vector<Rational> lower;
  std::vector<Rational> upper;
  Rational step{1};
  std::int64_t cap = kDefaultGridCap;

  static GridSpec cube(Index n, Rational lo, Rational hi, Rational step) {
    return {std::vector<Rational>(static_cast<std::size_t>(n), lo),
            std::vector<Rational>(static_cast<std::size_t>(n), hi), step};
  }

  void validate() const {
    if (lower.size() != upper.size()) throw Error(ErrorCode::shape_mismatch, "grid: bound sizes differ");
    if (step <= 0) throw Error(ErrorCode::domain, "grid: step must be positive");
    for (std::size_t i = 0; i < lower.size(); ++i) {
      if (upper[i] < lower[i]) throw Error(ErrorCode::domain, "grid: lower bound above upper bound");
    }
  }
};

template <Semifield F>
struct GridResult {
  std::optional<Scalar<F>> best;  // none: NO_FEASIBLE_POINT
  std::optional<Vector<F>> argbest;
  std::int64_t points = 0;
};

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  std::int64_t samples = 20;
  std::uint64_t seed = 1;
  std::optional<Rational> step;  // default_step(n) when unset
  Rational radius = kDefaultRadius;
  Rational window = kDefaultWindow;
  std::int64_t cap = kDefaultGridCap;
};

template <Semifield F>
struct VerificationReport {
  std::string instance_id;
  ProblemKind kind = ProblemKind::cheb_box;
  Status status = Status::infeasible;
  std::string reason;
  std::optional<Scalar<F>> solver_optimum;
  std::optional<Scalar<F>> grid_optimum;
  std::optional<Vector<F>> grid_argbest;
  /// |difference| for (.,+) carriers, ratio for (.,x) carriers.
  std::optional<std::string> gap;
  std::vector<std::string> feasibility_failures;
  std::int64_t samples_checked = 0;
  std::int64_t grid_points = 0;
  Rational step{1};
  Rational radius;
  Rational window;
  std::uint64_t seed = 0;
  std::vector<Check> checks;

  bool verified() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }
};

namespace detail {

template <class T>
struct Num;

template <>
struct Num<std::int64_t> {
  static constexpr std::int64_t ninf = std::numeric_limits<std::int64_t>::min() / 4;
  static bool le(std::int64_t a, std::int64_t b) { return a <= b; }
  static bool eq(std::int64_t a, std::int64_t b) { return a == b; }
};

template <>
struct Num<double> {
  static constexpr double ninf = -std::numeric_limits<double>::infinity();
  static bool le(double a, double b) { return a == ninf || a <= b + kLogTolerance; }
  static bool eq(double a, double b) {
    if (a == ninf || b == ninf) return a == b;
    return std::abs(a - b) <= kLogTolerance;
  }
};

template <class T>
bool finite(T x) {
  return x != Num<T>::ninf;
}

template <class T>
T mul(T a, T b) {
  return finite(a) && finite(b) ? a + b : Num<T>::ninf;
}

template <class T>
struct LogMatrix {
  Index rows = 0;
  Index cols = 0;
  std::vector<T> v;
  T operator()(Index i, Index j) const { return v[static_cast<std::size_t>(i * cols + j)]; }
};

template <class T>
struct LogProblem {
  ProblemKind kind = ProblemKind::cheb_box;
  Index n = 0;
  LogMatrix<T> A, B, C, D;
  std::vector<T> p, q, g, h;
  T r = Num<T>::ninf;
};

template <class T>
void matvec(const LogMatrix<T>& a, const T* x, T* out) {
  for (Index i = 0; i < a.rows; ++i) {
    T acc = Num<T>::ninf;
    for (Index j = 0; j < a.cols; ++j) {
      T aij = a(i, j);
      if (finite(aij) && finite(x[j])) acc = std::max(acc, aij + x[j]);
    }
    out[i] = acc;
  }
}

/// q^- y
template <class T>
T conj_dot(const std::vector<T>& q, const T* y) {
  T acc = Num<T>::ninf;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (finite(q[i]) && finite(y[i])) acc = std::max(acc, y[i] - q[i]);
  }
  return acc;
}

/// y^- p
template <class T>
T dot_conj(const T* y, const std::vector<T>& p) {
  T acc = Num<T>::ninf;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (finite(p[i]) && finite(y[i])) acc = std::max(acc, p[i] - y[i]);
  }
  return acc;
}

template <class T>
T max_entry(const T* y, Index n) {
  T acc = Num<T>::ninf;
  for (Index i = 0; i < n; ++i) acc = std::max(acc, y[i]);
  return acc;
}

/// ||y^-||: largest inverse among the nonzero entries.
template <class T>
T max_inverse(const T* y, Index n) {
  T acc = Num<T>::ninf;
  for (Index i = 0; i < n; ++i)
    if (finite(y[i])) acc = std::max(acc, -y[i]);
  return acc;
}

template <class T>
class Evaluator {
 public:
  explicit Evaluator(const LogProblem<T>& pr) : pr_(pr) {
    std::size_t m = static_cast<std::size_t>(pr.n);
    for (const auto* a : {&pr.A, &pr.B, &pr.C, &pr.D}) m = std::max(m, static_cast<std::size_t>(a->rows));
    y_.assign(m, Num<T>::ninf);
    z_.assign(m, Num<T>::ninf);
  }

  bool maximize() const { return kind_info(pr_.kind).maximize; }

  /// Constraints only; x is assumed regular.
  bool feasible(const T* x) {
    const auto& pr = pr_;
    switch (pr.kind) {
      case ProblemKind::cheb_box:
      case ProblemKind::rayleigh_box:
      case ProblemKind::new_boxed_spectral:
        return above(pr.g, x) && below(x, pr.h);
      case ProblemKind::cheb_image_lower:
        return above(pr.g, x);
      case ProblemKind::cheb_kleene_box:
        return sub_fixpoint(pr.B, x) && above(pr.g, x) && below(x, pr.h);
      case ProblemKind::cheb_kleene:
        return sub_fixpoint(pr.B, x);
      case ProblemKind::span_min_constrained:
        return sub_fixpoint(pr.D, x);
      case ProblemKind::span_max_constrained:
        return sub_fixpoint(pr.C, x);
      case ProblemKind::rayleigh_two_constraints:
        matvec(pr.C, x, z_.data());
        return sub_fixpoint(pr.B, x) && above(pr.g, x) && below(z_.data(), pr.h);
      case ProblemKind::rayleigh_lower:
      case ProblemKind::rayleigh_p_lower:
        return sub_fixpoint(pr.B, x) && above(pr.g, x);
      default:
        return true;
    }
  }

  T objective(const T* x) {
    const auto& pr = pr_;
    const Index n = pr.n;
    switch (pr.kind) {
      case ProblemKind::cheb_box:
      case ProblemKind::cheb_kleene_box:
      case ProblemKind::cheb_kleene:
        return std::max(conj_dot(pr.q, x), dot_conj(x, pr.p));
      case ProblemKind::cheb_image_lower:
        matvec(pr.A, x, y_.data());
        return std::max(conj_dot(pr.q, y_.data()), dot_conj(y_.data(), pr.p));
      case ProblemKind::span_min:
      case ProblemKind::span_max:
      case ProblemKind::span_max_constrained:
        matvec(pr.B, x, z_.data());
        matvec(pr.A, x, y_.data());
        return mul(conj_dot(pr.q, z_.data()), dot_conj(y_.data(), pr.p));
      case ProblemKind::span_min_special:
        matvec(pr.A, x, y_.data());
        return mul(max_entry(y_.data(), pr.A.rows), max_inverse(y_.data(), pr.A.rows));
      case ProblemKind::span_min_constrained:
        matvec(pr.C, x, y_.data());
        return mul(max_entry(y_.data(), pr.C.rows), max_inverse(y_.data(), pr.C.rows));
      case ProblemKind::span_max_norm:
        matvec(pr.B, x, z_.data());
        matvec(pr.A, x, y_.data());
        return mul(max_entry(z_.data(), pr.B.rows), max_inverse(y_.data(), pr.A.rows));
      case ProblemKind::rayleigh:
      case ProblemKind::rayleigh_two_constraints:
      case ProblemKind::rayleigh_lower:
      case ProblemKind::rayleigh_box:
        return rayleigh(x, n);
      case ProblemKind::rayleigh_p_lower:
        return std::max(rayleigh(x, n), dot_conj(x, pr.p));
      case ProblemKind::rayleigh_affine:
      case ProblemKind::new_boxed_spectral:
        return std::max({rayleigh(x, n), dot_conj(x, pr.p), conj_dot(pr.q, x), pr.r});
    }
    return Num<T>::ninf;
  }

 private:
  // x^- A x
  T rayleigh(const T* x, Index n) {
    matvec(pr_.A, x, y_.data());
    T acc = Num<T>::ninf;
    for (Index i = 0; i < n; ++i)
      if (finite(y_[i])) acc = std::max(acc, y_[i] - x[i]);
    return acc;
  }

  static bool above(const std::vector<T>& lo, const T* x) {
    for (std::size_t i = 0; i < lo.size(); ++i)
      if (!Num<T>::le(lo[i], x[i])) return false;
    return true;
  }

  static bool below(const T* x, const std::vector<T>& hi) {
    for (std::size_t i = 0; i < hi.size(); ++i)
      if (!Num<T>::le(x[i], hi[i])) return false;
    return true;
  }

  // M x <= x
  bool sub_fixpoint(const LogMatrix<T>& m, const T* x) {
    matvec(m, x, y_.data());
    for (Index i = 0; i < m.rows; ++i)
      if (!Num<T>::le(y_[i], x[i])) return false;
    return true;
  }

  const LogProblem<T>& pr_;
  std::vector<T> y_, z_;
};

/// Exactness bookkeeping for the (.,+) carriers: collects denominators and
/// magnitudes, then picks a common scale.
class ScaleBuilder {
 public:
  void add(const Rational& r) {
    den_ = std::lcm(den_, r.denominator());
    if (den_ > (std::int64_t{1} << 36)) {
      throw Error(ErrorCode::resource_cap, "denominators too large for exact verification");
    }
    const Rational a = r < 0 ? -r : r;
    const std::int64_t whole = a.numerator() / a.denominator() + 1;
    mag_ = std::max(mag_, whole);
  }

  template <Semifield F>
  void add(const Scalar<F>& s) {
    if constexpr (!F::multiplicative) {
      if (!s.is_zero()) add(s.value());
    }
  }

  template <class D>
  void add_all(const Eigen::MatrixBase<D>& a) {
    for (Index i = 0; i < a.rows(); ++i)
      for (Index j = 0; j < a.cols(); ++j) add(a(i, j));
  }

  std::int64_t scale() const {
    const std::int64_t s = den_ * kSampleDenominator;
    if (static_cast<double>(mag_) * static_cast<double>(s) > std::ldexp(1.0, 50)) {
      throw Error(ErrorCode::resource_cap, "values too large for exact verification");
    }
    return s;
  }

 private:
  std::int64_t den_ = 1;
  std::int64_t mag_ = 1;
};

template <Semifield F>
struct Domain {
  using T = std::conditional_t<F::multiplicative, double, std::int64_t>;
  static constexpr int sign = F::is_max ? 1 : -1;
  std::int64_t scale = 1;

  T in(const Scalar<F>& s) const {
    if (s.is_zero()) return Num<T>::ninf;
    if constexpr (F::multiplicative) {
      return sign * std::log2(s.value());
    } else {
      const Rational v = s.value() * scale;
      if (v.denominator() != 1) throw Error(ErrorCode::domain, "value off the verification scale");
      return sign * v.numerator();
    }
  }

  /// An offset or length in log units.
  T units(const Rational& r) const {
    if constexpr (F::multiplicative) {
      return boost::rational_cast<double>(r);
    } else {
      const Rational v = r * scale;
      if (v.denominator() != 1) throw Error(ErrorCode::domain, "value off the verification scale");
      return v.numerator();
    }
  }

  Scalar<F> out(T v) const {
    if (!finite(v)) return Scalar<F>::zero();
    if constexpr (F::multiplicative) {
      return Scalar<F>(std::exp2(sign * v));
    } else {
      return Scalar<F>(Rational(sign * v, scale));
    }
  }

  std::string format_gap(T a, T b) const {
    const T d = a > b ? a - b : b - a;
    if constexpr (F::multiplicative) {
      return format_double(std::exp2(d));
    } else {
      return format_rational(Rational(d, scale));
    }
  }

  std::vector<T> in(const Vector<F>& v) const {
    std::vector<T> out(static_cast<std::size_t>(v.size()));
    for (Index i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(i)] = in(v(i));
    return out;
  }

  LogMatrix<T> in(const Matrix<F>& a) const {
    LogMatrix<T> out{a.rows(), a.cols(), {}};
    out.v.reserve(static_cast<std::size_t>(a.size()));
    for (Index i = 0; i < a.rows(); ++i)
      for (Index j = 0; j < a.cols(); ++j) out.v.push_back(in(a(i, j)));
    return out;
  }

  Vector<F> out(const std::vector<T>& v) const {
    Vector<F> o(static_cast<Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) o(static_cast<Index>(i)) = out(v[i]);
    return o;
  }
};

template <Semifield F>
void add_problem(ScaleBuilder& sb, const Problem<F>& pr) {
  for (const auto* m : {&pr.A, &pr.B, &pr.C, &pr.D})
    if (*m) sb.add_all(**m);
  for (const auto* v : {&pr.p, &pr.q, &pr.g, &pr.h})
    if (*v) sb.add_all(**v);
  if (pr.r) sb.add(*pr.r);
}

template <Semifield F>
void add_solution(ScaleBuilder& sb, const SolutionSet<F>& s) {
  if (const auto* box = std::get_if<BoxSolutionSet<F>>(&s)) {
    if (box->lower) sb.add_all(*box->lower);
    if (box->upper) sb.add_all(*box->upper);
  } else if (const auto* gen = std::get_if<GeneratedSolutionSet<F>>(&s)) {
    sb.add_all(gen->generator);
    sb.add_all(gen->lower);
    if (gen->upper) sb.add_all(*gen->upper);
  } else if (const auto* ray = std::get_if<RaySolution<F>>(&s)) {
    sb.add_all(ray->direction);
  } else if (const auto* fam = std::get_if<ComponentwiseFamily<F>>(&s)) {
    for (const auto& b : fam->branches) sb.add_all(b.point);
    if (fam->map) sb.add_all(*fam->map);
  }
}

template <Semifield F>
LogProblem<typename Domain<F>::T> to_log(const Domain<F>& dom, const Problem<F>& pr) {
  LogProblem<typename Domain<F>::T> out;
  out.kind = pr.kind;
  out.n = pr.unknowns();
  if (pr.A) out.A = dom.in(*pr.A);
  if (pr.B) out.B = dom.in(*pr.B);
  if (pr.C) out.C = dom.in(*pr.C);
  if (pr.D) out.D = dom.in(*pr.D);
  if (pr.p) out.p = dom.in(*pr.p);
  if (pr.q) out.q = dom.in(*pr.q);
  if (pr.g) out.g = dom.in(*pr.g);
  if (pr.h) out.h = dom.in(*pr.h);
  if (pr.r) out.r = dom.in(*pr.r);
  return out;
}

/// A solution set in log form, reduced to what sampling needs.
template <class T>
struct LogSolution {
  enum class Type { box, generated, ray, family } type = Type::box;
  Index dim = 0;  // dimension of the sampled parameter (u for generated sets)
  std::vector<T> lower;
  std::optional<std::vector<T>> upper;
  std::optional<LogMatrix<T>> map;  // generator, or the family's x = map u
  std::vector<T> direction;
  std::vector<std::pair<Index, std::vector<T>>> branches;
};

template <Semifield F>
LogSolution<typename Domain<F>::T> to_log(const Domain<F>& dom, const SolutionSet<F>& s) {
  using T = typename Domain<F>::T;
  using Type = typename LogSolution<T>::Type;
  LogSolution<T> out;
  if (const auto* box = std::get_if<BoxSolutionSet<F>>(&s)) {
    if (box->empty()) throw Error(ErrorCode::empty_set, "box solution set is empty");
    out.type = Type::box;
    out.dim = box->lower ? box->lower->size() : box->upper ? box->upper->size() : 0;
    out.lower = box->lower ? dom.in(*box->lower)
                           : std::vector<T>(static_cast<std::size_t>(out.dim), Num<T>::ninf);
    if (box->upper) out.upper = dom.in(*box->upper);
  } else if (const auto* gen = std::get_if<GeneratedSolutionSet<F>>(&s)) {
    if (gen->empty()) throw Error(ErrorCode::empty_set, "generated solution set is empty");
    out.type = Type::generated;
    out.dim = gen->lower.size();
    out.lower = dom.in(gen->lower);
    if (gen->upper) out.upper = dom.in(*gen->upper);
    out.map = dom.in(gen->generator);
  } else if (const auto* ray = std::get_if<RaySolution<F>>(&s)) {
    out.type = Type::ray;
    out.dim = ray->direction.size();
    out.direction = dom.in(ray->direction);
  } else if (const auto* fam = std::get_if<ComponentwiseFamily<F>>(&s)) {
    if (fam->branches.empty()) throw Error(ErrorCode::empty_set, "solution family has no branches");
    out.type = Type::family;
    out.dim = fam->branches.front().point.size();
    for (const auto& b : fam->branches) out.branches.emplace_back(b.pinned, dom.in(b.point));
    if (fam->map) out.map = dom.in(*fam->map);
  } else {
    throw Error(ErrorCode::empty_set, "report carries no solution set");
  }
  return out;
}

/// lo + (k / kSampleDenominator) (hi - lo)
template <class T>
T lerp(T lo, T hi, std::int64_t k) {
  if constexpr (std::is_integral_v<T>) {
    return lo + (hi - lo) * k / kSampleDenominator;
  } else {
    return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(kSampleDenominator);
  }
}

/// Members of a solution set. Member 0 takes every weight at 0 (the lower
/// corner), member 1 every weight at 1 (the upper corner); the rest are random.
template <class T>
std::vector<std::vector<T>> sample_members(const LogSolution<T>& s, std::int64_t count,
                                           std::uint64_t seed, T window) {
  using Type = typename LogSolution<T>::Type;
  std::mt19937_64 rng(seed);
  auto weight = [&](std::int64_t i) -> std::int64_t {
    if (i == 0) return 0;
    if (i == 1) return kSampleDenominator;
    return static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(kSampleDenominator + 1));
  };
  auto apply_map = [&](std::vector<T> u) {
    if (!s.map) return u;
    std::vector<T> x(static_cast<std::size_t>(s.map->rows));
    matvec(*s.map, u.data(), x.data());
    return x;
  };

  std::vector<std::vector<T>> out;
  for (std::int64_t i = 0; i < count; ++i) {
    std::vector<T> u(static_cast<std::size_t>(s.dim));
    if (s.type == Type::box || s.type == Type::generated) {
      for (std::size_t j = 0; j < u.size(); ++j) {
        T lo = s.lower[j];
        T hi = s.upper ? (*s.upper)[j] : Num<T>::ninf;
        if (finite(lo) && !finite(hi)) hi = lo + window;
        if (!finite(lo) && finite(hi)) lo = hi - window;
        if (!finite(lo) && !finite(hi)) {
          lo = -window;
          hi = window;
        }
        u[j] = lerp(lo, hi, weight(i));
      }
    } else if (s.type == Type::ray) {
      const T alpha = i == 0 ? T{0} : lerp(-window, window, i == 1 ? kSampleDenominator : weight(i));
      for (std::size_t j = 0; j < u.size(); ++j) u[j] = mul(alpha, s.direction[j]);
    } else {
      const std::size_t b =
          i < 2 ? 0 : static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(s.branches.size()));
      const auto& [pinned, point] = s.branches[b];
      const T alpha = i < 2 ? T{0} : lerp(-window, window, weight(i));
      for (std::size_t j = 0; j < u.size(); ++j) {
        u[j] = mul(alpha, point[j]);
        if (static_cast<Index>(j) != pinned) u[j] = mul(u[j], -lerp(T{0}, window, weight(i)));
      }
    }
    out.push_back(apply_map(std::move(u)));
  }
  return out;
}

template <class T>
struct GridOutcome {
  std::optional<T> best;
  std::vector<T> argbest;
  std::int64_t points = 0;
};

/// Exhaustive scan of lo + step Z^n inside [lo, hi], in lexicographic order;
/// ties keep the first (lexicographically smallest) point.
template <class T>
GridOutcome<T> run_grid(Evaluator<T>& ev, const std::vector<T>& lo, const std::vector<T>& hi, T step,
                        std::int64_t cap) {
  const std::size_t n = lo.size();
  std::vector<std::int64_t> counts(n);
  std::int64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (hi[i] < lo[i]) return {};
    if constexpr (std::is_integral_v<T>) {
      counts[i] = (hi[i] - lo[i]) / step + 1;
    } else {
      counts[i] = static_cast<std::int64_t>(std::floor((hi[i] - lo[i]) / step + 1e-9)) + 1;
    }
    if (counts[i] > cap || total > cap / counts[i]) {
      throw Error(ErrorCode::resource_cap,
                  "grid exceeds the cap of " + std::to_string(cap) + " points");
    }
    total *= counts[i];
  }

  GridOutcome<T> out;
  out.points = total;
  const bool maximize = ev.maximize();
  std::vector<std::int64_t> idx(n, 0);
  std::vector<T> x = lo;
  for (std::int64_t visited = 0; visited < total; ++visited) {
    if (ev.feasible(x.data())) {
      const T v = ev.objective(x.data());
      if (!out.best || (maximize ? v > *out.best : v < *out.best)) {
        out.best = v;
        out.argbest = x;
      }
    }
    for (std::size_t d = n; d-- > 0;) {
      if (++idx[d] < counts[d]) {
        x[d] = lo[d] + static_cast<T>(idx[d]) * step;
        break;
      }
      idx[d] = 0;
      x[d] = lo[d];
    }
  }
  return out;
}

/// Lattice points (multiples of step) within radius of a center, per coordinate.
template <class T>
std::pair<std::vector<T>, std::vector<T>> window_around(const std::vector<T>& center, T radius,
                                                        T step) {
  std::vector<T> lo(center.size()), hi(center.size());
  for (std::size_t i = 0; i < center.size(); ++i) {
    if constexpr (std::is_integral_v<T>) {
      auto floor_div = [](T a, T b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); };
      hi[i] = floor_div(center[i] + radius, step) * step;
      lo[i] = -floor_div(-(center[i] - radius), step) * step;
    } else {
      hi[i] = std::floor((center[i] + radius) / step + 1e-9) * step;
      lo[i] = std::ceil((center[i] - radius) / step - 1e-9) * step;
    }
  }
  return {lo, hi};
}

inline std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace detail

/// Stable hash of the instance data, as 16 hex digits.
template <Semifield F>
std::string instance_id(const Problem<F>& pr) {
  std::string text = std::string(F::name) + "|" + std::string(kind_name(pr.kind));
  auto put_matrix = [&](char name, const std::optional<Matrix<F>>& m) {
    if (!m) return;
    text += std::string("|") + name + ":" + std::to_string(m->rows()) + "x" + std::to_string(m->cols());
    for (Index i = 0; i < m->size(); ++i) text += "," + to_string((*m)(i / m->cols(), i % m->cols()));
  };
  auto put_vector = [&](char name, const std::optional<Vector<F>>& v) {
    if (!v) return;
    text += std::string("|") + name + ":";
    for (Index i = 0; i < v->size(); ++i) text += "," + to_string((*v)(i));
  };
  put_matrix('A', pr.A);
  put_matrix('B', pr.B);
  put_matrix('C', pr.C);
  put_matrix('D', pr.D);
  put_vector('p', pr.p);
  put_vector('q', pr.q);
  put_vector('g', pr.g);
  put_vector('h', pr.h);
  if (pr.r) text += "|r:" + to_string(*pr.r);
  static const char* hex = "0123456789abcdef";
  std::uint64_t h = detail::fnv1a(text);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = hex[h & 15];
  return out;
}

/// Objective value at x; zero when x is not regular.
template <Semifield F>
Scalar<F> evaluate_objective(const Problem<F>& pr, const Vector<F>& x) {
  detail::ScaleBuilder sb;
  detail::add_problem(sb, pr);
  sb.add_all(x);
  detail::Domain<F> dom{sb.scale()};
  const auto lp = detail::to_log(dom, pr);
  auto lx = dom.in(x);
  if (static_cast<Index>(lx.size()) != lp.n) throw Error(ErrorCode::shape_mismatch, "x has the wrong size");
  detail::Evaluator ev(lp);
  return dom.out(ev.objective(lx.data()));
}

/// x regular and every constraint of the kind holds.
template <Semifield F>
bool is_feasible(const Problem<F>& pr, const Vector<F>& x) {
  detail::ScaleBuilder sb;
  detail::add_problem(sb, pr);
  sb.add_all(x);
  detail::Domain<F> dom{sb.scale()};
  const auto lp = detail::to_log(dom, pr);
  auto lx = dom.in(x);
  if (static_cast<Index>(lx.size()) != lp.n) throw Error(ErrorCode::shape_mismatch, "x has the wrong size");
  if (!std::all_of(lx.begin(), lx.end(), [](auto v) { return detail::finite(v); })) return false;
  detail::Evaluator ev(lp);
  return ev.feasible(lx.data());
}

/// A x <= d, evaluated entrywise.
template <Semifield F>
bool satisfies_leq(const Matrix<F>& a, const Vector<F>& x, const Vector<F>& d) {
  detail::ScaleBuilder sb;
  sb.add_all(a);
  sb.add_all(x);
  sb.add_all(d);
  detail::Domain<F> dom{sb.scale()};
  const auto la = dom.in(a);
  const auto lx = dom.in(x);
  const auto ld = dom.in(d);
  std::vector<typename detail::Domain<F>::T> y(static_cast<std::size_t>(a.rows()));
  detail::matvec(la, lx.data(), y.data());
  for (std::size_t i = 0; i < y.size(); ++i)
    if (!detail::Num<typename detail::Domain<F>::T>::le(y[i], ld[i])) return false;
  return true;
}

/// A x (+) b <= x, evaluated entrywise.
template <Semifield F>
bool satisfies_sub_fixpoint(const Matrix<F>& a, const Vector<F>& b, const Vector<F>& x) {
  if (!satisfies_leq(a, x, x)) return false;
  for (Index i = 0; i < x.size(); ++i)
    if (!(b(i) <= x(i))) return false;
  return true;
}

/// (+) over all elementary cycles of (cycle weight)^(1/length); n <= 8.
template <Semifield F>
Scalar<F> cycle_mean_radius(const Matrix<F>& a) {
  const Index n = a.rows();
  if (a.cols() != n) throw Error(ErrorCode::shape_mismatch, "cycle mean of a non-square matrix");
  if (n > 8) throw Error(ErrorCode::precondition, "cycle enumeration supports n <= 8");
  using U = std::conditional_t<F::multiplicative, double, Rational>;
  constexpr int sign = F::is_max ? 1 : -1;
  auto weight = [&](Index i, Index j) -> std::optional<U> {
    if (a(i, j).is_zero()) return std::nullopt;
    if constexpr (F::multiplicative) {
      return sign * std::log2(a(i, j).value());
    } else {
      return a(i, j).value() * sign;
    }
  };

  std::optional<U> best;
  std::vector<bool> on_path(static_cast<std::size_t>(n), false);
  // Cycles are enumerated from their smallest vertex.
  auto dfs = [&](auto& self, Index start, Index v, U w, std::int64_t len) -> void {
    if (auto back = weight(v, start)) {
      U mean = (w + *back) / static_cast<U>(len);
      if (!best || mean > *best) best = mean;
    }
    for (Index u = start + 1; u < n; ++u) {
      if (on_path[static_cast<std::size_t>(u)]) continue;
      auto e = weight(v, u);
      if (!e) continue;
      on_path[static_cast<std::size_t>(u)] = true;
      self(self, start, u, w + *e, len + 1);
      on_path[static_cast<std::size_t>(u)] = false;
    }
  };
  for (Index s = 0; s < n; ++s) {
    on_path[static_cast<std::size_t>(s)] = true;
    dfs(dfs, s, s, U(0), 1);
    on_path[static_cast<std::size_t>(s)] = false;
  }
  if (!best) return Scalar<F>::zero();
  if constexpr (F::multiplicative) {
    return Scalar<F>(std::exp2(sign * *best));
  } else {
    return Scalar<F>(*best * sign);
  }
}

template <Semifield F>
GridResult<F> grid_search(const Problem<F>& pr, const GridSpec& grid) {
  grid.validate();
  if (static_cast<Index>(grid.lower.size()) != pr.unknowns()) {
    throw Error(ErrorCode::shape_mismatch, "grid dimension differs from the number of unknowns");
  }
  detail::ScaleBuilder sb;
  detail::add_problem(sb, pr);
  for (const auto& v : grid.lower) sb.add(v);
  for (const auto& v : grid.upper) sb.add(v);
  sb.add(grid.step);
  detail::Domain<F> dom{sb.scale()};
  using T = typename detail::Domain<F>::T;
  const auto lp = detail::to_log(dom, pr);
  // Lattice points are L, L + step, ... <= U in carrier units; min carriers
  // run backwards in the log domain.
  std::vector<T> lo, hi;
  for (std::size_t i = 0; i < grid.lower.size(); ++i) {
    const Rational span = (grid.upper[i] - grid.lower[i]) / grid.step;
    const Rational last = grid.lower[i] + grid.step * (span.numerator() / span.denominator());
    if constexpr (F::is_max) {
      lo.push_back(dom.units(grid.lower[i]));
      hi.push_back(dom.units(last));
    } else {
      lo.push_back(-dom.units(last));
      hi.push_back(-dom.units(grid.lower[i]));
    }
  }
  detail::Evaluator ev(lp);
  auto res = detail::run_grid(ev, lo, hi, dom.units(grid.step), grid.cap);
  GridResult<F> out;
  out.points = res.points;
  if (res.best) {
    if (!ev.feasible(res.argbest.data())) {
      throw Error(ErrorCode::precondition, "grid search produced an infeasible argbest");
    }
    out.best = dom.out(*res.best);
    out.argbest = dom.out(res.argbest);
  }
  return out;
}

template <Semifield F>
std::vector<Vector<F>> sample_solution_set(const SolutionSet<F>& set, std::int64_t count,
                                           std::uint64_t seed, Rational window = kDefaultWindow) {
  detail::ScaleBuilder sb;
  detail::add_solution(sb, set);
  sb.add(window);
  detail::Domain<F> dom{sb.scale()};
  const auto ls = detail::to_log(dom, set);
  std::vector<Vector<F>> out;
  for (const auto& m : detail::sample_members(ls, count, seed, dom.units(window))) out.push_back(dom.out(m));
  return out;
}

template <Semifield F>
VerificationReport<F> verify_report(const Problem<F>& pr, const OptimumReport<F>& report,
                                    const VerifyOptions& opt = {}) {
  using T = typename detail::Domain<F>::T;
  using N = detail::Num<T>;
  const Index n = pr.unknowns();

  VerificationReport<F> vr;
  vr.instance_id = instance_id(pr);
  vr.kind = pr.kind;
  vr.status = report.status;
  vr.reason = report.reason;
  vr.step = opt.step.value_or(default_step(n));
  vr.radius = opt.radius;
  vr.window = opt.window;
  vr.seed = opt.seed;
  if (vr.step <= 0 || vr.radius < 0 || vr.window <= 0) {
    throw Error(ErrorCode::domain, "step and window must be positive, radius nonnegative");
  }

  detail::ScaleBuilder sb;
  detail::add_problem(sb, pr);
  detail::add_solution(sb, report.solution);
  sb.add(report.optimum);
  sb.add(vr.step);
  sb.add(vr.radius);
  sb.add(vr.window);
  detail::Domain<F> dom{sb.scale()};
  const auto lp = detail::to_log(dom, pr);
  detail::Evaluator ev(lp);
  const bool maximize = ev.maximize();
  const T step = dom.units(vr.step);
  const T radius = dom.units(vr.radius);

  auto run = [&](const std::vector<T>& center) {
    auto [lo, hi] = detail::window_around(center, radius, step);
    auto res = detail::run_grid(ev, lo, hi, step, opt.cap);
    vr.grid_points += res.points;
    return res;
  };

  if (!report.solved()) {
    if (report.reason == "PRECONDITION_FAILED") return vr;
    auto res = run(std::vector<T>(static_cast<std::size_t>(n), T{0}));
    if (res.best) {
      vr.grid_optimum = dom.out(*res.best);
      vr.grid_argbest = dom.out(res.argbest);
    }
    vr.checks.push_back({"grid_no_feasible_point", !res.best,
                         res.best ? "grid found a feasible point" : "NO_FEASIBLE_POINT"});
    return vr;
  }

  vr.solver_optimum = report.optimum;
  const T optimum = dom.in(report.optimum);
  const auto ls = detail::to_log(dom, report.solution);
  const auto members =
      detail::sample_members(ls, std::max<std::int64_t>(opt.samples, 1), opt.seed, dom.units(vr.window));

  bool feasible_ok = true;
  bool attain_ok = true;
  for (std::size_t i = 0; i < members.size(); ++i) {
    const auto& x = members[i];
    if (static_cast<Index>(x.size()) != n) throw Error(ErrorCode::shape_mismatch, "sample has the wrong size");
    const std::string tag = i == 0 ? "lower corner" : i == 1 ? "upper corner" : "sample " + std::to_string(i);
    if (!std::all_of(x.begin(), x.end(), [](T v) { return detail::finite(v); })) {
      vr.feasibility_failures.push_back(tag + ": not regular");
      feasible_ok = false;
      continue;
    }
    if (!ev.feasible(x.data())) {
      vr.feasibility_failures.push_back(tag + ": violates a constraint");
      feasible_ok = false;
      continue;
    }
    const T v = ev.objective(x.data());
    if (!N::eq(v, optimum)) {
      vr.feasibility_failures.push_back(tag + ": objective " + to_string(dom.out(v)) + " differs from the optimum");
      attain_ok = false;
    }
  }
  vr.samples_checked = static_cast<std::int64_t>(members.size());
  vr.checks.push_back({"samples_feasible", feasible_ok, ""});
  vr.checks.push_back({"samples_attain_optimum", attain_ok, ""});

  // The grid is centred on the lower corner, which is itself a member.
  auto res = run(members.front());
  if (!res.best) {
    vr.checks.push_back({"grid_matches_optimum", false, "NO_FEASIBLE_POINT"});
    return vr;
  }
  vr.grid_optimum = dom.out(*res.best);
  vr.grid_argbest = dom.out(res.argbest);
  vr.gap = dom.format_gap(*res.best, optimum);
  vr.checks.push_back({"grid_argbest_feasible", ev.feasible(res.argbest.data()), ""});
  const bool better = maximize ? !N::le(*res.best, optimum) : !N::le(optimum, *res.best);
  vr.checks.push_back({"grid_not_better", !better, better ? "grid beats the reported optimum" : ""});
  vr.checks.push_back({"grid_matches_optimum", N::eq(*res.best, optimum),
                       N::eq(*res.best, optimum) ? "" : "gap " + *vr.gap});
  return vr;
}

}  // namespace tropical::oracle
