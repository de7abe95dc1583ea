#pragma once

/**
 * @file linear_systems.hpp
 * @brief Complete solution sets of the inequalities A x <= d and A x (+) b <= x.
 *
 * Empty sets are ordinary values carrying a reason rather than exceptions, so
 * solvers built on top can branch on them.
 */

#include <optional>
#include <string_view>
#include <utility>

#include "tropical/linalg.hpp"

namespace tropical {

enum class EmptyReason {
  none,
  /// A x (+) b <= x has no regular solution because Tr(A) > one.
  no_regular_solution,
  /// Both bounds are present and lower <= upper fails.
  inconsistent_bounds,
};

inline std::string_view reason_code(EmptyReason r) {
  switch (r) {
    case EmptyReason::none: return "NONE";
    case EmptyReason::no_regular_solution: return "NO_REGULAR_SOLUTION";
    case EmptyReason::inconsistent_bounds: return "INCONSISTENT_BOUNDS";
  }
  return "UNKNOWN";
}

namespace detail {

template <Semifield F>
EmptyReason check_bounds(const std::optional<Vector<F>>& lower,
                         const std::optional<Vector<F>>& upper) {
  if (lower && upper && !leq(*lower, *upper)) return EmptyReason::inconsistent_bounds;
  return EmptyReason::none;
}

}  // namespace detail

/// { x regular : lower <= x <= upper }, each bound optional. Zero entries of
/// `lower` leave that coordinate unbounded below; `upper` is regular when set.
template <Semifield F>
struct BoxSolutionSet {
  std::optional<Vector<F>> lower;
  std::optional<Vector<F>> upper;
  EmptyReason reason = EmptyReason::none;

  static BoxSolutionSet make(std::optional<Vector<F>> lower, std::optional<Vector<F>> upper) {
    BoxSolutionSet out{std::move(lower), std::move(upper)};
    out.reason = detail::check_bounds<F>(out.lower, out.upper);
    return out;
  }

  bool empty() const { return reason != EmptyReason::none; }

  bool contains(const Vector<F>& x) const {
    if (!is_regular(x)) return false;
    if (lower && !leq(*lower, x)) return false;
    if (upper && !leq(x, *upper)) return false;
    return true;
  }
};

/// { G u : u regular, lower <= u, and u <= upper when present }.
template <Semifield F>
struct GeneratedSolutionSet {
  Matrix<F> generator;
  Vector<F> lower;
  std::optional<Vector<F>> upper;
  EmptyReason reason = EmptyReason::none;

  static GeneratedSolutionSet make(Matrix<F> generator, Vector<F> lower,
                                   std::optional<Vector<F>> upper) {
    if (generator.rows() != generator.cols() || generator.cols() != lower.size() ||
        (upper && upper->size() != lower.size())) {
      throw Error(ErrorCode::shape_mismatch, "generated solution set: inconsistent dimensions");
    }
    GeneratedSolutionSet out{std::move(generator), std::move(lower), std::move(upper)};
    out.reason = detail::check_bounds<F>(out.lower, out.upper);
    return out;
  }

  bool empty() const { return reason != EmptyReason::none; }

  Vector<F> map(const Vector<F>& u) const { return otimes(generator, u); }
};

/// Greatest solution of A x <= d: all regular solutions are x <= (d^- A)^-.
template <Semifield F>
BoxSolutionSet<F> principal_solution_leq(const Matrix<F>& a, const Vector<F>& d) {
  if (a.rows() != d.size()) {
    throw Error(ErrorCode::shape_mismatch, "A x <= d: A has " + std::to_string(a.rows()) +
                                               " rows but d has " + std::to_string(d.size()));
  }
  if (!is_column_regular(a)) throw Error(ErrorCode::precondition, "A x <= d: A is not column-regular");
  if (!is_regular(d)) throw Error(ErrorCode::precondition, "A x <= d: d is not regular");
  Vector<F> upper = conj(otimes(conj(d), a));
  return BoxSolutionSet<F>::make(std::nullopt, std::move(upper));
}

/// All regular solutions of A x (+) b <= x: x = A* u with u >= b when
/// Tr(A) <= one, and none otherwise.
template <Semifield F>
GeneratedSolutionSet<F> solve_sub_fixpoint(const Matrix<F>& a, const Vector<F>& b) {
  if (a.rows() != a.cols() || a.rows() != b.size()) {
    throw Error(ErrorCode::shape_mismatch, "A x (+) b <= x: A must be square and match b");
  }
  auto star = kleene_star(a);
  auto out = GeneratedSolutionSet<F>::make(std::move(star.matrix), b, std::nullopt);
  if (!star.closure_valid) out.reason = EmptyReason::no_regular_solution;
  return out;
}

}  // namespace tropical
