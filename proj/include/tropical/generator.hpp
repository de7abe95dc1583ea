#pragma once

/**
 * @file generator.hpp
 * @brief Seeded random instances that satisfy each kind's preconditions.
 *
 * Entries are integers in [-5, 5] (2^k for the times carriers), zero with
 * probability 1/5, then repaired: required-regular fields get their zeros
 * replaced, B-type matrices are scaled down until Tr <= one, A gets a
 * nonzero cycle, and upper bounds h are lifted above what the lower bounds
 * force.
 */

#include <cstdint>
#include <random>

#include "tropical/linalg.hpp"
#include "tropical/problem.hpp"

namespace tropical {

template <Semifield F>
class InstanceGenerator {
 public:
  explicit InstanceGenerator(std::uint64_t seed) : rng_(seed) {}

  /// Integer exponent in [-5, 5].
  std::int64_t exponent() { return static_cast<std::int64_t>(rng_() % 11) - 5; }

  Scalar<F> nonzero() {
    const std::int64_t k = exponent();
    if constexpr (F::multiplicative) {
      return Scalar<F>(std::ldexp(1.0, static_cast<int>(k)));
    } else {
      return Scalar<F>(Rational(k));
    }
  }

  Scalar<F> entry() { return rng_() % 5 == 0 ? Scalar<F>::zero() : nonzero(); }

  Matrix<F> matrix(Index rows, Index cols) {
    Matrix<F> a(rows, cols);
    for (Index i = 0; i < rows; ++i)
      for (Index j = 0; j < cols; ++j) a(i, j) = entry();
    return a;
  }

  Vector<F> vector(Index n) {
    Vector<F> v(n);
    for (Index i = 0; i < n; ++i) v(i) = entry();
    return v;
  }

  Index index(Index n) { return static_cast<Index>(rng_() % static_cast<std::uint64_t>(n)); }

  template <class D>
  void fill_zeros(Eigen::MatrixBase<D>& a) {
    for (Index i = 0; i < a.rows(); ++i)
      for (Index j = 0; j < a.cols(); ++j)
        if (a(i, j).is_zero()) a(i, j) = nonzero();
  }

  void make_row_regular(Matrix<F>& a) {
    for (Index i = 0; i < a.rows(); ++i)
      if (is_zero(a.row(i))) a(i, index(a.cols())) = nonzero();
  }

  void make_column_regular(Matrix<F>& a) {
    for (Index j = 0; j < a.cols(); ++j)
      if (is_zero(a.col(j))) a(index(a.rows()), j) = nonzero();
  }

  void make_nonzero(Vector<F>& v) {
    if (is_zero(v)) v(index(v.size())) = nonzero();
  }

  /// Scale by an element below one until Tr(B) <= one.
  static void shrink(Matrix<F>& b) {
    Scalar<F> c;
    if constexpr (F::multiplicative) {
      c = Scalar<F>(F::is_max ? 0.5 : 2.0);
    } else {
      c = Scalar<F>(Rational(F::is_max ? -1 : 1));
    }
    while (!(tr_functional(b) <= Scalar<F>::one())) b = otimes(c, b);
  }

  void ensure_cycle(Matrix<F>& a) {
    if (spectral_radius(a).is_zero()) {
      const Index i = index(a.rows());
      a(i, i) = nonzero();
    }
  }

 private:
  std::mt19937_64 rng_;
};

template <Semifield F>
Problem<F> generate_problem(ProblemKind kind, Index n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::domain, "instance size must be at least 1");
  InstanceGenerator<F> gen(seed);
  const KindInfo& info = kind_info(kind);
  Problem<F> pr;
  pr.kind = kind;
  for (char m : info.matrices) {
    Matrix<F> a = gen.matrix(n, n);
    switch (m) {
      case 'A': pr.A = std::move(a); break;
      case 'B': pr.B = std::move(a); break;
      case 'C': pr.C = std::move(a); break;
      default: pr.D = std::move(a); break;
    }
  }
  for (char v : info.vectors) {
    Vector<F> x = gen.vector(n);
    switch (v) {
      case 'p': pr.p = std::move(x); break;
      case 'q': pr.q = std::move(x); break;
      case 'g': pr.g = std::move(x); break;
      default: pr.h = std::move(x); break;
    }
  }
  if (info.needs_r) pr.r = gen.entry();

  auto regular = [&](Matrix<F>& a) {
    gen.make_row_regular(a);
    gen.make_column_regular(a);
  };

  switch (kind) {
    case ProblemKind::cheb_box:
      gen.fill_zeros(*pr.p);
      gen.fill_zeros(*pr.q);
      gen.fill_zeros(*pr.h);
      pr.h = oplus(*pr.h, *pr.g);
      break;
    case ProblemKind::cheb_image_lower:
      regular(*pr.A);
      gen.fill_zeros(*pr.p);
      gen.fill_zeros(*pr.q);
      break;
    case ProblemKind::cheb_kleene_box:
      gen.shrink(*pr.B);
      gen.make_nonzero(*pr.p);
      gen.fill_zeros(*pr.q);
      gen.fill_zeros(*pr.h);
      pr.h = oplus(*pr.h, otimes(kleene_star(*pr.B).matrix, *pr.g));
      break;
    case ProblemKind::cheb_kleene:
      gen.shrink(*pr.B);
      gen.make_nonzero(*pr.p);
      gen.fill_zeros(*pr.q);
      break;
    case ProblemKind::span_min:
      gen.make_row_regular(*pr.A);
      gen.make_column_regular(*pr.B);
      gen.make_nonzero(*pr.p);
      gen.fill_zeros(*pr.q);
      break;
    case ProblemKind::span_min_special:
      regular(*pr.A);
      break;
    case ProblemKind::span_min_constrained:
      regular(*pr.C);
      gen.shrink(*pr.D);
      break;
    case ProblemKind::span_max:
    case ProblemKind::span_max_constrained:
      gen.fill_zeros(*pr.A);
      gen.make_column_regular(*pr.B);
      gen.fill_zeros(*pr.p);
      gen.fill_zeros(*pr.q);
      if (pr.C) gen.shrink(*pr.C);
      break;
    case ProblemKind::span_max_norm:
      gen.fill_zeros(*pr.A);
      gen.make_column_regular(*pr.B);
      break;
    case ProblemKind::rayleigh:
      gen.ensure_cycle(*pr.A);
      break;
    case ProblemKind::rayleigh_affine:
      gen.ensure_cycle(*pr.A);
      gen.fill_zeros(*pr.q);
      break;
    case ProblemKind::rayleigh_two_constraints:
      gen.ensure_cycle(*pr.A);
      gen.shrink(*pr.B);
      gen.make_column_regular(*pr.C);
      gen.fill_zeros(*pr.h);
      pr.h = oplus(*pr.h, otimes(otimes(*pr.C, kleene_star(*pr.B).matrix), *pr.g));
      break;
    case ProblemKind::rayleigh_lower:
    case ProblemKind::rayleigh_p_lower:
      gen.ensure_cycle(*pr.A);
      gen.shrink(*pr.B);
      break;
    case ProblemKind::rayleigh_box:
    case ProblemKind::new_boxed_spectral:
      gen.ensure_cycle(*pr.A);
      if (pr.q) gen.fill_zeros(*pr.q);
      gen.fill_zeros(*pr.h);
      pr.h = oplus(*pr.h, *pr.g);
      break;
  }
  return pr;
}

}  // namespace tropical
