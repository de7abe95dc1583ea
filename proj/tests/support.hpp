#pragma once

// Hand-rolled random generators for property tests.

#include <cmath>
#include <cstdint>
#include <random>

#include "tropical/linalg.hpp"

namespace tropical::testing {

/// mp(x): max-plus shorthand for literals in tests.
inline Scalar<MaxPlus> mp(std::int64_t v) { return Scalar<MaxPlus>::from_int(v); }
inline Scalar<MaxPlus> mp(std::int64_t num, std::int64_t den) { return Scalar<MaxPlus>(Rational(num, den)); }
inline const Scalar<MaxPlus> kZero = Scalar<MaxPlus>::zero();

template <Semifield F>
Matrix<F> make(std::initializer_list<std::initializer_list<Scalar<F>>> rows) {
  Matrix<F> out(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (const auto& v : row) out(i, j++) = v;
    ++i;
  }
  return out;
}

template <Semifield F>
Vector<F> vec(std::initializer_list<Scalar<F>> values) {
  Vector<F> out(static_cast<Index>(values.size()));
  Index i = 0;
  for (const auto& v : values) out(i++) = v;
  return out;
}

inline Matrix<MaxPlus> mpm(std::initializer_list<std::initializer_list<Scalar<MaxPlus>>> rows) {
  return make<MaxPlus>(rows);
}
inline Vector<MaxPlus> mpv(std::initializer_list<Scalar<MaxPlus>> values) { return vec<MaxPlus>(values); }

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  bool chance(int percent) { return integer(0, 99) < percent; }

  /// Carrier value from an exponent: the exponent itself for (.,+), 2^(e/4) for (.,x).
  template <Semifield F>
  Scalar<F> nonzero(std::int64_t lo = -5, std::int64_t hi = 5) {
    const std::int64_t e = integer(lo, hi);
    if constexpr (F::multiplicative) {
      return Scalar<F>(std::exp2(static_cast<double>(e) / 4.0));
    } else {
      return Scalar<F>(Rational(e));
    }
  }

  /// Strictly above one in the semifield order.
  template <Semifield F>
  Scalar<F> above_one(std::int64_t lo = 1, std::int64_t hi = 4) {
    const Scalar<F> v = nonzero<F>(lo, hi);
    return Scalar<F>::one() < v ? v : inverse(v);
  }

  /// Rational-valued for (.,+): e/den with den in 1..4.
  template <Semifield F>
  Scalar<F> fractional() {
    if constexpr (F::multiplicative) {
      return nonzero<F>(-20, 20);
    } else {
      return Scalar<F>(Rational(integer(-20, 20), integer(1, 4)));
    }
  }

  template <Semifield F>
  Scalar<F> scalar(int zero_percent = 20) {
    return chance(zero_percent) ? Scalar<F>::zero() : nonzero<F>();
  }

  template <Semifield F>
  Matrix<F> matrix(Index rows, Index cols, int zero_percent = 20) {
    Matrix<F> a(rows, cols);
    for (Index i = 0; i < rows; ++i)
      for (Index j = 0; j < cols; ++j) a(i, j) = scalar<F>(zero_percent);
    return a;
  }

  template <Semifield F>
  Vector<F> vector(Index n, int zero_percent = 20) {
    Vector<F> v(n);
    for (Index i = 0; i < n; ++i) v(i) = scalar<F>(zero_percent);
    return v;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace tropical::testing
