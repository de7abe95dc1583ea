#include <catch_amalgamated.hpp>

#include "support.hpp"
#include "tropical/scalar.hpp"

using namespace tropical;
using namespace tropical::testing;

namespace {

template <class A, class B>
concept CanAdd = requires(A a, B b) { oplus(a, b); };
template <class A, class B>
concept CanMultiply = requires(A a, B b) { otimes(a, b); };

// Mixing semifields does not compile.
static_assert(CanAdd<Scalar<MaxPlus>, Scalar<MaxPlus>>);
static_assert(!CanAdd<Scalar<MaxPlus>, Scalar<MinPlus>>);
static_assert(!CanMultiply<Scalar<MaxTimes>, Scalar<MaxPlus>>);
static_assert(!std::is_constructible_v<Scalar<MaxPlus>, int>);

template <Semifield F>
Scalar<F> lit(double v) {
  if constexpr (F::multiplicative) {
    return Scalar<F>(v);
  } else {
    return Scalar<F>(Rational(static_cast<std::int64_t>(v)));
  }
}

}  // namespace

TEST_CASE("oplus picks the max or min of the carriers", "[scalar]") {
  CHECK(oplus(mp(2), mp(3)) == mp(3));
  CHECK(oplus(kZero, mp(7)) == mp(7));
  CHECK(oplus(lit<MinTimes>(2), lit<MinTimes>(3)) == lit<MinTimes>(2));
  CHECK(oplus(lit<MinPlus>(2), lit<MinPlus>(-3)) == lit<MinPlus>(-3));
  CHECK(oplus(Scalar<MinTimes>::zero(), lit<MinTimes>(5)) == lit<MinTimes>(5));
}

TEST_CASE("otimes adds or multiplies carriers, zero absorbs", "[scalar]") {
  CHECK(otimes(mp(2), mp(3)) == mp(5));
  CHECK(otimes(kZero, mp(3)).is_zero());
  CHECK(otimes(lit<MaxTimes>(2), lit<MaxTimes>(3)) == lit<MaxTimes>(6));
  CHECK(otimes(Scalar<MinPlus>::zero(), lit<MinPlus>(4)).is_zero());
}

TEST_CASE("inverse", "[scalar]") {
  CHECK(inverse(mp(5)) == mp(-5));
  CHECK(inverse(lit<MaxTimes>(4)) == lit<MaxTimes>(0.25));
  CHECK(inverse(Scalar<MaxPlus>::one()) == Scalar<MaxPlus>::one());
  CHECK(inverse(Scalar<MinTimes>::one()) == Scalar<MinTimes>::one());
  try {
    (void)inverse(kZero);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::inversion_of_zero);
  }
}

TEST_CASE("rational powers", "[scalar]") {
  CHECK(power(mp(4), Rational(1, 2)) == mp(2));
  CHECK(power(mp(3), Rational(-1)) == mp(-3));
  CHECK(power(lit<MaxTimes>(9), Rational(1, 2)) == lit<MaxTimes>(3));
  CHECK(power(mp(7), Rational(0)) == Scalar<MaxPlus>::one());
  CHECK(power(kZero, Rational(1, 3)).is_zero());
  CHECK_THROWS_AS(power(kZero, Rational(0)), Error);
  CHECK_THROWS_AS(power(kZero, Rational(-2)), Error);
}

TEST_CASE("order", "[scalar]") {
  CHECK(leq(mp(1), mp(2)));
  CHECK_FALSE(leq(lit<MinPlus>(1), lit<MinPlus>(2)));
  CHECK(leq(kZero, mp(-100)));
  CHECK(leq(Scalar<MinTimes>::zero(), lit<MinTimes>(1e9)));
  CHECK_FALSE(leq(mp(0), kZero));
}

TEST_CASE("times carriers compare with relative tolerance", "[scalar]") {
  CHECK(lit<MaxTimes>(1.0) == lit<MaxTimes>(1.0 + 1e-12));
  CHECK_FALSE(lit<MaxTimes>(1.0) == lit<MaxTimes>(1.0 + 1e-6));
  CHECK(lit<MaxTimes>(1.0) <= lit<MaxTimes>(1.0 - 1e-12));
  CHECK_THROWS_AS(Scalar<MaxTimes>(-1.0), Error);
  CHECK_THROWS_AS(Scalar<MaxTimes>(0.0), Error);
}

TEST_CASE("text form", "[scalar]") {
  CHECK(parse_rational("-3") == Rational(-3));
  CHECK(parse_rational("7/2") == Rational(7, 2));
  CHECK(parse_rational("2.5") == Rational(5, 2));
  CHECK(parse_rational("-0.25") == Rational(-1, 4));
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK(parse_scalar<MaxPlus>("null").is_zero());
  CHECK(parse_scalar<MaxPlus>(".").is_zero());
  CHECK(to_string(mp(7, 2)) == "7/2");
  CHECK(to_string(kZero) == ".");
  CHECK(to_string(kZero, "null") == "null");
  CHECK(parse_scalar<MaxTimes>("0.5") == lit<MaxTimes>(0.5));
  CHECK(parse_scalar<MaxTimes>("1/4") == lit<MaxTimes>(0.25));
}

TEMPLATE_TEST_CASE("semifield axioms on random scalars", "[scalar][property]", MaxPlus, MinPlus, MaxTimes,
                   MinTimes) {
  using F = TestType;
  Rng rng(17);
  for (int t = 0; t < 2000; ++t) {
    const auto a = rng.scalar<F>(), b = rng.scalar<F>(), c = rng.scalar<F>();
    CHECK(oplus(a, a) == a);
    CHECK(oplus(a, b) == oplus(b, a));
    CHECK(oplus(oplus(a, b), c) == oplus(a, oplus(b, c)));
    CHECK(otimes(otimes(a, b), c) == otimes(a, otimes(b, c)));
    CHECK(otimes(a, oplus(b, c)) == oplus(otimes(a, b), otimes(a, c)));
    CHECK(oplus(a, Scalar<F>::zero()) == a);
    CHECK(otimes(a, Scalar<F>::one()) == a);
    CHECK(otimes(a, Scalar<F>::zero()).is_zero());
    if (!a.is_zero()) CHECK(otimes(inverse(a), a) == Scalar<F>::one());

    // Exactly one of a < b, a == b, b < a.
    const int relations = int(a < b) + int(a == b) + int(b < a);
    CHECK(relations == 1);
    CHECK((a <= b) == (oplus(a, b) == b));

    // Isotonicity.
    if (a <= b) {
      CHECK(oplus(a, c) <= oplus(b, c));
      CHECK(otimes(a, c) <= otimes(b, c));
    }

    // x (+) y <= z iff x <= z and y <= z.
    CHECK((oplus(a, b) <= c) == (a <= c && b <= c));
  }
}

TEMPLATE_TEST_CASE("power composes", "[scalar][property]", MaxPlus, MinPlus, MaxTimes, MinTimes) {
  using F = TestType;
  Rng rng(5);
  for (int t = 0; t < 1000; ++t) {
    const auto a = rng.nonzero<F>();
    const Rational p(rng.integer(-6, 6), rng.integer(1, 5));
    const Rational q(rng.integer(-6, 6), rng.integer(1, 5));
    CHECK(power(power(a, p), q) == power(a, p * q));
    CHECK(power(a, Rational(2)) == otimes(a, a));
  }
}
