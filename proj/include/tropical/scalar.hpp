#pragma once

/**
 * @file scalar.hpp
 * @brief Scalars of a linearly ordered, radicable idempotent semifield.
 *
 * Four real instances are provided as field policies:
 *
 *   MaxPlus   carrier Q,   zero -inf, one 0, (+) = max, (x) = +
 *   MinPlus   carrier Q,   zero +inf, one 0, (+) = min, (x) = +
 *   MaxTimes  carrier R+,  zero 0,    one 1, (+) = max, (x) = *
 *   MinTimes  carrier R+,  zero +inf, one 1, (+) = min, (x) = *
 *
 * The additive-group carriers are exact rationals, so every operation
 * including rational powers stays exact. The multiplicative carriers are
 * doubles compared with a relative tolerance. The zero is an explicit marker
 * and never a sentinel carrier value.
 *
 * The field is part of the scalar type, so mixing semifields is rejected at
 * compile time.
 */

#include <boost/rational.hpp>

#include <charconv>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <type_traits>

#include "tropical/error.hpp"

namespace tropical {

using Rational = boost::rational<std::int64_t>;

enum class SemifieldTag { max_plus, min_plus, max_times, min_times };

/// Relative tolerance used by the multiplicative carriers.
inline constexpr double kTimesTolerance = 1e-9;

struct MaxPlus {
  using Carrier = Rational;
  static constexpr SemifieldTag tag = SemifieldTag::max_plus;
  static constexpr bool is_max = true;
  static constexpr bool multiplicative = false;
  static constexpr std::string_view name = "max-plus";
};

struct MinPlus {
  using Carrier = Rational;
  static constexpr SemifieldTag tag = SemifieldTag::min_plus;
  static constexpr bool is_max = false;
  static constexpr bool multiplicative = false;
  static constexpr std::string_view name = "min-plus";
};

struct MaxTimes {
  using Carrier = double;
  static constexpr SemifieldTag tag = SemifieldTag::max_times;
  static constexpr bool is_max = true;
  static constexpr bool multiplicative = true;
  static constexpr std::string_view name = "max-times";
};

struct MinTimes {
  using Carrier = double;
  static constexpr SemifieldTag tag = SemifieldTag::min_times;
  static constexpr bool is_max = false;
  static constexpr bool multiplicative = true;
  static constexpr std::string_view name = "min-times";
};

template <class F>
concept Semifield = requires {
  typename F::Carrier;
  { F::tag } -> std::convertible_to<SemifieldTag>;
  { F::is_max } -> std::convertible_to<bool>;
  { F::multiplicative } -> std::convertible_to<bool>;
};

namespace detail {

inline bool times_equal(double a, double b) {
  return std::abs(a - b) <= kTimesTolerance * std::max(std::abs(a), std::abs(b));
}

}  // namespace detail

template <Semifield F>
class Scalar {
 public:
  using Field = F;
  using Carrier = typename F::Carrier;

  /// The zero of the semifield.
  Scalar() = default;

  explicit Scalar(Carrier value) : zero_(false), value_(std::move(value)) {
    if constexpr (F::multiplicative) {
      if (!(value_ > 0.0) || !std::isfinite(value_)) {
        throw Error(ErrorCode::domain,
                    std::string(F::name) + " carrier must be a positive finite real");
      }
    }
  }

  // Integer literals are ambiguous between the carrier and the semiring
  // identities; use from_int() or one()/zero().
  Scalar(int) = delete;

  static Scalar zero() { return Scalar(); }

  static Scalar one() {
    if constexpr (F::multiplicative) {
      return Scalar(1.0);
    } else {
      return Scalar(Rational(0));
    }
  }

  /// Carrier value built from an integer (a double for the times carriers).
  static Scalar from_int(std::int64_t v) {
    if constexpr (F::multiplicative) {
      return Scalar(static_cast<double>(v));
    } else {
      return Scalar(Rational(v));
    }
  }

  bool is_zero() const noexcept { return zero_; }

  const Carrier& value() const {
    if (zero_) throw Error(ErrorCode::domain, "the semifield zero has no carrier value");
    return value_;
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.zero_ || b.zero_) return a.zero_ == b.zero_;
    if constexpr (F::multiplicative) {
      return detail::times_equal(a.value_, b.value_);
    } else {
      return a.value_ == b.value_;
    }
  }

  /// Order induced by idempotent addition: a <= b iff a (+) b = b.
  friend bool operator<=(const Scalar& a, const Scalar& b) {
    if (a.zero_) return true;
    if (b.zero_) return false;
    if (a == b) return true;
    return F::is_max ? a.value_ < b.value_ : a.value_ > b.value_;
  }
  friend bool operator<(const Scalar& a, const Scalar& b) { return a <= b && !(a == b); }
  friend bool operator>=(const Scalar& a, const Scalar& b) { return b <= a; }
  friend bool operator>(const Scalar& a, const Scalar& b) { return b < a; }

 private:
  bool zero_ = true;
  Carrier value_{};
};

template <Semifield F>
Scalar<F> oplus(const Scalar<F>& a, const Scalar<F>& b) {
  return a <= b ? b : a;
}

template <Semifield F>
Scalar<F> otimes(const Scalar<F>& a, const Scalar<F>& b) {
  if (a.is_zero() || b.is_zero()) return Scalar<F>::zero();
  if constexpr (F::multiplicative) {
    return Scalar<F>(a.value() * b.value());
  } else {
    return Scalar<F>(a.value() + b.value());
  }
}

template <Semifield F>
Scalar<F> inverse(const Scalar<F>& a) {
  if (a.is_zero()) throw Error(ErrorCode::inversion_of_zero, "inverse of the semifield zero");
  if constexpr (F::multiplicative) {
    return Scalar<F>(1.0 / a.value());
  } else {
    return Scalar<F>(-a.value());
  }
}

template <Semifield F>
Scalar<F> power(const Scalar<F>& a, const Rational& e) {
  if (a.is_zero()) {
    if (e > 0) return a;
    throw Error(ErrorCode::domain, "zero raised to a non-positive power");
  }
  if constexpr (F::multiplicative) {
    return Scalar<F>(std::pow(a.value(), boost::rational_cast<double>(e)));
  } else {
    return Scalar<F>(a.value() * e);
  }
}

template <Semifield F>
Scalar<F> power(const Scalar<F>& a, std::int64_t e) {
  return power(a, Rational(e));
}

/// a / b, i.e. a (x) b^-1.
template <Semifield F>
Scalar<F> odivide(const Scalar<F>& a, const Scalar<F>& b) {
  return otimes(a, inverse(b));
}

template <Semifield F>
bool leq(const Scalar<F>& a, const Scalar<F>& b) {
  return a <= b;
}

// ---------------------------------------------------------------------------
// Text form: `-3`, `7/2`, `2.5`; the zero is `null` or `.`.

inline Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw Error(ErrorCode::parse, "not a rational literal: '" + std::string(text) + "'");
  };
  if (text.empty()) return fail();
  auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) fail();
    return v;
  };
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::int64_t den = parse_int(text.substr(slash + 1));
    if (den == 0) fail();
    return Rational(parse_int(text.substr(0, slash)), den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole.front() == '-';
    if (negative || (!whole.empty() && whole.front() == '+')) whole.remove_prefix(1);
    if (frac.empty() && whole.empty()) fail();
    if (frac.size() > 15) fail();
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    std::int64_t w = whole.empty() ? 0 : parse_int(whole);
    std::int64_t f = frac.empty() ? 0 : parse_int(frac);
    if (w < 0 || f < 0) fail();
    Rational r = Rational(w) + Rational(f, den);
    return negative ? -r : r;
  }
  return Rational(parse_int(text));
}

inline std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

inline bool is_zero_token(std::string_view text) { return text == "null" || text == "."; }

template <Semifield F>
Scalar<F> parse_scalar(std::string_view text) {
  if (is_zero_token(text)) return Scalar<F>::zero();
  if constexpr (F::multiplicative) {
    if (text.find('/') != std::string_view::npos) {
      return Scalar<F>(boost::rational_cast<double>(parse_rational(text)));
    }
    double v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw Error(ErrorCode::parse, "not a real literal: '" + std::string(text) + "'");
    }
    return Scalar<F>(v);
  } else {
    return Scalar<F>(parse_rational(text));
  }
}

/// Text form of a scalar; `zero_token` spells the semifield zero.
template <Semifield F>
std::string to_string(const Scalar<F>& s, std::string_view zero_token = ".") {
  if (s.is_zero()) return std::string(zero_token);
  if constexpr (F::multiplicative) {
    return format_double(s.value());
  } else {
    return format_rational(s.value());
  }
}

template <Semifield F>
std::ostream& operator<<(std::ostream& os, const Scalar<F>& s) {
  return os << to_string(s);
}

}  // namespace tropical
