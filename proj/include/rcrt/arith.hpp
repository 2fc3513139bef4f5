#pragma once

// Exact integer and rational primitives. Everything is arbitrary precision:
// lcms of moderately sized moduli sets overflow 64-bit words quickly.

#include <compare>
#include <ostream>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace rcrt {

using Integer = mpz_class;

/// Raised by mod_inverse when gcd(a, m) != 1.
class NotInvertible : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when an exhaustive search or enumeration would exceed its cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact rational in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(const Integer& value) : q_(value) {}  // NOLINT
  Rational(const Integer& num, const Integer& den);

  Integer num() const { return q_.get_num(); }
  Integer den() const { return q_.get_den(); }

  /// Renders as "p/q" (integers render as "p/1").
  std::string str() const;
  /// Accepts "p/q" or a plain integer.
  static Rational parse(std::string_view text);

  double to_double() const { return q_.get_d(); }
  /// Fixed-point rendering with `digits` decimals, exact halves rounded up.
  std::string to_decimal(int digits) const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return cmp(a.q_, b.q_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

 private:
  mpq_class q_;
};

struct ExtGcd {
  Integer g;  // gcd(|a|, |b|), nonnegative
  Integer x;
  Integer y;  // a*x + b*y == g
};

/// Bezout coefficients. Throws std::invalid_argument when a == b == 0.
ExtGcd ext_gcd(const Integer& a, const Integer& b);

/// gcd of absolute values; gcd(0, a) == |a|.
Integer gcd(const Integer& a, const Integer& b);

/// lcm of two positive integers.
Integer lcm(const Integer& a, const Integer& b);

/// lcm of a nonempty list of positive integers.
Integer lcm_all(std::span<const Integer> values);

/// b in [0, m) with a*b == 1 (mod m). Throws NotInvertible when gcd(a, m) != 1
/// and std::invalid_argument when m < 1. For m == 1 the answer is 0.
Integer mod_inverse(const Integer& a, const Integer& m);

/// Nearest integer with exact halves rounded up: the unique z with
/// -1/2 <= num/den - z < 1/2. Requires den > 0.
Integer round_half_up_div(const Integer& num, const Integer& den);
Integer round_half_up(const Rational& x);

/// Floor division and the matching nonnegative remainder (m > 0).
Integer floor_div(const Integer& a, const Integer& m);
Integer mod_floor(const Integer& a, const Integer& m);

Integer parse_integer(std::string_view text);
std::string to_string(const Integer& value);

/// True when value fits in int64_t.
bool fits_int64(const Integer& value);
std::int64_t to_int64(const Integer& value);

}  // namespace rcrt
