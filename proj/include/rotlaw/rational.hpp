#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace rotlaw {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p/q" or "p" (no decimal point, q != 0). Throws LabError(InvalidInput).
Rational parse_rational(std::string_view text);

/// Like parse_rational but also accepts decimal and scientific notation
/// ("0.5", "1e-12"), converted exactly. Used for tolerances only.
Rational parse_tolerance(std::string_view text);

std::string to_string(const Rational& x);

Integer floor(const Rational& x);
Integer ceil(const Rational& x);
Rational abs(const Rational& x);
int sign(const Rational& x);
int sign(const Integer& x);

/// Fixed-point decimal rendering with `digits` fractional digits, rounded half away from zero.
std::string to_decimal(const Rational& x, int digits);

/// Exact rational value of a finite double.
Rational from_double(double x);

/// Smallest dyadic m/2^bits that is >= x.
Rational dyadic_upper(const Rational& x, unsigned bits);

/// Closed interval [lo, hi] with rational endpoints.
struct RationalInterval {
  Rational lo;
  Rational hi;

  RationalInterval() = default;
  explicit RationalInterval(const Rational& x) : lo(x), hi(x) {}
  RationalInterval(Rational l, Rational h);

  Rational width() const { return hi - lo; }
  Rational mid() const { return (lo + hi) / 2; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool contains_zero() const { return lo <= 0 && hi >= 0; }
  Rational magnitude() const;

  RationalInterval inflate(const Rational& radius) const { return {lo - radius, hi + radius}; }
};

RationalInterval operator+(const RationalInterval& a, const RationalInterval& b);
RationalInterval operator-(const RationalInterval& a, const RationalInterval& b);
RationalInterval operator*(const RationalInterval& a, const RationalInterval& b);
RationalInterval operator*(const Rational& a, const RationalInterval& b);
RationalInterval operator-(const RationalInterval& a);
RationalInterval hull(const RationalInterval& a, const RationalInterval& b);

}  // namespace rotlaw
