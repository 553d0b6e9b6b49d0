#pragma once

#include <optional>
#include <string>

#include "rotlaw/angle.hpp"

namespace rotlaw {

/// Exact real number rat + rot*alpha.
struct AlphaNumber {
  Rational rat;
  Rational rot;

  AlphaNumber() = default;
  AlphaNumber(Rational r, Rational s) : rat(std::move(r)), rot(std::move(s)) {}

  AlphaNumber& operator+=(const AlphaNumber& o) {
    rat += o.rat;
    rot += o.rot;
    return *this;
  }
  AlphaNumber& operator-=(const AlphaNumber& o) {
    rat -= o.rat;
    rot -= o.rot;
    return *this;
  }
  friend AlphaNumber operator+(AlphaNumber a, const AlphaNumber& b) { return a += b; }
  friend AlphaNumber operator-(AlphaNumber a, const AlphaNumber& b) { return a -= b; }
  friend AlphaNumber operator*(const Rational& s, const AlphaNumber& a) { return {s * a.rat, s * a.rot}; }
  friend bool operator==(const AlphaNumber& a, const AlphaNumber& b) { return a.rat == b.rat && a.rot == b.rot; }

  double to_double(const Angle& angle) const;
  RationalInterval enclose(const Angle& angle, const Rational& width = Rational(1, Integer(1) << 80)) const;
  /// "rat+rot*alpha" with zero parts omitted.
  std::string to_string() const;
};

/// Exact sign / order of real numbers in Q + Q*alpha.
int sign(const Angle& angle, const AlphaNumber& x);
int compare_numbers(const Angle& angle, const AlphaNumber& x, const AlphaNumber& y);

/// Point (rat + rot*alpha) mod 1 on the circle.
struct CirclePoint {
  Rational rat;
  Rational rot;

  CirclePoint() = default;
  CirclePoint(Rational r, Rational s = Rational(0)) : rat(std::move(r)), rot(std::move(s)) {}

  AlphaNumber as_number() const { return {rat, rot}; }
  std::string to_string() const { return as_number().to_string(); }
};

enum class Order { LT, EQ, GT };

/// Representative with 0 <= rat + rot*alpha < 1.
CirclePoint canonical(const Angle& angle, const CirclePoint& x);

/// Double approximation of the canonical representative in [0,1).
double approx(const Angle& angle, const CirclePoint& x);

/// Exact equality on the circle.
bool same_point(const CirclePoint& x, const CirclePoint& y);

/// Exact order of canonical representatives in [0,1).
Order compare(const Angle& angle, const CirclePoint& x, const CirclePoint& y);

/// x + steps*alpha mod 1, canonical.
CirclePoint rotate(const Angle& angle, const CirclePoint& x, long long steps);

/// The unique p with y = T^p x, if any.
std::optional<long long> orbit_offset(const CirclePoint& x, const CirclePoint& y);

/// Length of the forward arc from u to v: in (0,1), or exactly 1 when u == v.
AlphaNumber forward_length(const Angle& angle, const CirclePoint& u, const CirclePoint& v);

}  // namespace rotlaw
