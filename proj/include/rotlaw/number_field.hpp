#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "rotlaw/rational.hpp"

namespace rotlaw {

/// Q[x]/(m(x)) for a declared irreducible monic m, together with a certified
/// enclosure of the distinguished real root. Degree 1 covers plain rationals.
class NumberField {
 public:
  /// `minpoly` holds coefficients c0..cd (any leading coefficient, normalized to monic).
  /// `bracket` must isolate a simple real root: m(lo) and m(hi) of opposite sign.
  static std::shared_ptr<const NumberField> make(std::vector<Rational> minpoly, const RationalInterval& bracket);

  /// The field Q itself (minimal polynomial x, root 0).
  static std::shared_ptr<const NumberField> rationals();

  int degree() const { return static_cast<int>(minpoly_.size()) - 1; }
  const std::vector<Rational>& minpoly() const { return minpoly_; }
  const RationalInterval& root() const { return root_; }
  double root_approx() const { return root_approx_; }
  /// Enclosure of root^i for 0 <= i < degree.
  const RationalInterval& root_power(int i) const { return root_powers_[static_cast<std::size_t>(i)]; }

 private:
  NumberField() = default;

  std::vector<Rational> minpoly_;
  RationalInterval root_;
  std::vector<RationalInterval> root_powers_;
  double root_approx_ = 0.0;
};

/// Element of a NumberField as a polynomial of degree < d in the root.
/// The field must outlive every element that refers to it.
class FieldElem {
 public:
  FieldElem() = default;
  FieldElem(const NumberField* field, const Rational& value);
  FieldElem(const NumberField* field, std::vector<Rational> coeffs);

  static FieldElem generator(const NumberField* field);

  const NumberField* field() const { return field_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  /// Constant coefficient; meaningful when is_rational().
  const Rational& rational_part() const { return c_[0]; }

  FieldElem& operator+=(const FieldElem& o);
  FieldElem& operator-=(const FieldElem& o);
  FieldElem& operator*=(const FieldElem& o);
  FieldElem& operator*=(const Rational& s);
  FieldElem operator-() const;

  FieldElem inverse() const;
  FieldElem pow(unsigned n) const;

  RationalInterval enclose() const;
  double to_double() const;
  /// Sign of the real value; exact for zero.
  int sign() const;

  /// Canonical text, e.g. "3/2+1*lambda" or "2".
  std::string to_string(const char* symbol = "lambda") const;

  friend bool operator==(const FieldElem& a, const FieldElem& b) { return a.c_ == b.c_; }
  friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }

 private:
  const NumberField* field_ = nullptr;
  std::vector<Rational> c_;
};

FieldElem operator+(FieldElem a, const FieldElem& b);
FieldElem operator-(FieldElem a, const FieldElem& b);
FieldElem operator*(FieldElem a, const FieldElem& b);
FieldElem operator*(FieldElem a, const Rational& s);
FieldElem operator/(const FieldElem& a, const FieldElem& b);

struct QuadraticForm {
  Integer u, v, w, d;  // (u + v*sqrt(d)) / w
};

/// How a contraction ratio lambda is declared: exactly rational, a quadratic
/// surd, or a root of a declared minimal polynomial isolated by a bracket.
struct LambdaSpec {
  struct MinPoly {
    std::vector<Rational> coeffs;
    RationalInterval bracket;
  };
  std::variant<Rational, QuadraticForm, MinPoly> form;
};

/// A declared lambda: its field and the element representing it.
struct Lambda {
  std::shared_ptr<const NumberField> field;
  FieldElem value;
};

Lambda make_lambda(const LambdaSpec& spec);

/// Certified enclosure of sqrt(n) of width at most 2^-bits.
RationalInterval sqrt_enclosure(const Integer& n, unsigned bits);
bool is_perfect_square(const Integer& n);
bool is_squarefree(const Integer& n);

namespace poly {
/// Dense polynomials c0 + c1 x + ... with rational coefficients.
using Poly = std::vector<Rational>;
void trim(Poly& p);
Poly mul(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
/// Returns remainder of a by monic-or-not b; quotient written to q when non-null.
Poly divmod(const Poly& a, const Poly& b, Poly* q);
Rational eval(const Poly& p, const Rational& x);
RationalInterval eval(const Poly& p, const RationalInterval& x);
Poly derivative(const Poly& p);
Poly gcd(Poly a, Poly b);
}  // namespace poly

}  // namespace rotlaw
