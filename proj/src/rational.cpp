#include "rotlaw/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "rotlaw/errors.hpp"

namespace rotlaw {
namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

Integer parse_integer(std::string_view s) {
  std::string t(s);
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  return Integer(t, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den)) {
    throw LabError(ErrorKind::InvalidInput, "malformed rational \"" + std::string(text) + "\"");
  }
  Integer d = parse_integer(den);
  if (d == 0) throw LabError(ErrorKind::InvalidInput, "zero denominator in \"" + std::string(text) + "\"");
  Rational q(parse_integer(num), d);
  q.canonicalize();
  return q;
}

Rational parse_tolerance(std::string_view text) {
  if (text.find_first_of(".eE") == std::string_view::npos) return parse_rational(text);
  std::string s(text);
  std::size_t epos = s.find_first_of("eE");
  long exponent = 0;
  if (epos != std::string::npos) {
    std::string_view e = std::string_view(s).substr(epos + 1);
    if (!is_integer_literal(e)) throw LabError(ErrorKind::InvalidInput, "malformed number \"" + s + "\"");
    exponent = std::stol(std::string(e));
    s.resize(epos);
  }
  std::size_t dot = s.find('.');
  if (dot != std::string::npos) {
    exponent -= static_cast<long>(s.size() - dot - 1);
    s.erase(dot, 1);
  }
  if (!is_integer_literal(s)) throw LabError(ErrorKind::InvalidInput, "malformed number \"" + std::string(text) + "\"");
  Integer mant = parse_integer(s);
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  Rational q = exponent >= 0 ? Rational(mant * scale) : Rational(mant, scale);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& x) { return x.get_str(10); }

Integer floor(const Rational& x) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& x) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }
int sign(const Rational& x) { return sgn(x); }
int sign(const Integer& x) { return sgn(x); }

std::string to_decimal(const Rational& x, int digits) {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::max(digits, 0)));
  Rational scaled = abs(x) * scale + Rational(1, 2);
  Integer n = floor(scaled);
  std::string s = n.get_str(10);
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  }
  if (x < 0 && n != 0) s.insert(0, "-");
  return s;
}

Rational from_double(double x) {
  Rational q(x);
  q.canonicalize();
  return q;
}

Rational dyadic_upper(const Rational& x, unsigned bits) {
  Integer scale = Integer(1) << bits;
  return Rational(ceil(x * scale), scale);
}

RationalInterval::RationalInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
  if (lo > hi) std::swap(lo, hi);
}

Rational RationalInterval::magnitude() const { return std::max(abs(lo), abs(hi)); }

RationalInterval operator+(const RationalInterval& a, const RationalInterval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
RationalInterval operator-(const RationalInterval& a, const RationalInterval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
RationalInterval operator-(const RationalInterval& a) { return {-a.hi, -a.lo}; }

RationalInterval operator*(const RationalInterval& a, const RationalInterval& b) {
  Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

RationalInterval operator*(const Rational& a, const RationalInterval& b) {
  return a >= 0 ? RationalInterval(a * b.lo, a * b.hi) : RationalInterval(a * b.hi, a * b.lo);
}

RationalInterval hull(const RationalInterval& a, const RationalInterval& b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

}  // namespace rotlaw
