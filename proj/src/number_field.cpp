#include "rotlaw/number_field.hpp"

#include <algorithm>
#include <sstream>

#include "rotlaw/errors.hpp"

namespace rotlaw {

namespace poly {

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

Poly sub(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

Poly divmod(const Poly& a, const Poly& b, Poly* q) {
  Poly r = a;
  trim(r);
  Poly bb = b;
  trim(bb);
  if (bb.empty()) throw LabError(ErrorKind::InvalidInput, "polynomial division by zero");
  Poly quot(r.size() >= bb.size() ? r.size() - bb.size() + 1 : 0);
  const Rational& lead = bb.back();
  while (!r.empty() && r.size() >= bb.size()) {
    const std::size_t shift = r.size() - bb.size();
    Rational t = r.back() / lead;
    quot[shift] = t;
    for (std::size_t j = 0; j < bb.size(); ++j) r[shift + j] -= t * bb[j];
    r.pop_back();
    trim(r);
  }
  if (q != nullptr) {
    trim(quot);
    *q = std::move(quot);
  }
  return r;
}

Rational eval(const Poly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RationalInterval eval(const Poly& p, const RationalInterval& x) {
  RationalInterval acc(Rational(0));
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + RationalInterval(*it);
  return acc;
}

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

Poly gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = divmod(a, b, nullptr);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

}  // namespace poly

namespace {

constexpr unsigned kRootBits = 512;

}  // namespace

std::shared_ptr<const NumberField> NumberField::make(std::vector<Rational> minpoly, const RationalInterval& bracket) {
  poly::trim(minpoly);
  if (minpoly.size() < 2) throw LabError(ErrorKind::InvalidInput, "minimal polynomial must have degree >= 1");
  Rational lead = minpoly.back();
  for (auto& c : minpoly) c /= lead;

  if (poly::gcd(minpoly, poly::derivative(minpoly)).size() > 1) {
    throw LabError(ErrorKind::InvalidInput, "declared minimal polynomial is not squarefree");
  }
  if (minpoly.size() == 3) {
    Rational disc = minpoly[1] * minpoly[1] - 4 * minpoly[0];
    Integer num = disc.get_num(), den = disc.get_den();
    if (disc >= 0 && is_perfect_square(num) && is_perfect_square(den)) {
      throw LabError(ErrorKind::InvalidInput, "declared quadratic minimal polynomial has rational roots");
    }
  }

  std::shared_ptr<NumberField> k(new NumberField());
  k->minpoly_ = minpoly;
  if (minpoly.size() == 2) {
    k->root_ = RationalInterval(Rational(-minpoly[0]));
  } else {
    Rational lo = bracket.lo, hi = bracket.hi;
    int slo = sign(poly::eval(minpoly, lo));
    int shi = sign(poly::eval(minpoly, hi));
    if (slo == 0 || shi == 0 || slo == shi) {
      throw LabError(ErrorKind::InvalidInput, "bracket does not isolate a sign change of the minimal polynomial");
    }
    const Rational target = Rational(1, Integer(1) << kRootBits);
    while (hi - lo > target) {
      Rational mid = (lo + hi) / 2;
      int sm = sign(poly::eval(minpoly, mid));
      if (sm == 0) {
        throw LabError(ErrorKind::InvalidInput, "declared minimal polynomial has a rational root");
      }
      if (sm == slo) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    k->root_ = RationalInterval(lo, hi);
  }
  k->root_approx_ = k->root_.mid().get_d();
  RationalInterval power(Rational(1));
  for (int i = 0; i < k->degree(); ++i) {
    k->root_powers_.push_back(power);
    power = power * k->root_;
  }
  return k;
}

std::shared_ptr<const NumberField> NumberField::rationals() {
  static const std::shared_ptr<const NumberField> q = make({Rational(0), Rational(1)}, RationalInterval(Rational(0)));
  return q;
}

FieldElem::FieldElem(const NumberField* field, const Rational& value) : field_(field), c_(static_cast<std::size_t>(field->degree())) {
  c_[0] = value;
}

FieldElem::FieldElem(const NumberField* field, std::vector<Rational> coeffs) : field_(field), c_(std::move(coeffs)) {
  const std::size_t d = static_cast<std::size_t>(field->degree());
  if (c_.size() > d) {
    poly::Poly r = poly::divmod(c_, field->minpoly(), nullptr);
    c_ = std::move(r);
  }
  c_.resize(d);
}

FieldElem FieldElem::generator(const NumberField* field) {
  if (field->degree() == 1) return FieldElem(field, Rational(-field->minpoly()[0]));
  std::vector<Rational> c(static_cast<std::size_t>(field->degree()));
  c[1] = 1;
  return FieldElem(field, std::move(c));
}

bool FieldElem::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& x) { return x == 0; });
}

bool FieldElem::is_rational() const {
  return std::all_of(c_.begin() + 1, c_.end(), [](const Rational& x) { return x == 0; });
}

FieldElem& FieldElem::operator+=(const FieldElem& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

FieldElem& FieldElem::operator*=(const Rational& s) {
  for (auto& c : c_) c *= s;
  return *this;
}

FieldElem& FieldElem::operator*=(const FieldElem& o) {
  const std::size_t d = c_.size();
  if (d == 1) {
    c_[0] *= o.c_[0];
    return *this;
  }
  std::vector<Rational> prod(2 * d - 1);
  for (std::size_t i = 0; i < d; ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (o.c_[j] != 0) prod[i + j] += c_[i] * o.c_[j];
    }
  }
  const auto& m = field_->minpoly();
  for (std::size_t k = prod.size() - 1; k >= d; --k) {
    if (prod[k] == 0) continue;
    Rational t = prod[k];
    for (std::size_t j = 0; j < d; ++j) prod[k - d + j] -= t * m[j];
    prod[k] = 0;
  }
  prod.resize(d);
  c_ = std::move(prod);
  return *this;
}

FieldElem FieldElem::operator-() const {
  FieldElem out = *this;
  for (auto& c : out.c_) c = -c;
  return out;
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) throw LabError(ErrorKind::InvalidInput, "inverse of zero field element");
  if (c_.size() == 1) return FieldElem(field_, Rational(1 / c_[0]));
  poly::Poly r0 = field_->minpoly(), r1 = c_;
  poly::trim(r1);
  poly::Poly s0, s1{Rational(1)};
  while (r1.size() > 1) {
    poly::Poly q;
    poly::Poly rem = poly::divmod(r0, r1, &q);
    poly::Poly s2 = poly::sub(s0, poly::mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r1.empty()) throw LabError(ErrorKind::InvalidInput, "element not invertible: declared minimal polynomial is reducible");
  for (auto& c : s1) c /= r1[0];
  return FieldElem(field_, std::move(s1));
}

FieldElem FieldElem::pow(unsigned n) const {
  FieldElem result(field_, Rational(1));
  FieldElem base = *this;
  while (n > 0) {
    if (n & 1U) result *= base;
    base *= base;
    n >>= 1U;
  }
  return result;
}

RationalInterval FieldElem::enclose() const {
  RationalInterval acc(c_[0]);
  for (std::size_t i = 1; i < c_.size(); ++i) {
    if (c_[i] != 0) acc = acc + c_[i] * field_->root_power(static_cast<int>(i));
  }
  return acc;
}

double FieldElem::to_double() const {
  if (is_rational()) return c_[0].get_d();
  return enclose().mid().get_d();
}

int FieldElem::sign() const {
  if (is_zero()) return 0;
  RationalInterval iv = enclose();
  if (iv.lo > 0) return 1;
  if (iv.hi < 0) return -1;
  throw LabError(ErrorKind::InvalidInput, "sign undecidable at the configured root precision");
}

std::string FieldElem::to_string(const char* symbol) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!first && c_[i] > 0) os << '+';
    os << c_[i].get_str();
    if (i >= 1) os << '*' << symbol;
    if (i >= 2) os << '^' << i;
    first = false;
  }
  if (first) os << '0';
  return os.str();
}

FieldElem operator+(FieldElem a, const FieldElem& b) { return a += b; }
FieldElem operator-(FieldElem a, const FieldElem& b) { return a -= b; }
FieldElem operator*(FieldElem a, const FieldElem& b) { return a *= b; }
FieldElem operator*(FieldElem a, const Rational& s) { return a *= s; }
FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inverse(); }

bool is_perfect_square(const Integer& n) {
  if (n < 0) return false;
  return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

bool is_squarefree(const Integer& n) {
  Integer m = n < 0 ? Integer(-n) : n;
  if (m == 0) return false;
  for (Integer p = 2; p * p <= m; ++p) {
    if (m % (p * p) == 0) return false;
    while (m % p == 0) m /= p;
  }
  return true;
}

RationalInterval sqrt_enclosure(const Integer& n, unsigned bits) {
  Integer scaled = n << (2 * bits);
  Integer s;
  mpz_sqrt(s.get_mpz_t(), scaled.get_mpz_t());
  Integer den = Integer(1) << bits;
  Rational lo(s, den), hi(s + 1, den);
  lo.canonicalize();
  hi.canonicalize();
  if (s * s == scaled) return RationalInterval(lo);
  return {lo, hi};
}

Lambda make_lambda(const LambdaSpec& spec) {
  Lambda out;
  if (const auto* q = std::get_if<Rational>(&spec.form)) {
    out.field = NumberField::make({Rational(-*q), Rational(1)}, RationalInterval(*q));
  } else if (const auto* qf = std::get_if<QuadraticForm>(&spec.form)) {
    if (qf->w <= 0 || qf->v == 0 || qf->d <= 1 || !is_squarefree(qf->d)) {
      throw LabError(ErrorKind::InvalidInput, "quadratic lambda needs w > 0, v != 0, d > 1 squarefree");
    }
    Rational w(qf->w), u(qf->u), v(qf->v), d(qf->d);
    std::vector<Rational> mp = {u * u - v * v * d, -2 * u * w, w * w};
    RationalInterval s = sqrt_enclosure(qf->d, 256);
    RationalInterval br((u + v * s.lo) / w, (u + v * s.hi) / w);
    out.field = NumberField::make(std::move(mp), br);
  } else {
    const auto& mp = std::get<LambdaSpec::MinPoly>(spec.form);
    out.field = NumberField::make(mp.coeffs, mp.bracket);
  }
  out.value = FieldElem::generator(out.field.get());
  return out;
}

}  // namespace rotlaw
