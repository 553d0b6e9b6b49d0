#include "rotlaw/angle.hpp"

#include <cmath>
#include <limits>

#include "rotlaw/errors.hpp"

namespace rotlaw {
namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace

ConvergentTable convergents(const std::vector<Integer>& quotients) {
  ConvergentTable t;
  t.quotients = quotients;
  t.p_ = {Integer(1), Integer(0)};
  t.q_ = {Integer(0), Integer(1)};
  for (const auto& a : quotients) {
    if (a < 1) throw LabError(ErrorKind::InvalidInput, "partial quotients must be >= 1");
    const std::size_t k = t.p_.size();
    t.p_.push_back(a * t.p_[k - 1] + t.p_[k - 2]);
    t.q_.push_back(a * t.q_[k - 1] + t.q_[k - 2]);
  }
  return t;
}

Angle::Angle(AngleSpec spec, std::size_t refinement_cap) : spec_(std::move(spec)), cap_(refinement_cap) {
  p_ = {Integer(1), Integer(0)};
  q_ = {Integer(0), Integer(1)};
  if (const auto* qf = std::get_if<QuadraticForm>(&spec_.form)) {
    if (qf->w <= 0) throw LabError(ErrorKind::InvalidInput, "quadratic angle needs w > 0");
    if (qf->v == 0 || is_perfect_square(qf->d)) {
      throw LabError(ErrorKind::RationalAngle, "quadratic form defines a rational number");
    }
    if (qf->v < 0 || qf->d <= 1 || !is_squarefree(qf->d)) {
      throw LabError(ErrorKind::InvalidInput, "quadratic angle needs v > 0 and squarefree d > 1");
    }
    const Integer v2d = qf->v * qf->v * qf->d;
    const bool positive = qf->u >= 0 || v2d > qf->u * qf->u;
    const Integer gap = qf->w - qf->u;
    const bool below_one = gap > 0 && v2d < gap * gap;
    if (!positive || !below_one) throw LabError(ErrorKind::InvalidInput, "angle must lie in (0,1)");
    gP_ = qf->u;
    gQ_ = qf->w;
    gD_ = v2d;
    if ((gD_ - gP_ * gP_) % gQ_ != 0) {
      gP_ *= gQ_;
      gD_ *= gQ_ * gQ_;
      gQ_ *= gQ_;
    }
    mpz_sqrt(gS_.get_mpz_t(), gD_.get_mpz_t());
    // alpha = (P + sqrt D)/Q has integer part 0; step once to 1/alpha.
    gP_ = -gP_;
    gQ_ = (gD_ - gP_ * gP_) / gQ_;
  } else {
    const auto& st = std::get<QuotientStream>(spec_.form);
    if (st.prefix.empty() && st.period.empty()) throw LabError(ErrorKind::InvalidInput, "empty quotient stream");
    for (const auto& a : st.prefix) {
      if (a < 1) throw LabError(ErrorKind::InvalidInput, "partial quotients must be >= 1");
    }
    for (const auto& a : st.period) {
      if (a < 1) throw LabError(ErrorKind::InvalidInput, "partial quotients must be >= 1");
    }
  }

  std::lock_guard<std::mutex> lock(mu_);
  std::size_t k = 0;
  const std::size_t limit = finite_length().value_or(std::numeric_limits<std::size_t>::max());
  while (k < limit && k < 200 && q_.back() < (Integer(1) << 80)) extend_to(++k);
  const std::size_t n = a_.size();
  Rational lo(p_[n + 1], q_[n + 1]);
  Rational hi(p_[n + 1] + p_[n], q_[n + 1] + q_[n]);
  approx_ = Rational((lo + hi) / 2).get_d();
}

std::optional<std::size_t> Angle::finite_length() const {
  if (const auto* st = std::get_if<QuotientStream>(&spec_.form)) {
    if (st->period.empty()) return st->prefix.size();
  }
  return std::nullopt;
}

void Angle::extend_to(std::size_t k) const {
  while (a_.size() < k) {
    const std::size_t i = a_.size() + 1;
    Integer a;
    if (std::holds_alternative<QuadraticForm>(spec_.form)) {
      a = gQ_ > 0 ? floor_div(gP_ + gS_, gQ_) : floor_div(-gP_ - gS_ - 1, -gQ_);
      gP_ = a * gQ_ - gP_;
      gQ_ = (gD_ - gP_ * gP_) / gQ_;
    } else {
      const auto& st = std::get<QuotientStream>(spec_.form);
      if (i <= st.prefix.size()) {
        a = st.prefix[i - 1];
      } else if (!st.period.empty()) {
        a = st.period[(i - 1 - st.prefix.size()) % st.period.size()];
      } else {
        throw LabError(ErrorKind::PrefixExhausted,
                       "quotient stream has only " + std::to_string(st.prefix.size()) + " terms");
      }
    }
    a_.push_back(a);
    const std::size_t m = p_.size();
    p_.push_back(a * p_[m - 1] + p_[m - 2]);
    q_.push_back(a * q_[m - 1] + q_[m - 2]);
  }
}

Integer Angle::quotient(std::size_t k) const {
  if (k == 0) throw LabError(ErrorKind::InvalidInput, "quotients are indexed from 1");
  std::lock_guard<std::mutex> lock(mu_);
  extend_to(k);
  return a_[k - 1];
}

std::pair<Integer, Integer> Angle::convergent(long k) const {
  if (k < -1) throw LabError(ErrorKind::InvalidInput, "convergent index must be >= -1");
  std::lock_guard<std::mutex> lock(mu_);
  if (k > 0) extend_to(static_cast<std::size_t>(k));
  return {p_[static_cast<std::size_t>(k + 1)], q_[static_cast<std::size_t>(k + 1)]};
}

ConvergentTable Angle::table(std::size_t n) const {
  std::lock_guard<std::mutex> lock(mu_);
  extend_to(n);
  ConvergentTable t;
  t.quotients.assign(a_.begin(), a_.begin() + static_cast<std::ptrdiff_t>(n));
  t.p_.assign(p_.begin(), p_.begin() + static_cast<std::ptrdiff_t>(n + 2));
  t.q_.assign(q_.begin(), q_.begin() + static_cast<std::ptrdiff_t>(n + 2));
  return t;
}

RationalInterval Angle::bracket(std::size_t k) const {
  std::lock_guard<std::mutex> lock(mu_);
  extend_to(k);
  const Integer& pk = p_[k + 1];
  const Integer& qk = q_[k + 1];
  return {Rational(pk, qk), Rational(pk + p_[k], qk + q_[k])};
}

int Angle::sign_linear(const Rational& a, const Rational& b) const {
  if (b == 0) return sign(a);
  const double ad = a.get_d(), bd = b.get_d();
  const double v = ad + bd * approx_;
  const double err = 1e-14 * (std::fabs(ad) + std::fabs(bd)) + 1e-300;
  if (std::isfinite(v) && std::fabs(v) > err) return v > 0 ? 1 : -1;

  Integer den;
  mpz_lcm(den.get_mpz_t(), a.get_den_mpz_t(), b.get_den_mpz_t());
  const Integer A = a.get_num() * (den / a.get_den());
  const Integer B = b.get_num() * (den / b.get_den());
  const std::size_t limit = std::min(cap_, finite_length().value_or(std::numeric_limits<std::size_t>::max()));
  for (std::size_t k = 0; k <= limit; ++k) {
    auto [pk, qk] = convergent(static_cast<long>(k));
    auto [pk1, qk1] = convergent(static_cast<long>(k) - 1);
    const int s1 = sign(Integer(A * qk + B * pk));
    const int s2 = sign(Integer(A * (qk + qk1) + B * (pk + pk1)));
    if (s1 == s2 && s1 != 0) return s1;
  }
  throw LabError(ErrorKind::PrefixExhausted, "sign of a + b*alpha undecided within " + std::to_string(limit) + " quotients");
}

RationalInterval Angle::enclose_linear(const Rational& a, const Rational& b, const Rational& width) const {
  if (b == 0) return RationalInterval(a);
  const std::size_t limit = std::min(cap_, finite_length().value_or(std::numeric_limits<std::size_t>::max()));
  for (std::size_t k = 0; k <= limit; ++k) {
    RationalInterval br = bracket(k);
    if (abs(b) * br.width() <= width || k == limit) {
      if (abs(b) * br.width() > width) break;
      return RationalInterval(a) + b * br;
    }
  }
  throw LabError(ErrorKind::PrefixExhausted, "cannot enclose a + b*alpha to the requested width");
}

ConvergentTable cf_expand(const AngleSpec& angle, std::size_t n) {
  if (n < 1) throw LabError(ErrorKind::InvalidInput, "cf_expand needs n >= 1");
  Angle a(angle);
  return a.table(n);
}

RationalInterval qn_alpha_dist(const Angle& angle, std::size_t n, const Rational& width) {
  auto [pn, qn] = angle.convergent(static_cast<long>(n));
  auto [pn1, qn1] = angle.convergent(static_cast<long>(n) + 1);
  const Rational lower(1, qn + qn1);
  const Rational upper(1, qn1);
  Rational w = width;
  const std::size_t limit = std::min(angle.refinement_cap(), angle.finite_length().value_or(std::numeric_limits<std::size_t>::max()));
  for (std::size_t iter = 0; iter <= limit; ++iter) {
    RationalInterval e = angle.enclose_linear(Rational(-pn), Rational(qn), w);
    if (e.hi < 0) e = -e;
    if (e.lo > lower && e.hi < upper) return e;
    w /= 4;
  }
  throw LabError(ErrorKind::PrefixExhausted, "cannot separate ||q_n alpha|| from its classical bounds");
}

}  // namespace rotlaw
