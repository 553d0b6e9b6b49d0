#include <doctest.h>

#include "rotlaw/angle.hpp"
#include "rotlaw/errors.hpp"
#include "test_systems.hpp"

using namespace rotlaw;

namespace {

// Distance from q*alpha to p at high precision, from an mpf value of alpha.
mpf_class oracle_dist(const mpf_class& alpha, const Integer& p, const Integer& q) {
  mpf_class v(0, 1024);
  v = mpf_class(q, 1024) * alpha - mpf_class(p, 1024);
  return abs(v);
}

bool throws_kind(ErrorKind kind, auto&& f) {
  try {
    f();
  } catch (const LabError& e) {
    return e.kind() == kind;
  }
  return false;
}

}  // namespace

TEST_CASE("golden and silver quotient streams") {
  const ConvergentTable g = cf_expand(fixtures::golden(), 5);
  for (std::size_t k = 1; k <= 5; ++k) CHECK(g.a(k) == 1);
  const ConvergentTable s = cf_expand(fixtures::silver(), 4);
  for (std::size_t k = 1; k <= 4; ++k) CHECK(s.a(k) == 2);
}

TEST_CASE("rational angles are rejected") {
  CHECK(throws_kind(ErrorKind::RationalAngle, [] { cf_expand(AngleSpec::quadratic(13, 0, 30, 1), 3); }));
  CHECK(throws_kind(ErrorKind::RationalAngle, [] { cf_expand(AngleSpec::quadratic(1, 1, 7, 4), 3); }));
  CHECK(throws_kind(ErrorKind::InvalidInput, [] { cf_expand(AngleSpec::quadratic(3, 1, 2, 5), 3); }));
}

TEST_CASE("convergent recursion") {
  const ConvergentTable f = convergents({1, 1, 1, 1, 1, 1});
  const long fib[] = {1, 1, 2, 3, 5, 8, 13};
  for (long k = 0; k <= 6; ++k) CHECK(f.q(k) == fib[k]);
  const ConvergentTable p = convergents({2, 2, 2, 2});
  const long pell[] = {1, 2, 5, 12, 29};
  for (long k = 0; k <= 4; ++k) CHECK(p.q(k) == pell[k]);
}

TEST_CASE("determinant identity alternates") {
  const ConvergentTable t = convergents({3, 7, 15, 1, 292, 1, 1, 1, 2});
  for (long k = 0; k < static_cast<long>(t.size()); ++k) {
    const Integer det = t.p(k + 1) * t.q(k) - t.p(k) * t.q(k + 1);
    CHECK(det == (k % 2 == 0 ? 1 : -1));
  }
}

TEST_CASE("distance to the nearest integer at convergents") {
  const Angle golden(fixtures::golden());
  const RationalInterval d3 = qn_alpha_dist(golden, 3);
  // (7 - 3 sqrt 5) / 2
  mpf_class s5(5, 1024);
  s5 = sqrt(s5);
  const mpf_class exact = (7 - 3 * s5) / 2;
  CHECK(mpf_class(d3.lo, 1024) <= exact);
  CHECK(exact <= mpf_class(d3.hi, 1024));
  CHECK(d3.lo > Rational(1, 10));
  CHECK(d3.hi < Rational(1, 5));

  const Angle silver(fixtures::silver());
  const RationalInterval d1 = qn_alpha_dist(silver, 1);
  mpf_class s2(2, 1024);
  s2 = sqrt(s2);
  const mpf_class exact1 = 3 - 2 * s2;
  CHECK(mpf_class(d1.lo, 1024) <= exact1);
  CHECK(exact1 <= mpf_class(d1.hi, 1024));
}

TEST_CASE("classical inequalities against a high-precision oracle") {
  struct Case {
    AngleSpec spec;
    mpf_class alpha;
  };
  const Case cases[] = {{fixtures::golden(), fixtures::golden_mpf()}, {fixtures::silver(), fixtures::silver_mpf()}};
  for (const auto& c : cases) {
    const Angle a(c.spec);
    for (std::size_t n = 1; n <= 30; ++n) {
      const auto [p, q] = a.convergent(static_cast<long>(n));
      const auto [p1, q1] = a.convergent(static_cast<long>(n + 1));
      const mpf_class d = oracle_dist(c.alpha, p, q);
      CHECK(d < mpf_class(Rational(1, q1), 1024));
      CHECK(d > mpf_class(Rational(1, q + q1), 1024));
      const RationalInterval enc = qn_alpha_dist(a, n);
      CHECK(mpf_class(enc.lo, 1024) <= d);
      CHECK(d <= mpf_class(enc.hi, 1024));
    }
  }
}

TEST_CASE("sign of linear forms in alpha") {
  const Angle a(fixtures::golden());
  CHECK(a.sign_linear(Rational(-1, 2), 1) == 1);
  CHECK(a.sign_linear(Rational(-5, 8), 1) == -1);
  CHECK(a.sign_linear(0, 0) == 0);
  CHECK(a.sign_linear(Rational(3), 0) == 1);
  const mpf_class alpha = fixtures::golden_mpf();
  for (long num = 1; num < 60; ++num) {
    const Rational x(num, 97);
    const int want = (alpha > mpf_class(x, 1024)) ? 1 : -1;
    CHECK(a.sign_linear(-x, 1) == want);
  }
}

TEST_CASE("finite quotient prefixes") {
  const Angle a(AngleSpec::stream({2, 3, 4}));
  CHECK(a.finite_length().value() == 3);
  CHECK(a.quotient(3) == 4);
  CHECK(throws_kind(ErrorKind::PrefixExhausted, [&] { a.quotient(4); }));
  const Angle w(fixtures::witness_angle());
  CHECK(w.quotient(2) == 1000);
  CHECK(w.quotient(40) == 1);
}

TEST_CASE("bracket narrows around alpha") {
  const Angle a(fixtures::silver());
  const mpf_class alpha = fixtures::silver_mpf();
  for (std::size_t k = 1; k < 20; ++k) {
    const RationalInterval b = a.bracket(k);
    CHECK(mpf_class(b.lo, 1024) < alpha);
    CHECK(alpha < mpf_class(b.hi, 1024));
  }
}
