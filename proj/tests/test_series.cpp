#include <doctest.h>

#include <cmath>

#include "rotlaw/errors.hpp"
#include "rotlaw/series.hpp"
#include "test_systems.hpp"

using namespace rotlaw;

namespace {

// Depth-n sum of 2^-k b(x + k alpha) for the half-indicator b, evaluated in mpf.
double brute_half_indicator(const mpf_class& alpha, const mpf_class& x, int depth) {
  mpf_class y(x, 512), sum(0, 512), w(1, 512);
  for (int k = 0; k < depth; ++k) {
    mpf_class frac = y - floor(y);
    if (frac < 0.5) sum += w;
    w /= 2;
    y += alpha;
  }
  return sum.get_d();
}

bool contains(const RationalInterval& iv, double x, double slack = 0.0) {
  return iv.lo.get_d() - slack <= x && x <= iv.hi.get_d() + slack;
}

}  // namespace

TEST_CASE("tail depth by the closed-form radius") {
  const RotationSystem b = build_system(fixtures::system_b());
  CHECK(tail_radius(b, 0) == 2);
  CHECK(tail_radius(b, 5) == Rational(1, 16));
  // smallest n with 2^(1-n) <= 2^-11 is 12
  CHECK(tail_depth(b, Rational(1, 2048)) == 12);
  CHECK(tail_depth(b, Rational(1, 4096)) == 13);
  CHECK(tail_depth(b, Rational(2)) == 0);
  CHECK(tail_depth(b, Rational(5)) == 0);
  for (long e = 1; e < 40; ++e) {
    const Rational eps(1, Integer(3) << static_cast<unsigned>(e));
    const std::size_t n = tail_depth(b, eps);
    CHECK(tail_radius(b, n) <= eps);
    if (n > 0) CHECK(tail_radius(b, n - 1) > eps);
  }
}

TEST_CASE("ratio products") {
  const RotationSystem b = build_system(fixtures::system_b());
  CHECK(ratio_product(b, CirclePoint(0), 0, Side::Right).rational_part() == 1);
  CHECK(ratio_product(b, CirclePoint(0), 2, Side::Right).rational_part() == Rational(1, 4));
  const RotationSystem a = build_system(fixtures::system_a());
  const FieldElem lam = *a.lambda();
  CHECK(ratio_product(a, CirclePoint(Rational(1, 3)), 5, Side::Left) == lam.pow(5));
  const LogSum ls = log_sum(b, CirclePoint(Rational(1, 3)), 10, Side::Right);
  CHECK(ls.lo <= 10 * std::log(2.0));
  CHECK(ls.hi >= 10 * std::log(2.0));
}

TEST_CASE("X is a certified enclosure") {
  const RotationSystem d = build_system(fixtures::delta_two());
  const XEnclosure e2 = eval_X(d, CirclePoint(Rational(1, 7)), Side::Right, Rational(1, 1000000));
  CHECK(e2.interval.contains(2));
  CHECK(e2.interval.width() <= Rational(2, 1000000));

  const RotationSystem a = build_system(fixtures::system_a());
  const XEnclosure ea = eval_X(a, CirclePoint(Rational(1, 10)), Side::Right, Rational(1, 1000000000000L));
  CHECK(ea.interval.contains(1));

  const RotationSystem b = build_system(fixtures::system_b());
  const mpf_class alpha = fixtures::silver_mpf();
  for (long num : {1L, 3L, 7L, 9L}) {
    const Rational x(num, 10);
    const XEnclosure eb = eval_X(b, CirclePoint(x), Side::Right, Rational(1, 1000000000000L));
    const double brute = brute_half_indicator(alpha, mpf_class(x, 512), 200);
    CHECK(contains(eb.interval, brute, 1e-15));
    CHECK(eb.interval.width() <= Rational(2, 1000000000000L));
  }
}

TEST_CASE("left and right limits differ only at orbit points") {
  const RotationSystem b = build_system(fixtures::system_b());
  const Rational eps(1, 1000000000);
  const XEnclosure r = eval_X(b, CirclePoint(0), Side::Right, eps);
  const XEnclosure l = eval_X(b, CirclePoint(0), Side::Left, eps);
  CHECK((r.interval.mid() - l.interval.mid()) > Rational(9, 10));
  const XEnclosure r2 = eval_X(b, CirclePoint(Rational(1, 3)), Side::Right, eps);
  const XEnclosure l2 = eval_X(b, CirclePoint(Rational(1, 3)), Side::Left, eps);
  CHECK(r2.partial == l2.partial);
}

TEST_CASE("cylinder measure examples") {
  const RotationSystem b = build_system(fixtures::system_b());
  const CylinderMeasure c1 = cylinder_measure(b, 1);
  REQUIRE(c1.pieces.size() == 2);
  CHECK(c1.pieces[0].value.rational_part() == 1);
  CHECK(c1.pieces[1].value.rational_part() == 0);
  CHECK(c1.pieces[0].weight == AlphaNumber(Rational(1, 2), 0));
  CHECK(c1.pieces[1].weight == AlphaNumber(Rational(1, 2), 0));

  // Raw depth-n values are X - lambda^n X o T^n, so they cluster around the four
  // atoms {0, 1, 1+lambda, 2+lambda}; grouping by nearest atom recovers the exact masses.
  const RotationSystem a = build_system(fixtures::system_a());
  const FieldElem lam = *a.lambda();
  const FieldElem one = a.one();
  const std::vector<FieldElem> atoms{a.zero(), one, one + lam, one + one + lam};
  const std::vector<AlphaNumber> masses{AlphaNumber(Rational(-1, 2), 1), AlphaNumber(1, -1), AlphaNumber(1, -1),
                                        AlphaNumber(Rational(-1, 2), 1)};
  for (std::size_t n = 8; n <= 12; ++n) {
    const CylinderMeasure c = cylinder_measure(a, n);
    CHECK(c.total_weight() == AlphaNumber(1, 0));
    CHECK(c.pieces.size() <= n * a.N());
    const double radius = c.radius.get_d();
    REQUIRE(radius < 0.3);
    std::vector<AlphaNumber> grouped(4);
    for (const auto& p : c.pieces) {
      std::size_t best = 0;
      for (std::size_t i = 1; i < 4; ++i) {
        if (std::abs(p.value_approx - atoms[i].to_double()) < std::abs(p.value_approx - atoms[best].to_double())) best = i;
      }
      CHECK(std::abs(p.value_approx - atoms[best].to_double()) <= radius);
      grouped[best] += p.weight;
    }
    for (std::size_t i = 0; i < 4; ++i) CHECK(grouped[i] == masses[i]);
  }
}

TEST_CASE("cylinder pieces agree with pointwise partial sums") {
  const RotationSystem b = build_system(fixtures::system_b());
  const mpf_class alpha = fixtures::silver_mpf();
  for (std::size_t n : {1u, 4u, 9u}) {
    const CylinderMeasure c = cylinder_measure(b, n, 2);
    CHECK(c.pieces.size() <= n * b.N());
    CHECK(c.total_weight() == AlphaNumber(1, 0));
    for (const auto& p : c.pieces) {
      // midpoint of the forward arc from lo to hi
      double mid = p.lo.rat.get_d() + p.lo.rot.get_d() * alpha.get_d();
      mid = mid - std::floor(mid) + p.weight_approx / 2;
      const double brute = brute_half_indicator(alpha, mpf_class(mid, 512), static_cast<int>(n));
      CHECK(std::abs(brute - p.value_approx) < 1e-12);
    }
  }
}

TEST_CASE("cylinder CSV and decimals") {
  const RotationSystem b = build_system(fixtures::system_b());
  const std::string csv = cylinder_csv(b, cylinder_measure(b, 1), 6);
  CHECK(csv.rfind("interval_lo,interval_hi,value,weight,", 0) == 0);
  CHECK(csv.find("0.500000") != std::string::npos);
  const RotationSystem a = build_system(fixtures::system_a());
  CHECK(decimal(*a.lambda(), 8) == "0.61803399");
}

TEST_CASE("non-positive tolerances are rejected") {
  const RotationSystem b = build_system(fixtures::system_b());
  CHECK_THROWS_AS(tail_depth(b, Rational(0)), LabError);
  CHECK_THROWS_AS(eval_X(b, CirclePoint(0), Side::Right, Rational(-1)), LabError);
}
