// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "rotlaw/atomicity.hpp"
#include "rotlaw/cli.hpp"
#include "rotlaw/errors.hpp"
#include "rotlaw/ifs.hpp"
#include "rotlaw/measure_lab.hpp"
#include "rotlaw/spectral.hpp"
#include "test_systems.hpp"

using namespace rotlaw;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += "failed: " + what;
    }
  }
  void note(const std::string& s) {
    if (!detail.empty()) detail += "; ";
    detail += s;
  }
};

std::string fmt(double x, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

// 1. Continued fractions of the golden and silver angles.
Outcome cf_criterion() {
  Outcome o;
  struct Case {
    AngleSpec spec;
    long quotient;
    mpf_class alpha;
  };
  const Case cases[] = {{fixtures::golden(), 1, fixtures::golden_mpf()}, {fixtures::silver(), 2, fixtures::silver_mpf()}};
  for (const auto& c : cases) {
    const Angle angle(c.spec);
    const ConvergentTable t = cf_expand(c.spec, 52);
    bool quotients = true, det = true, upper = true, lower = true;
    for (std::size_t k = 1; k <= 50; ++k) quotients = quotients && t.a(k) == c.quotient;
    for (long n = 0; n <= 50; ++n) {
      const Integer d = t.p(n + 1) * t.q(n) - t.p(n) * t.q(n + 1);
      det = det && d == (n % 2 == 0 ? 1 : -1);
      // 1/(q_n + q_{n+1}) < |q_n alpha - p_n| < 1/q_{n+1}, decided by exact signs
      const int s = angle.sign_linear(Rational(-t.p(n)), Rational(t.q(n)));
      const Rational p(s * t.p(n)), q(s * t.q(n));
      upper = upper && angle.sign_linear(-p - Rational(1, t.q(n + 1)), q) < 0;
      lower = lower && angle.sign_linear(-p - Rational(1, t.q(n) + t.q(n + 1)), q) > 0;
      // and again in 1024-bit floating point
      mpf_class dist(0, 1024);
      dist = abs(mpf_class(t.q(n), 1024) * c.alpha - mpf_class(t.p(n), 1024));
      upper = upper && dist < mpf_class(1, 1024) / mpf_class(t.q(n + 1), 1024);
      lower = lower && dist > mpf_class(1, 1024) / mpf_class(t.q(n) + t.q(n + 1), 1024);
    }
    o.require(quotients, "quotient stream");
    o.require(det, "determinant identity");
    o.require(upper && lower, "classical inequalities");
  }
  o.note("50 terms for golden and silver angles");
  return o;
}

// 2. Chains on orbit translates with known offsets.
Outcome chain_criterion() {
  Outcome o;
  const auto angle = std::make_shared<const Angle>(fixtures::silver());
  std::mt19937_64 rng(20240601);
  std::size_t mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int bases = 1 + static_cast<int>(rng() % 5);
    std::vector<CirclePoint> pts;
    std::vector<std::pair<int, long>> truth;  // (base, offset) per point
    for (int k = 0; k < bases; ++k) {
      Rational base(static_cast<long>(k + 1), static_cast<long>(bases + 3));
      base.canonicalize();
      std::set<long> offs;
      const int members = 1 + static_cast<int>(rng() % 5);
      while (static_cast<int>(offs.size()) < members) offs.insert(static_cast<long>(rng() % 25) - 5);
      for (long off : offs) {
        pts.emplace_back(base + static_cast<long>(rng() % 5) - 2, off);
        truth.emplace_back(k, off);
      }
    }
    // Partition sorts its points; recover the truth labels by position.
    const Partition part(angle, pts);
    std::vector<std::pair<int, long>> label(part.size());
    for (std::size_t i = 0; i < part.size(); ++i) {
      for (std::size_t j = 0; j < pts.size(); ++j) {
        if (same_point(part.point(i), pts[j])) label[i] = truth[j];
      }
    }
    // Brute-force rotation scan: y = x + p alpha (mod 1) for some |p| <= 40.
    auto scan = [&](const CirclePoint& x, const CirclePoint& y) -> std::optional<long> {
      for (long p = -40; p <= 40; ++p) {
        if (x.rot + p == y.rot && Rational(y.rat - x.rat).get_den() == 1) return p;
      }
      return std::nullopt;
    };
    const ChainDecomposition cd = chain_decompose(part);
    bool ok = cd.K() == static_cast<std::size_t>(bases);
    std::size_t covered = 0;
    for (const auto& c : cd.chains) {
      covered += c.members.size();
      long lowest = label[c.members.front()].second;
      for (std::size_t i = 0; i < c.members.size(); ++i) {
        const auto [b, off] = label[c.members[i]];
        lowest = std::min(lowest, off);
        ok = ok && b == label[c.base].first;
        const auto p = scan(part.point(c.base), part.point(c.members[i]));
        ok = ok && p && *p == c.offsets[i];
      }
      for (std::size_t i = 0; i < c.members.size(); ++i) ok = ok && c.offsets[i] == label[c.members[i]].second - lowest;
    }
    ok = ok && covered == part.size();
    if (!ok) ++mismatches;
  }
  o.require(mismatches == 0, std::to_string(mismatches) + " of 200 sets disagree with the oracle");
  o.note("200 randomized sets");
  return o;
}

// 3. Atomic versus continuous laws.
Outcome atomicity_criterion() {
  Outcome o;
  const RotationSystem a = build_system(fixtures::system_a());
  const AtomicityVerdict va = classify(a);
  o.require(va.verdict == Verdict::Atomic, "SYSTEM-A atomic");
  bool multiples = va.jumps.size() == 2;
  for (const auto& j : va.jumps) {
    const auto& c = j.polynomial;
    multiples = multiples && j.verdict == JumpVerdict::Zero && c.size() >= 3 && c[2] != 0 && c[1] == c[2] &&
                c[0] == -c[2];
    for (std::size_t i = 3; i < c.size(); ++i) multiples = multiples && c[i] == 0;
  }
  o.require(multiples, "jump polynomials are multiples of x^2+x-1");

  const std::vector<Atom> atoms = atom_support(a);
  std::size_t bound = 0;
  for (const auto& c : chain_decompose(a).chains) bound += 1 + static_cast<std::size_t>(c.p());
  AlphaNumber total;
  for (const auto& at : atoms) total += at.mass;
  o.require(atoms.size() == 4, "exactly 4 atoms");
  o.require(bound == 6 && atoms.size() <= bound, "atom bound 6");
  o.require(total == AlphaNumber(1, 0), "masses sum to 1 exactly");

  const SampleBatch s = sample_law(a, 100000, 60, 3, workers());
  const std::size_t clusters = cluster_count(s.values, 1e-9);
  o.require(clusters <= 4, "samples form <= 4 clusters");

  const RotationSystem b = build_system(fixtures::system_b());
  const AtomicityVerdict vb = classify(b);
  bool exact_jump = false;
  for (const auto& j : vb.jumps) exact_jump = exact_jump || (j.exact && j.verdict == JumpVerdict::NonZero);
  o.require(vb.verdict == Verdict::Continuous && exact_jump, "SYSTEM-B continuous by an exact jump");

  struct Recipe {
    AngleSpec angle;
    std::vector<Rational> coeffs;
    LambdaSpec lambda;
  };
  const Recipe recipes[] = {
      {fixtures::golden(), {1, 1, -1}, fixtures::golden_lambda()},
      {fixtures::silver(), {2, -1}, LambdaSpec{Rational(1, 2)}},
      {fixtures::silver(), {3, -2}, LambdaSpec{Rational(2, 3)}},
      {fixtures::golden(), {2, 1, -1}, LambdaSpec{Rational(1, 2)}},
  };
  std::mt19937_64 rng(77);
  double worst = 0.0;
  for (const auto& r : recipes) {
    const auto angle = std::make_shared<const Angle>(r.angle);
    const CoboundaryExample ex = coboundary_build(angle, fixtures::half_indicator(), r.coeffs, r.lambda);
    o.require(classify(ex.system).verdict == Verdict::Atomic, "coboundary output atomic");
    for (int i = 0; i < 1000; ++i) {
      Rational x(static_cast<long>(rng() % 1000003), 1000003);
      x.canonicalize();
      const FieldElem want = ex.predict(CirclePoint(x), Side::Right);
      const XEnclosure got = eval_X(ex.system, CirclePoint(x), Side::Right, Rational(1, 100000000000000L));
      worst = std::max(worst, std::abs(got.interval.mid().get_d() - want.to_double()));
    }
  }
  o.require(worst <= 1e-12, "coboundary closed form within 1e-12");
  o.note("4 atoms, " + std::to_string(clusters) + " clusters, coboundary max error " + fmt(worst));
  return o;
}

// 4. Box-counting dimension of SYSTEM-B.
Outcome dimension_criterion() {
  Outcome o;
  // Ratio ceiling frozen from the reference run (ratios 5.0 to 5.9).
  const double ceiling = 8.0;
  const RotationSystem b = build_system(fixtures::system_b());
  std::vector<Rational> scales;
  Integer den = 1;
  for (int e = 3; e <= 9; ++e) {
    den = 1;
    for (int i = 0; i < e; ++i) den *= 10;
    scales.emplace_back(1, den);
  }
  const DimensionFit f = dimension_fit(b, scales, workers());
  double top = 0.0;
  for (double r : f.ratios) top = std::max(top, r);
  o.require(f.slope <= 0.05, "slope " + fmt(f.slope) + " > 0.05");
  o.require(top <= ceiling, "N(eps)/log(1/eps) above " + fmt(ceiling));
  o.note("slope " + fmt(f.slope) + ", max N(eps)/log(1/eps) " + fmt(top));
  return o;
}

// 5. Fourier values against Monte Carlo.
Outcome fourier_criterion() {
  Outcome o;
  const Rational eps(1, 1000000);
  const std::size_t m = 1000000;
  const double four_sigma = 4.0 / std::sqrt(static_cast<double>(m));
  double worst = 0.0;
  const std::pair<const char*, SystemConfig> systems[] = {
      {"A", fixtures::system_a()}, {"B", fixtures::system_b()}, {"W", fixtures::system_w()}};
  for (const auto& [name, cfg] : systems) {
    const RotationSystem s = build_system(cfg);
    const SampleBatch batch = sample_law(s, m, 60, 11, workers());
    const FourierEvaluator hat(s, 100.0, eps, workers());
    for (double t : {1.0, 10.0, 100.0}) {
      std::complex<double> mc = 0.0;
      for (double v : batch.values) mc += std::polar(1.0, 2.0 * std::numbers::pi * t * v);
      mc /= static_cast<double>(m);
      const FourierValue f = hat(t);
      const double diff = std::abs(f.value - mc);
      worst = std::max(worst, diff / (eps.get_d() + four_sigma));
      o.require(f.error <= eps.get_d(), std::string(name) + " error bound above eps");
      o.require(diff <= eps.get_d() + four_sigma, std::string(name) + " t=" + fmt(t) + " differs by " + fmt(diff));
    }
  }
  o.note("worst |diff| / (eps + 4 sigma) = " + fmt(worst));
  return o;
}

// 6. Wiener averages.
Outcome wiener_criterion() {
  Outcome o;
  const Rational eps(1, 1000000);
  const RotationSystem a = build_system(fixtures::system_a());
  const RotationSystem b = build_system(fixtures::system_b());
  const WienerReport wa = wiener_average(a, 1e4, 200000, eps, workers());
  const WienerReport wb = wiener_average(b, 1e4, 200000, eps, workers());
  double squares = 0.0;
  for (const auto& at : atom_support(a)) squares += at.mass_approx * at.mass_approx;
  const double rel = std::abs(wa.value - squares) / squares;
  o.require(rel <= 0.05, "SYSTEM-A off by " + fmt(100 * rel) + "%");
  o.require(wb.value * 10.0 <= wa.value, "SYSTEM-B only " + fmt(wa.value / wb.value) + "x smaller");
  o.note("A " + fmt(wa.value, 6) + " vs sum of squared masses " + fmt(squares, 6) + ", B " + fmt(wb.value, 6));
  return o;
}

// 7. Non-decay witness on SYSTEM-W.
Outcome witness_criterion() {
  Outcome o;
  const RotationSystem w = build_system(fixtures::system_w());
  const WitnessLevel level = build_witness_level(w, 1, 25, 13);
  o.require(level.values.size() <= 4, "Z_1 has more than 4 values");
  o.require(level.omega_upper <= Rational(1, 10), "|Omega_1| > 1/10");
  WitnessCertificate cert = witness_search(level, 28561, workers());
  o.require(cert.found && cert.gap <= Rational(1, 13), "no t with max gap <= 1/13");
  o.require(cert.certificate >= Rational(3, 10), "certificate below 0.3");
  const Rational eps(1, 1000000);
  cross_check(w, level, cert, eps, {2, 3}, workers());
  const double measured = cert.measured ? cert.measured->modulus() : 0.0;
  o.require(measured >= cert.certificate.get_d() - eps.get_d(), "measured value below certificate - eps");
  bool mult = cert.multipliers.size() == 2;
  for (const auto& m : cert.multipliers) mult = mult && m.holds;
  o.require(mult, "multiplier clause for 2 and 3");
  o.note("t=" + std::to_string(cert.t) + ", " + std::to_string(level.values.size()) + " values, |Omega| <= " +
         fmt(level.omega_upper.get_d()) + ", certificate " + fmt(cert.certificate.get_d()) + ", measured " +
         fmt(measured));
  return o;
}

// 8. Fourier transform along powers of a Pisot number.
Outcome pisot_criterion() {
  Outcome o;
  // Floor frozen from the reference run (minimum 0.1299).
  const double floor_value = 0.12;
  const Rational eps(1, 1000000);
  const RotationSystem c = build_system(fixtures::system_c());
  const PisotReport rep = pisot_hat_sequence(c, 15, eps, true, CirclePoint(Rational(1, 7)), workers());
  double lowest = 1.0;
  for (const auto& p : rep.points) {
    if (p.n >= 1) lowest = std::min(lowest, p.hat.modulus() - p.hat.error);
  }
  o.require(lowest >= floor_value, "modulus " + fmt(lowest) + " below the floor");
  const RotationSystem ctrl = build_system(fixtures::control_055());
  const PisotReport rc = pisot_hat_sequence(ctrl, 15, eps, false, CirclePoint(Rational(1, 7)), workers());
  std::string tail;
  for (std::size_t n = 11; n <= 15; ++n) tail += (n > 11 ? " " : "") + fmt(rc.points[n].hat.modulus(), 3);
  o.note("SYSTEM-C min " + fmt(lowest) + " >= " + fmt(floor_value) + "; control n=11..15: " + tail);
  return o;
}

// 9. Algebra of the branch maps.
Outcome algebra_criterion() {
  Outcome o;
  const NumberField* Q = NumberField::rationals().get();
  auto affine = [&](const Rational& b, const Rational& r) { return AffineMap{FieldElem(Q, b), FieldElem(Q, r)}; };
  std::mt19937_64 rng(4);
  std::vector<std::pair<AffineMap, AffineMap>> pairs;
  for (int i = 0; i < 100; ++i) {
    Rational c(static_cast<long>(rng() % 41) - 20, 1 + static_cast<long>(rng() % 9));
    Rational r1(1 + static_cast<long>(rng() % 98), 99), r2(1 + static_cast<long>(rng() % 98), 99);
    c.canonicalize();
    r1.canonicalize();
    r2.canonicalize();
    Rational c2 = (rng() % 2 == 0) ? c : c + Rational(1 + static_cast<long>(rng() % 7), 13);
    c2.canonicalize();
    pairs.emplace_back(affine(c * (1 - r1), r1), affine(c2 * (1 - r2), r2));
  }
  const auto res = commutation_equiv_test(pairs);
  bool equiv = res.size() == 100;
  for (const auto& r : res) equiv = equiv && r.commute == r.same_fix;
  o.require(equiv, "commutation iff shared fixed point");

  const auto golden = zpm_one_root_check(fixtures::golden_lambda(), 20);
  o.require(golden && *golden == std::vector<int>{-1, 1, 1}, "golden root polynomial (-1,1,1)");
  o.require(!zpm_one_root_check(LambdaSpec{Rational(1, 2)}, 20), "no polynomial for 1/2");
  o.require(!zpm_one_root_check(LambdaSpec{Rational(2, 3)}, 20), "no polynomial for 2/3");

  PiecewiseConstant<Rational> pm{{CirclePoint(0), CirclePoint(Rational(1, 2))}, {Rational(1), Rational(-1)}};
  const InjectivityReport r23 =
      injectivity_report(build_system({fixtures::silver(), pm, LambdaSpec{Rational(2, 3)}}), 8);
  o.require(r23.injective(), "r=2/3 collisions by depth 8");
  const InjectivityReport rg = injectivity_report(build_system({fixtures::silver(), pm, fixtures::golden_lambda()}), 4);
  o.require(!rg.injective(), "golden lambda injective to depth 4");
  o.note("100 pairs, " + std::to_string(r23.minimal_count) + " minimal words at depth 8, " +
         std::to_string(rg.collisions.size()) + " golden collisions");
  return o;
}

// 10. CLI output does not depend on the thread count.
Outcome determinism_criterion() {
  Outcome o;
  const std::vector<std::vector<std::string>> commands = {
      {"cf"},       {"chains"},  {"eval"},   {"cylinder"},      {"atomicity"},  {"support"},
      {"sample", "--m", "20000"}, {"boxdim"}, {"profile"},     {"fourier"},
      {"wiener", "--R", "1000", "--grid", "20000"}, {"witness"}, {"scan"}, {"pisot", "--no-check"},
      {"ifs-words"}, {"ifs-inject", "--n", "6"}, {"ifs-root"}, {"ifs-dichotomy", "--n", "6"},
  };
  const std::string dir = fixtures::config_dir();
  std::size_t runs = 0, differ = 0;
  for (const char* name : {"system_a.json", "system_b.json", "system_w.json", "system_c.json", "control_055.json"}) {
    for (const auto& cmd : commands) {
      std::string outputs[2];
      int codes[2];
      for (int i = 0; i < 2; ++i) {
        std::vector<std::string> args{"rotlaw", "--config", dir + "/" + name, "--seed", "12345", "--threads",
                                      i == 0 ? "1" : "8"};
        args.insert(args.end(), cmd.begin(), cmd.end());
        std::vector<const char*> argv;
        for (const auto& s : args) argv.push_back(s.c_str());
        std::ostringstream out, err;
        codes[i] = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        outputs[i] = out.str() + "|" + err.str();
      }
      ++runs;
      if (outputs[0] != outputs[1] || codes[0] != codes[1] || outputs[0].size() < 3) {
        ++differ;
        o.require(false, std::string(name) + " " + cmd[0]);
      }
    }
  }
  o.note(std::to_string(runs - differ) + "/" + std::to_string(runs) + " runs byte-identical");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double budget_s;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {1, "continued fractions", 1, cf_criterion},
      {2, "chain decomposition", 10, chain_criterion},
      {3, "atomicity dichotomy", 60, atomicity_criterion},
      {4, "box-counting dimension", 60, dimension_criterion},
      {5, "Fourier soundness", 120, fourier_criterion},
      {6, "Wiener dichotomy", 120, wiener_criterion},
      {7, "non-decay witness", 60, witness_criterion},
      {8, "Pisot floor", 60, pisot_criterion},
      {9, "branch-map algebra", 120, algebra_criterion},
      {10, "thread determinism", 0, determinism_criterion},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0 && secs > c.budget_s) o.require(false, "runtime over " + fmt(c.budget_s) + " s");
    if (!o.pass) ++failed;
    std::printf("criterion %2d %s  %s: %s [%.2f s]\n", c.id, o.pass ? "PASS" : "FAIL", c.title, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of 10 criteria passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}
