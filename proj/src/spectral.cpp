#include "rotlaw/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "rotlaw/errors.hpp"
#include "rotlaw/parallel.hpp"

namespace rotlaw {
namespace {

constexpr long double kTwoPi = 2.0L * std::numbers::pi_v<long double>;

long double extended(const Rational& x) {
  const double hi = x.get_d();
  return static_cast<long double>(hi) + static_cast<long double>(Rational(x - from_double(hi)).get_d());
}

// Upper bound for ||x|| over an interval of width < 1/2.
Rational dist_to_integer_upper(const RationalInterval& x) {
  const Integer klo = floor(Rational(x.lo + Rational(1, 2)));
  const Integer khi = floor(Rational(x.hi + Rational(1, 2)));
  if (klo != khi) return Rational(1, 2);
  return std::max(abs(Rational(x.lo - klo)), abs(Rational(x.hi - klo)));
}

double dist_to_integer(long double x) { return static_cast<double>(std::fabs(x - std::nearbyint(x))); }

Rational tiny_eps() {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, 30);
  return Rational(1, p);
}

}  // namespace

Rational pi_upper() { return Rational(355, 113); }

FourierEvaluator::FourierEvaluator(const RotationSystem& system, double t_max, const Rational& eps, unsigned threads,
                                   std::size_t depth_cap) {
  if (eps <= 0) throw LabError(ErrorKind::InvalidInput, "eps must be positive");
  const double tm = std::fabs(t_max);
  const Rational t_bound = tm > 0 ? from_double(tm) : Rational(1);
  const Rational tail_eps = Rational(eps * Rational(99, 100) / (2 * pi_upper() * t_bound));
  depth_ = std::max<std::size_t>(1, tail_depth(system, tail_eps));
  if (depth_ > depth_cap) {
    throw LabError(ErrorKind::DepthOverflow, "required depth " + std::to_string(depth_) + " exceeds cap " +
                                                 std::to_string(depth_cap));
  }
  radius_ = tail_radius(system, depth_).get_d() * (1 + 1e-15);
  const CylinderMeasure cm = cylinder_measure(system, depth_, threads);
  for (const auto& a : merge_equal_values(system, cm.pieces)) {
    values_.push_back(extended(a.value.enclose().mid()));
    weights_.push_back(static_cast<long double>(a.mass_approx));
    value_scale_ = std::max(value_scale_, std::fabs(static_cast<double>(values_.back())));
  }
}

FourierValue FourierEvaluator::operator()(double t) const {
  FourierValue out;
  out.t = t;
  out.depth = depth_;
  if (t == 0.0) {
    out.value = {1.0, 0.0};
    return out;
  }
  long double re = 0, im = 0;
  const auto tl = static_cast<long double>(t);
  for (std::size_t j = 0; j < values_.size(); ++j) {
    long double ph = tl * values_[j];
    ph -= std::floor(ph);
    re += weights_[j] * std::cos(kTwoPi * ph);
    im += weights_[j] * std::sin(kTwoPi * ph);
  }
  out.value = {static_cast<double>(re), static_cast<double>(im)};
  const double at = std::fabs(t);
  const double rounding = 1e-15 * (1.0 + static_cast<double>(values_.size())) + 2.0 * M_PI * at * value_scale_ * 1e-18;
  out.error = 2.0 * M_PI * at * radius_ + rounding;
  return out;
}

FourierValue fourier_hat(const RotationSystem& system, double t, const Rational& eps, unsigned threads,
                         std::size_t depth_cap) {
  return FourierEvaluator(system, t, eps, threads, depth_cap)(t);
}

WienerReport wiener_average(const RotationSystem& system, double R, std::size_t grid, const Rational& eps,
                            unsigned threads) {
  if (!(R > 0)) throw LabError(ErrorKind::InvalidInput, "R must be positive");
  if (grid < 1000) throw LabError(ErrorKind::InvalidInput, "grid must have at least 1000 intervals");
  if (grid % 2 == 1) ++grid;
  const FourierEvaluator hat(system, R, eps, threads);
  std::vector<double> f(grid + 1), e(grid + 1);
  const double h = R / static_cast<double>(grid);
  parallel_for(grid + 1, threads, [&](std::size_t i) {
    const FourierValue v = hat(h * static_cast<double>(i));
    const double mod = v.modulus();
    f[i] = mod * mod;
    e[i] = (2.0 * mod + v.error) * v.error;
  });
  double fine = 0.0, coarse = 0.0;
  for (std::size_t i = 0; i <= grid; ++i) {
    const double w = (i == 0 || i == grid) ? 0.5 : 1.0;
    fine += w * f[i];
    if (i % 2 == 0) coarse += w * f[i];
  }
  fine *= h;
  coarse *= 2 * h;
  WienerReport out;
  out.R = R;
  out.grid = grid;
  out.depth = hat.depth();
  out.value = fine / R;
  out.quadrature_error = std::fabs(fine - coarse) / 3.0 / R;
  out.certified_error = *std::max_element(e.begin(), e.end());
  return out;
}

WitnessLevel build_witness_level(const RotationSystem& system, std::size_t n, std::size_t m, std::size_t g) {
  if (g < 1) throw LabError(ErrorKind::InvalidInput, "gap count must be >= 1");
  const Angle& angle = system.angle();
  WitnessLevel out;
  out.n = n;
  out.m = m;
  out.g = g;
  const auto [p, q] = angle.convergent(static_cast<long>(n));
  out.q = q;
  out.a_next = angle.quotient(n + 1);
  const bool even = n % 2 == 0;
  out.delta = even ? AlphaNumber(Rational(-p), Rational(q)) : AlphaNumber(Rational(p), Rational(-q));
  if (!q.fits_slong_p() || q > 100000) throw LabError(ErrorKind::InvalidInput, "q_n too large for a witness level");
  const auto qs = static_cast<std::size_t>(q.get_si());

  // Z_n is constant on the pieces cut by T^{-l} D, l < 2 q_n.
  std::vector<CirclePoint> pts;
  for (std::size_t l = 0; l < 2 * qs; ++l) {
    for (const auto& d : system.breakpoints().points()) pts.emplace_back(d.rat, d.rot - static_cast<long>(l));
  }
  const Partition cuts(system.angle_ptr(), std::move(pts), true);
  out.pieces = cuts.size();
  for (std::size_t j = 0; j < cuts.size(); ++j) {
    std::vector<FieldElem> prefix{system.one()};
    std::vector<Rational> bs;
    CirclePoint y = cuts.point(j);
    for (std::size_t l = 0; l < 2 * qs; ++l) {
      const std::size_t i = system.locate(y, Side::Right);
      bs.push_back(system.b(i));
      prefix.push_back(prefix.back() * system.r(i));
      y.rot += 1;
    }
    FieldElem z = system.zero();
    for (std::size_t k = 0; k < qs; ++k) {
      const FieldElem rho = prefix[k + qs] / prefix[k];
      FieldElem geo = system.zero(), pw = system.one();
      for (std::size_t s = 0; s <= m; ++s) {
        geo += pw;
        pw *= rho;
      }
      z += prefix[k] * geo * bs[k];
    }
    const AlphaNumber w = cuts.length(j);
    auto it = std::find_if(out.values.begin(), out.values.end(), [&](const ZValue& v) { return v.value == z; });
    if (it == out.values.end()) {
      out.values.push_back({z, w, z.to_double()});
    } else {
      it->weight += w;
    }
  }
  std::sort(out.values.begin(), out.values.end(),
            [](const ZValue& a, const ZValue& b) { return a.value_approx < b.value_approx; });

  // Omega_n: arcs of length m ||q_n alpha|| ending (n even) or starting (n odd) at d_i - l alpha.
  const AlphaNumber len = Rational(static_cast<long>(m)) * out.delta;
  struct Arc {
    AlphaNumber lo, hi;
  };
  std::vector<Arc> arcs;
  const AlphaNumber one{Rational(1), Rational(0)};
  if (m > 0) {
    for (std::size_t l = 0; l < 2 * qs; ++l) {
      for (const auto& d : system.breakpoints().points()) {
        const CirclePoint c(d.rat, d.rot - static_cast<long>(l));
        const CirclePoint start = even ? CirclePoint(c.rat - len.rat, c.rot - len.rot) : c;
        const AlphaNumber s = canonical(angle, start).as_number();
        const AlphaNumber e = s + len;
        if (compare_numbers(angle, e, one) > 0) {
          arcs.push_back({s, one});
          arcs.push_back({AlphaNumber(Rational(0), Rational(0)), e - one});
        } else {
          arcs.push_back({s, e});
        }
      }
    }
  }
  std::sort(arcs.begin(), arcs.end(), [&](const Arc& a, const Arc& b) { return compare_numbers(angle, a.lo, b.lo) < 0; });
  out.omega = AlphaNumber(Rational(0), Rational(0));
  for (std::size_t i = 0; i < arcs.size();) {
    AlphaNumber lo = arcs[i].lo, hi = arcs[i].hi;
    std::size_t k = i + 1;
    while (k < arcs.size() && compare_numbers(angle, arcs[k].lo, hi) <= 0) {
      if (compare_numbers(angle, arcs[k].hi, hi) > 0) hi = arcs[k].hi;
      ++k;
    }
    out.omega += hi - lo;
    i = k;
  }
  out.omega_upper = out.omega.rot == 0 ? out.omega.rat : out.omega.enclose(angle).hi;

  const Rational scale(Integer(2 * q * static_cast<long>(system.N()) * static_cast<long>(m)));
  const AlphaNumber bound = scale * out.delta;
  out.omega_within_bound = compare_numbers(angle, out.omega, bound) <= 0;
  const Rational quotient_bound(Integer(2 * static_cast<long>(system.N()) * static_cast<long>(m)), out.a_next);
  out.omega_within_quotient = compare_numbers(angle, bound, AlphaNumber(quotient_bound, Rational(0))) <= 0;
  out.r_bound = tail_radius(system, (m + 1) * qs);
  return out;
}

MRange feasible_m_range(const RotationSystem& system, std::size_t n, std::size_t g) {
  if (g < 2) throw LabError(ErrorKind::InvalidInput, "gap count must be >= 2");
  const double N = static_cast<double>(system.N());
  const double neg_log_r = -std::log(system.r_sup().to_double());
  MRange out;
  out.m_min = static_cast<long long>(std::ceil(2.0 * N * std::log(static_cast<double>(g)) / neg_log_r - 1e-12));
  const Integer a = system.angle().quotient(n + 1);
  const Integer mmax = a / (10 * static_cast<long>(system.N()));
  out.m_max = mmax.fits_slong_p() ? mmax.get_si() : std::numeric_limits<long>::max();
  out.feasible = out.m_min <= out.m_max;
  out.threshold = 10.0 * N + 20.0 * N * N * std::log(13.0) / neg_log_r;
  return out;
}

WitnessCertificate witness_search(const WitnessLevel& level, long long t_max, unsigned threads) {
  if (t_max < 1) throw LabError(ErrorKind::InvalidInput, "t_max must be >= 1");
  const Rational target(1, static_cast<long>(level.g));
  std::vector<RationalInterval> enc;
  std::vector<long double> approx;
  for (const auto& v : level.values) {
    enc.push_back(v.value.enclose());
    approx.push_back(extended(enc.back().mid()));
  }
  auto exact_gap = [&](long long t) {
    Rational gap = 0;
    const Rational tr(static_cast<long>(t));
    for (const auto& e : enc) gap = std::max(gap, dist_to_integer_upper(tr * e));
    return gap;
  };
  const double slack = 1e-9;
  const double target_d = target.get_d();

  const std::size_t blocks = static_cast<std::size_t>(std::min<long long>(t_max, 256));
  const long long per = (t_max + static_cast<long long>(blocks) - 1) / static_cast<long long>(blocks);
  std::vector<long long> hit(blocks, 0), best_t(blocks, 0);
  std::vector<double> best(blocks, 1.0);
  parallel_for(blocks, threads, [&](std::size_t b) {
    const long long lo = 1 + static_cast<long long>(b) * per;
    const long long hi = std::min(t_max, lo + per - 1);
    for (long long t = lo; t <= hi; ++t) {
      double gap = 0.0;
      for (const auto& v : approx) gap = std::max(gap, dist_to_integer(static_cast<long double>(t) * v));
      if (gap < best[b]) {
        best[b] = gap;
        best_t[b] = t;
      }
      if (gap <= target_d + slack && exact_gap(t) <= target) {
        hit[b] = t;
        return;
      }
    }
  });

  WitnessCertificate out;
  std::size_t bb = 0;
  for (std::size_t b = 0; b < blocks; ++b) {
    if (best_t[b] != 0 && (best_t[bb] == 0 || best[b] < best[bb])) bb = b;
  }
  out.best_t = best_t[bb];
  out.best_gap = out.best_t != 0 ? exact_gap(out.best_t) : Rational(1, 2);
  for (std::size_t b = 0; b < blocks; ++b) {
    if (hit[b] != 0) {
      out.found = true;
      out.t = hit[b];
      break;
    }
  }
  if (!out.found) {
    throw LabError(ErrorKind::NotFound, "no t <= " + std::to_string(t_max) + " with max ||t v|| <= 1/" +
                                            std::to_string(level.g) + "; best gap " + to_decimal(out.best_gap, 6) +
                                            " at t=" + std::to_string(out.best_t));
  }
  out.gap = exact_gap(out.t);
  const Rational two_pi = 2 * pi_upper();
  out.certificate = 1 - (two_pi * out.gap + 2 * level.omega_upper + two_pi * Rational(static_cast<long>(out.t)) * level.r_bound);
  return out;
}

void cross_check(const RotationSystem& system, const WitnessLevel& level, WitnessCertificate& cert, const Rational& eps,
                 const std::vector<unsigned>& multipliers, unsigned threads) {
  unsigned top = 1;
  for (unsigned m : multipliers) top = std::max(top, m);
  const auto t = static_cast<double>(cert.t);
  const FourierEvaluator hat(system, t * top, eps, threads);
  cert.measured = hat(t);
  const double q = level.q.get_d();
  const double N = static_cast<double>(system.N());
  const double r = system.r_sup().to_double();
  cert.asymptotic_bound = 2.0 * M_PI / static_cast<double>(level.g) +
                  4.0 * N * static_cast<double>(level.m) / level.a_next.get_d() +
                  std::pow(r, q) * system.b_sup().get_d() / (1.0 - r);
  const Rational two_pi = 2 * pi_upper();
  const Rational first = two_pi * cert.gap + two_pi * Rational(static_cast<long>(cert.t)) * level.r_bound;
  cert.multipliers.clear();
  for (unsigned m : multipliers) {
    MultiplierCheck mc;
    mc.multiplier = m;
    mc.bound = Rational(Rational(static_cast<long>(m)) * first + 2 * level.omega_upper).get_d();
    mc.measured = hat(t * m);
    mc.holds = std::abs(mc.measured.value - std::complex<double>(1.0, 0.0)) <= mc.bound + mc.measured.error;
    cert.multipliers.push_back(mc);
  }
}

ScanReport rajchman_scan(const RotationSystem& system, const std::vector<double>& ts, const Rational& eps,
                         unsigned threads) {
  ScanReport out;
  if (ts.empty()) return out;
  double t_max = 0.0;
  for (double t : ts) t_max = std::max(t_max, std::fabs(t));
  const FourierEvaluator hat(system, t_max, eps, threads);
  out.values.resize(ts.size());
  parallel_for(ts.size(), threads, [&](std::size_t i) { out.values[i] = hat(ts[i]); });
  out.min_modulus = 1.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double mod = out.values[i].modulus();
    out.min_modulus = std::min(out.min_modulus, mod);
    if (i >= ts.size() / 2) out.tail_max = std::max(out.tail_max, mod);
  }
  return out;
}

std::vector<Integer> power_sums(const std::vector<Integer>& monic, std::size_t n) {
  const std::size_t d = monic.size() - 1;
  if (d < 1 || monic.back() != 1) throw LabError(ErrorKind::InvalidInput, "power sums need a monic polynomial");
  std::vector<Integer> s{Integer(static_cast<long>(d))};
  for (std::size_t k = 1; k <= n; ++k) {
    Integer v = 0;
    for (std::size_t i = 1; i <= std::min(k, d); ++i) {
      if (i < k) {
        v -= monic[d - i] * s[k - i];
      } else {
        v -= Integer(static_cast<long>(k)) * monic[d - k];
      }
    }
    s.push_back(v);
  }
  return s;
}

PisotReport pisot_hat_sequence(const RotationSystem& system, std::size_t n_max, const Rational& eps, bool check,
                               const CirclePoint& x0, unsigned threads) {
  if (!system.lambda()) throw LabError(ErrorKind::InvalidInput, "the Pisot scan needs a constant ratio lambda");
  const FieldElem lambda = *system.lambda();
  const FieldElem inv = lambda.inverse();
  PisotReport out;
  out.checked = check;

  std::vector<Integer> reversed;
  std::vector<Integer> sums;
  if (check) {
    const auto& mp = system.field()->minpoly();
    const std::size_t d = mp.size() - 1;
    for (std::size_t i = 0; i <= d; ++i) {
      const Rational c = mp[d - i] / mp[0];
      if (c.get_den() != 1) throw LabError(ErrorKind::NotPisot, "1/lambda is not an algebraic integer");
      reversed.push_back(c.get_num());
    }
    if (d == 1) {
      if (abs(Rational(reversed[0])) < 2) throw LabError(ErrorKind::NotPisot, "1/lambda must exceed 1");
    } else {
      Eigen::MatrixXd C = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
      for (std::size_t i = 1; i < d; ++i) C(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
      for (std::size_t i = 0; i < d; ++i) C(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d - 1)) = -reversed[i].get_d();
      const Eigen::VectorXcd roots = C.eigenvalues();
      const double main = inv.to_double();
      Eigen::Index skip = 0;
      for (Eigen::Index i = 1; i < roots.size(); ++i) {
        if (std::abs(roots(i) - main) < std::abs(roots(skip) - main)) skip = i;
      }
      for (Eigen::Index i = 0; i < roots.size(); ++i) {
        if (i == skip) continue;
        if (std::abs(roots(i)) >= 1.0 - 1e-12) throw LabError(ErrorKind::NotPisot, "a conjugate of 1/lambda has modulus >= 1");
        out.conjugates.push_back(roots(i));
      }
      std::sort(out.conjugates.begin(), out.conjugates.end(), [](const auto& a, const auto& b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
      });
    }
    for (const auto& b : system.b_values()) {
      if (b.get_den() != 1) throw LabError(ErrorKind::NonIntegerB, "b takes the non-integer value " + b.get_str());
    }
    sums = power_sums(reversed, n_max);
  }

  std::vector<FieldElem> tpow{system.one()};
  for (std::size_t n = 1; n <= n_max; ++n) tpow.push_back(tpow.back() * inv);
  const FourierEvaluator hat(system, tpow.back().to_double(), eps, threads);

  std::optional<XEnclosure> x_at;
  if (check) x_at = eval_X(system, x0, Side::Right, tiny_eps());
  out.min_modulus = 1.0;
  FieldElem conj_total = system.zero();
  for (std::size_t n = 0; n <= n_max; ++n) {
    PisotPoint pt;
    pt.n = n;
    pt.hat = hat(tpow[n].to_double());
    if (n >= 1) out.min_modulus = std::min(out.min_modulus, pt.hat.modulus());
    if (check) {
      pt.power_sum = sums[n];
      const FieldElem conj = FieldElem(system.field(), Rational(sums[n])) - tpow[n];
      pt.conjugate_sum = conj.to_double();
      if (n >= 1) {
        const CirclePoint back(x0.rat, x0.rot - static_cast<long>(n));
        conj_total += conj * system.b(system.locate(back, Side::Right));
      }
      const CirclePoint shifted(x0.rat, x0.rot - static_cast<long>(n));
      const XEnclosure xs = eval_X(system, shifted, Side::Right, tiny_eps());
      const RationalInterval lhs = tpow[n].enclose() * xs.interval;
      const RationalInterval rhs = x_at->interval - conj_total.enclose();
      const Rational ym = rhs.mid();
      pt.y_value = Rational(ym - floor(ym)).get_d();
      const Rational diff = Rational(lhs.mid() - ym);
      pt.residue = dist_to_integer_upper(RationalInterval(diff)).get_d();
    }
    out.points.push_back(std::move(pt));
  }
  return out;
}

}  // namespace rotlaw
