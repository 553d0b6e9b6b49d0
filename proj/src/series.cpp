#include "rotlaw/series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rotlaw/errors.hpp"
#include "rotlaw/parallel.hpp"

namespace rotlaw {
namespace {

Rational rational_pow(const Rational& q, std::size_t n) {
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), n);
  mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), n);
  Rational out(num, den);
  out.canonicalize();
  return out;
}

}  // namespace

Rational tail_radius(const RotationSystem& system, std::size_t n) {
  const Rational& q = system.r_sup_upper();
  return Rational(system.b_sup() * rational_pow(q, n) / (1 - q));
}

std::size_t tail_depth(const RotationSystem& system, const Rational& eps) {
  if (eps <= 0) throw LabError(ErrorKind::InvalidInput, "eps must be positive");
  if (system.b_sup() == 0) return 0;
  const double q = system.r_sup_upper().get_d();
  const double target = eps.get_d() * (1 - q) / system.b_sup().get_d();
  std::size_t n = 0;
  if (target > 0 && target < 1) n = static_cast<std::size_t>(std::max(0.0, std::floor(std::log(target) / std::log(q))));
  while (n > 0 && tail_radius(system, n - 1) <= eps) --n;
  while (tail_radius(system, n) > eps) ++n;
  return n;
}

TailBound tail_bound(const RotationSystem& system, const Rational& eps) {
  const std::size_t n = tail_depth(system, eps);
  return {n, tail_radius(system, n)};
}

PartialSum partial_sum(const RotationSystem& system, const CirclePoint& x, std::size_t n, Side side) {
  PartialSum out{system.zero(), system.one()};
  CirclePoint y = x;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = system.locate(y, side);
    out.sum += out.ratio * system.b(i);
    out.ratio *= system.r(i);
    y.rot += 1;
  }
  return out;
}

FieldElem ratio_product(const RotationSystem& system, const CirclePoint& x, std::size_t k, Side side) {
  FieldElem out = system.one();
  CirclePoint y = x;
  for (std::size_t i = 0; i < k; ++i) {
    out *= system.r(system.locate(y, side));
    y.rot += 1;
  }
  return out;
}

LogSum log_sum(const RotationSystem& system, const CirclePoint& x, std::size_t k, Side side) {
  double s = 0.0;
  CirclePoint y = x;
  for (std::size_t i = 0; i < k; ++i) {
    s -= std::log(system.r_approx(system.locate(y, side)));
    y.rot += 1;
  }
  const double m = 1e-13 * static_cast<double>(k + 1) * (1.0 + std::fabs(s));
  return {s - m, s + m};
}

XEnclosure eval_X(const RotationSystem& system, const CirclePoint& x, Side side, const Rational& eps) {
  std::size_t n = tail_depth(system, eps);
  for (;;) {
    XEnclosure out;
    out.depth = n;
    out.partial = partial_sum(system, x, n, side).sum;
    out.radius = tail_radius(system, n);
    out.interval = out.partial.enclose().inflate(out.radius);
    if (out.interval.width() <= 2 * eps) return out;
    ++n;
  }
}

AlphaNumber CylinderMeasure::total_weight() const {
  AlphaNumber total{Rational(0), Rational(0)};
  for (const auto& p : pieces) total += p.weight;
  return total;
}

CylinderMeasure cylinder_measure(const RotationSystem& system, std::size_t n, unsigned threads) {
  if (n < 1) throw LabError(ErrorKind::InvalidInput, "cylinder depth must be >= 1");
  const Partition& D = system.breakpoints();
  std::vector<CirclePoint> pts;
  pts.reserve(n * D.size());
  for (std::size_t k = 0; k < n; ++k) {
    for (const auto& d : D.points()) pts.emplace_back(d.rat, d.rot - static_cast<long>(k));
  }
  const Partition cuts(system.angle_ptr(), std::move(pts), true);
  const std::size_t m = cuts.size();

  CylinderMeasure out;
  out.depth = n;
  out.radius = tail_radius(system, n);
  out.pieces.resize(m);
  parallel_for(m, threads, [&](std::size_t j) {
    CylinderPiece& piece = out.pieces[j];
    piece.lo = cuts.point(j);
    piece.hi = cuts.point((j + 1) % m);
    piece.value = partial_sum(system, piece.lo, n, Side::Right).sum;
    piece.weight = cuts.length(j);
    piece.value_approx = piece.value.to_double();
    piece.weight_approx = piece.weight.to_double(system.angle());
  });
  return out;
}

std::vector<Atom> merge_equal_values(const RotationSystem& system, const std::vector<CylinderPiece>& pieces) {
  (void)system;
  std::vector<Atom> atoms;
  for (const auto& p : pieces) {
    auto it = std::find_if(atoms.begin(), atoms.end(), [&](const Atom& a) {
      return std::fabs(a.value_approx - p.value_approx) < 1e-9 && a.value == p.value;
    });
    if (it == atoms.end()) {
      atoms.push_back({p.value, p.weight, p.value_approx, 0.0});
    } else {
      it->mass += p.weight;
    }
  }
  for (auto& a : atoms) {
    a.mass_approx = a.mass.rot == 0 ? a.mass.rat.get_d() : a.mass.to_double(system.angle());
  }
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.value_approx < b.value_approx; });
  return atoms;
}

std::string decimal(const Angle& angle, const AlphaNumber& x, int digits) {
  if (x.rot == 0) return to_decimal(x.rat, digits);
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::max(digits, 0) + 3));
  return to_decimal(x.enclose(angle, Rational(1, scale)).mid(), digits);
}

std::string decimal(const FieldElem& x, int digits) { return to_decimal(x.enclose().mid(), digits); }

std::string cylinder_csv(const RotationSystem& system, const CylinderMeasure& cm, int digits) {
  const Angle& angle = system.angle();
  std::ostringstream os;
  os << "interval_lo,interval_hi,value,weight,interval_lo_exact,interval_hi_exact,value_exact,weight_exact\n";
  for (const auto& p : cm.pieces) {
    os << decimal(angle, p.lo.as_number(), digits) << ',' << decimal(angle, p.hi.as_number(), digits) << ','
       << decimal(p.value, digits) << ',' << decimal(angle, p.weight, digits) << ',' << p.lo.to_string() << ','
       << p.hi.to_string() << ',' << p.value.to_string() << ',' << p.weight.to_string() << '\n';
  }
  return os.str();
}

}  // namespace rotlaw
