#include "rotlaw/measure_lab.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <optional>

#include "rotlaw/errors.hpp"
#include "rotlaw/parallel.hpp"

namespace rotlaw {
namespace {

const Rational& two_pow_64() {
  static const Rational v(Integer(1) << 64);
  return v;
}

Rational dyadic_point(std::uint64_t k) {
  Integer num;
  mpz_set_ui(num.get_mpz_t(), k);
  Rational x(num, two_pow_64().get_num());
  x.canonicalize();
  return x;
}

std::uint64_t draw(std::uint64_t seed, std::uint64_t index, std::uint64_t attempt) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index * 0x9E3779B97F4A7C15ULL + attempt));
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

SampleBatch sample_law(const RotationSystem& system, std::size_t M, std::size_t depth, std::uint64_t seed,
                       unsigned threads) {
  if (M < 1) throw LabError(ErrorKind::InvalidInput, "sample count must be >= 1");
  const Partition& D = system.breakpoints();
  // alpha to extended precision as a double-double sum.
  const Rational mid = system.angle().enclose_linear(0, 1, Rational(1, Integer(1) << 80)).mid();
  const double alpha_hi = mid.get_d();
  const long double alpha_ld =
      static_cast<long double>(alpha_hi) + static_cast<long double>(Rational(mid - from_double(alpha_hi)).get_d());

  SampleBatch out;
  out.seed = seed;
  out.depth = depth;
  out.radius = tail_radius(system, depth);
  out.x.resize(M);
  out.values.resize(M);
  parallel_for(M, threads, [&](std::size_t i) {
    std::uint64_t k = 0;
    for (std::uint64_t attempt = 0;; ++attempt) {
      k = draw(seed, i, attempt);
      const double xd = static_cast<double>(std::ldexp(static_cast<long double>(k), -64));
      if (D.locate_fast(xd, 1e-16)) break;
      if (!D.find(CirclePoint(dyadic_point(k)))) break;
    }
    const long double x0 = std::ldexp(static_cast<long double>(k), -64);
    double sum = 0.0, ratio = 1.0;
    for (std::size_t n = 0; n < depth; ++n) {
      long double y = x0 + static_cast<long double>(n) * alpha_ld;
      y -= std::floor(y);
      const double err = 1e-16 + 1e-18 * static_cast<double>(n);
      std::size_t j;
      if (auto fast = D.locate_fast(static_cast<double>(y), err)) {
        j = *fast;
      } else {
        j = D.locate(CirclePoint(dyadic_point(k), Rational(static_cast<long>(n))), Side::Right);
      }
      sum += ratio * system.b_approx(j);
      ratio *= system.r_approx(j);
    }
    out.x[i] = k;
    out.values[i] = sum;
  });
  return out;
}

std::size_t cluster_count(std::vector<double> values, double link) {
  if (values.empty()) return 0;
  std::sort(values.begin(), values.end());
  std::size_t groups = 1;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] - values[i - 1] > link) ++groups;
  }
  return groups;
}

CoverReport box_count(const RotationSystem& system, const Rational& eps, unsigned threads) {
  if (eps <= 0) throw LabError(ErrorKind::InvalidInput, "eps must be positive");
  CoverReport out;
  out.eps = eps;
  out.depth = std::max<std::size_t>(1, tail_depth(system, eps / 2));
  out.radius = tail_radius(system, out.depth);
  const CylinderMeasure cm = cylinder_measure(system, out.depth, threads);
  const std::vector<Atom> atoms = merge_equal_values(system, cm.pieces);

  std::vector<RationalInterval> hulls;
  for (const auto& a : atoms) {
    out.values.push_back(a.value);
    hulls.push_back(a.value.enclose().inflate(out.radius));
  }
  std::vector<Integer> cells;
  for (const auto& h : hulls) {
    const Integer lo = floor(Rational(h.lo / eps));
    const Integer hi = floor(Rational(h.hi / eps));
    for (Integer j = lo; j <= hi; ++j) cells.push_back(j);
  }
  std::sort(cells.begin(), cells.end());
  out.boxes = static_cast<std::size_t>(std::unique(cells.begin(), cells.end()) - cells.begin());

  // Greedy left-to-right cover by closed balls of radius eps.
  std::sort(hulls.begin(), hulls.end(), [](const RationalInterval& a, const RationalInterval& b) { return a.lo < b.lo; });
  std::optional<Rational> covered_to;
  for (const auto& h : hulls) {
    if (covered_to && h.hi <= *covered_to) continue;
    const Rational start = covered_to && h.lo <= *covered_to ? *covered_to : h.lo;
    covered_to = start + 2 * eps;
    ++out.balls;
    while (*covered_to < h.hi) {
      *covered_to += 2 * eps;
      ++out.balls;
    }
  }
  return out;
}

DimensionFit dimension_fit(const RotationSystem& system, const std::vector<Rational>& eps_list, unsigned threads) {
  if (eps_list.size() < 3) throw LabError(ErrorKind::InvalidInput, "dimension fit needs at least 3 scales");
  for (std::size_t i = 1; i < eps_list.size(); ++i) {
    if (!(eps_list[i] < eps_list[i - 1])) throw LabError(ErrorKind::InvalidInput, "scales must be decreasing");
  }
  if (eps_list.front() <= 0 || eps_list.back() <= 0) throw LabError(ErrorKind::InvalidInput, "scales must be positive");
  DimensionFit out;
  const auto n = static_cast<Eigen::Index>(eps_list.size());
  Eigen::MatrixXd A(n, 2);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Rational& eps = eps_list[static_cast<std::size_t>(i)];
    out.covers.push_back(box_count(system, eps, threads));
    const double inv = -std::log(eps.get_d());
    A(i, 0) = inv;
    A(i, 1) = 1.0;
    y(i) = std::log(static_cast<double>(out.covers.back().boxes));
    out.ratios.push_back(static_cast<double>(out.covers.back().boxes) / inv);
  }
  const Eigen::Vector2d coef = A.colPivHouseholderQr().solve(y);
  out.slope = coef(0);
  out.intercept = coef(1);
  const Eigen::VectorXd res = y - A * coef;
  out.residuals.assign(res.data(), res.data() + res.size());
  return out;
}

std::vector<WeightPoint> max_weight_profile(const RotationSystem& system, const std::vector<std::size_t>& depths,
                                            unsigned threads) {
  for (std::size_t i = 1; i < depths.size(); ++i) {
    if (depths[i] <= depths[i - 1]) throw LabError(ErrorKind::InvalidInput, "depths must be increasing");
  }
  std::vector<WeightPoint> out;
  for (const std::size_t n : depths) {
    const CylinderMeasure cm = cylinder_measure(system, n, threads);
    std::vector<std::pair<double, double>> vw;
    for (const auto& p : cm.pieces) vw.emplace_back(p.value_approx, p.weight_approx);
    std::sort(vw.begin(), vw.end());
    const double link = 2.0 * cm.radius.get_d();
    WeightPoint wp{n, 0.0, 0};
    double current = 0.0;
    for (std::size_t i = 0; i < vw.size(); ++i) {
      if (i > 0 && vw[i].first - vw[i - 1].first > link) {
        wp.max_weight = std::max(wp.max_weight, current);
        current = 0.0;
        ++wp.groups;
      }
      current += vw[i].second;
    }
    wp.max_weight = std::max(wp.max_weight, current);
    ++wp.groups;
    out.push_back(wp);
  }
  return out;
}

}  // namespace rotlaw
