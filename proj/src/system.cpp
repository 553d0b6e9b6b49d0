#include "rotlaw/system.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rotlaw/errors.hpp"

namespace rotlaw {
namespace {

double raw_approx(const Angle& angle, const CirclePoint& x) {
  return x.rat.get_d() + x.rot.get_d() * angle.approx();
}

double approx_error(const CirclePoint& x) {
  return 1e-14 * (1.0 + std::fabs(x.rat.get_d()) + std::fabs(x.rot.get_d()));
}

// d <= x for canonical representatives.
bool le_canonical(const Angle& angle, const CirclePoint& d, const CirclePoint& x) {
  return angle.sign_linear(d.rat - x.rat, d.rot - x.rot) <= 0;
}

struct Keyed {
  CirclePoint point;
  double approx;
  double err;
};

std::vector<Keyed> sorted_keyed(const Angle& angle, std::vector<CirclePoint> pts) {
  std::vector<Keyed> keyed;
  keyed.reserve(pts.size());
  for (auto& p : pts) {
    CirclePoint c = canonical(angle, p);
    const double a = raw_approx(angle, c);
    const double e = approx_error(c);
    keyed.push_back({std::move(c), a, e});
  }
  std::sort(keyed.begin(), keyed.end(), [&](const Keyed& x, const Keyed& y) {
    if (std::fabs(x.approx - y.approx) > x.err + y.err) return x.approx < y.approx;
    if (same_point(x.point, y.point)) return false;
    return angle.sign_linear(x.point.rat - y.point.rat, x.point.rot - y.point.rot) < 0;
  });
  return keyed;
}

}  // namespace

std::vector<CirclePoint> sort_circle_points(const Angle& angle, std::vector<CirclePoint> pts) {
  std::vector<Keyed> keyed = sorted_keyed(angle, std::move(pts));
  std::vector<CirclePoint> out;
  out.reserve(keyed.size());
  for (auto& k : keyed) {
    if (!out.empty() && same_point(out.back(), k.point)) continue;
    out.push_back(std::move(k.point));
  }
  return out;
}

Partition::Partition(std::shared_ptr<const Angle> angle, std::vector<CirclePoint> points, bool deduplicate)
    : angle_(std::move(angle)) {
  if (points.empty()) throw LabError(ErrorKind::EmptyPartition, "at least one breakpoint is required");
  std::vector<Keyed> keyed = sorted_keyed(*angle_, std::move(points));
  for (auto& k : keyed) {
    if (!points_.empty() && same_point(points_.back(), k.point)) {
      if (deduplicate) continue;
      throw LabError(ErrorKind::DuplicateBreakpoint, "breakpoint " + k.point.to_string() + " repeated");
    }
    approx_.push_back(k.approx);
    points_.push_back(std::move(k.point));
  }
}

std::optional<std::size_t> Partition::locate_fast(double x, double err) const {
  const std::size_t n = points_.size();
  auto it = std::upper_bound(approx_.begin(), approx_.end(), x);
  const std::ptrdiff_t idx = (it - approx_.begin()) - 1;
  double left, right;
  std::size_t interval;
  if (idx < 0) {
    left = approx_[n - 1] - 1.0;
    right = approx_[0];
    interval = n - 1;
  } else {
    const auto i = static_cast<std::size_t>(idx);
    left = approx_[i];
    right = i + 1 < n ? approx_[i + 1] : approx_[0] + 1.0;
    interval = i;
  }
  const double margin = err + 1e-13;
  if (x - left > margin && right - x > margin) return interval;
  return std::nullopt;
}

std::size_t Partition::locate_exact(const CirclePoint& x) const {
  const CirclePoint cx = canonical(*angle_, x);
  std::size_t lo = 0, hi = points_.size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (le_canonical(*angle_, points_[mid], cx)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return lo == 0 ? points_.size() - 1 : lo - 1;
}

std::size_t Partition::locate(const CirclePoint& x, double hint, Side side) const {
  if (auto fast = locate_fast(hint, approx_error(x))) return *fast;
  const std::size_t i = locate_exact(x);
  if (side == Side::Left && same_point(points_[i], x)) return (i + points_.size() - 1) % points_.size();
  return i;
}

std::size_t Partition::locate(const CirclePoint& x, Side side) const {
  return locate(x, rotlaw::approx(*angle_, x), side);
}

std::optional<std::size_t> Partition::find(const CirclePoint& x) const {
  const std::size_t i = locate_exact(x);
  if (same_point(points_[i], x)) return i;
  return std::nullopt;
}

AlphaNumber Partition::length(std::size_t i) const {
  return forward_length(*angle_, points_[i], points_[(i + 1) % points_.size()]);
}

StepFunction<Rational> make_step_function(std::shared_ptr<const Angle> angle, const PiecewiseConstant<Rational>& f) {
  if (f.breakpoints.size() != f.values.size()) {
    throw LabError(ErrorKind::InvalidInput, "values list length must equal breakpoints length");
  }
  auto part = std::make_shared<const Partition>(angle, f.breakpoints);
  std::vector<Rational> values(part->size());
  for (std::size_t i = 0; i < f.breakpoints.size(); ++i) {
    values[*part->find(f.breakpoints[i])] = f.values[i];
  }
  return {std::move(part), std::move(values)};
}

RotationSystem::RotationSystem(std::shared_ptr<const Angle> angle, std::shared_ptr<const NumberField> field,
                               std::shared_ptr<const Partition> breakpoints, std::vector<Rational> b,
                               std::vector<FieldElem> r, std::optional<FieldElem> lambda)
    : angle_(std::move(angle)),
      field_(std::move(field)),
      D_(std::move(breakpoints)),
      b_(std::move(b)),
      r_(std::move(r)),
      lambda_(std::move(lambda)) {
  b_sup_ = 0;
  for (const auto& v : b_) {
    b_sup_ = std::max(b_sup_, abs(v));
    b_d_.push_back(v.get_d());
  }
  r_sup_ = r_.front();
  for (const auto& v : r_) {
    if (v.sign() <= 0 || (one() - v).sign() <= 0) {
      throw LabError(ErrorKind::RatioOutOfRange, "ratio value " + v.to_string() + " outside (0,1)");
    }
    if ((v - r_sup_).sign() > 0) r_sup_ = v;
    r_d_.push_back(v.to_double());
  }
  const Rational hi = r_sup_.enclose().hi;
  for (unsigned bits = 64;; bits += 64) {
    r_sup_upper_ = r_sup_.is_rational() ? r_sup_.rational_part() : dyadic_upper(hi, bits);
    if (r_sup_upper_ < 1) break;
  }
  if (!lambda_ && std::all_of(r_.begin(), r_.end(), [&](const FieldElem& v) { return v == r_.front(); })) {
    lambda_ = r_.front();
  }
}

bool RotationSystem::constant_ratio() const { return lambda_.has_value(); }

namespace {

RotationSystem assemble(std::shared_ptr<const Angle> angle, const PiecewiseConstant<Rational>& b,
                        const PiecewiseConstant<Rational>* r_piecewise, const Lambda* lambda) {
  StepFunction<Rational> bf = make_step_function(angle, b);
  std::vector<CirclePoint> all = bf.partition->points();
  std::optional<StepFunction<Rational>> rf;
  if (r_piecewise != nullptr) {
    rf = make_step_function(angle, *r_piecewise);
    for (const auto& v : rf->values) {
      if (v <= 0 || v >= 1) throw LabError(ErrorKind::RatioOutOfRange, "ratio value " + v.get_str() + " outside (0,1)");
    }
    all.insert(all.end(), rf->partition->points().begin(), rf->partition->points().end());
  }
  auto D = std::make_shared<const Partition>(angle, std::move(all), true);
  std::shared_ptr<const NumberField> field = lambda != nullptr ? lambda->field : NumberField::rationals();
  std::vector<Rational> bv;
  std::vector<FieldElem> rv;
  for (const auto& d : D->points()) {
    bv.push_back(bf.at(d, Side::Right));
    rv.push_back(lambda != nullptr ? lambda->value : FieldElem(field.get(), rf->at(d, Side::Right)));
  }
  std::optional<FieldElem> lam;
  if (lambda != nullptr) lam = lambda->value;
  return RotationSystem(std::move(angle), std::move(field), std::move(D), std::move(bv), std::move(rv), std::move(lam));
}

}  // namespace

RotationSystem build_system(std::shared_ptr<const Angle> angle, const PiecewiseConstant<Rational>& b,
                            const std::variant<PiecewiseConstant<Rational>, LambdaSpec>& r) {
  if (const auto* pw = std::get_if<PiecewiseConstant<Rational>>(&r)) return assemble(std::move(angle), b, pw, nullptr);
  Lambda lam = make_lambda(std::get<LambdaSpec>(r));
  return assemble(std::move(angle), b, nullptr, &lam);
}

RotationSystem build_system(std::shared_ptr<const Angle> angle, const PiecewiseConstant<Rational>& b, const Lambda& lambda) {
  return assemble(std::move(angle), b, nullptr, &lambda);
}

RotationSystem build_system(const SystemConfig& config) {
  return build_system(std::make_shared<const Angle>(config.angle), config.b, config.r);
}

ChainDecomposition chain_decompose(const Partition& points) {
  const std::size_t n = points.size();
  std::vector<bool> assigned(n, false);
  ChainDecomposition out;
  for (std::size_t i = 0; i < n; ++i) {
    if (assigned[i]) continue;
    std::vector<std::pair<long long, std::size_t>> members;
    for (std::size_t j = i; j < n; ++j) {
      if (assigned[j]) continue;
      if (auto off = orbit_offset(points.point(i), points.point(j))) {
        members.emplace_back(*off, j);
        assigned[j] = true;
      }
    }
    std::sort(members.begin(), members.end());
    const long long shift = members.front().first;
    Chain c;
    c.base = members.front().second;
    c.base_point = points.point(c.base);
    for (const auto& [off, idx] : members) {
      c.offsets.push_back(off - shift);
      c.members.push_back(idx);
    }
    out.chains.push_back(std::move(c));
  }
  std::sort(out.chains.begin(), out.chains.end(), [](const Chain& a, const Chain& b) { return a.base < b.base; });
  return out;
}

ChainDecomposition chain_decompose(const RotationSystem& system) { return chain_decompose(system.breakpoints()); }

}  // namespace rotlaw
