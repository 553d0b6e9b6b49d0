#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "rotlaw/circle.hpp"
#include "rotlaw/number_field.hpp"

namespace rotlaw {

enum class Side { Left, Right };

/// Strictly increasing canonical breakpoints d_0 < ... < d_{N-1} of a circle
/// partition into intervals [d_i, d_{i+1}) (cyclic).
class Partition {
 public:
  /// Sorts and canonicalizes; throws DuplicateBreakpoint on repeated points
  /// unless `deduplicate` is set, in which case repeats are merged.
  Partition(std::shared_ptr<const Angle> angle, std::vector<CirclePoint> points, bool deduplicate = false);

  const Angle& angle() const { return *angle_; }
  const std::shared_ptr<const Angle>& angle_ptr() const { return angle_; }
  std::size_t size() const { return points_.size(); }
  const CirclePoint& point(std::size_t i) const { return points_[i]; }
  const std::vector<CirclePoint>& points() const { return points_; }
  double approx(std::size_t i) const { return approx_[i]; }

  /// Interval index containing x (Right), or, when x is a breakpoint d_i and
  /// side is Left, the interval ending at x.
  std::size_t locate(const CirclePoint& x, Side side) const;
  /// Same, with a double approximation of x's canonical position used to skip
  /// exact comparisons when x is clearly away from every breakpoint.
  std::size_t locate(const CirclePoint& x, double hint, Side side) const;
  /// Interval index from a double position alone, if decisively inside an interval.
  std::optional<std::size_t> locate_fast(double x, double err) const;

  std::optional<std::size_t> find(const CirclePoint& x) const;

  /// Forward length of interval i.
  AlphaNumber length(std::size_t i) const;

 private:
  std::size_t locate_exact(const CirclePoint& x) const;

  std::shared_ptr<const Angle> angle_;
  std::vector<CirclePoint> points_;
  std::vector<double> approx_;
};

/// Sorts canonical points exactly, using double approximations to skip most
/// exact comparisons. Equal points are merged.
std::vector<CirclePoint> sort_circle_points(const Angle& angle, std::vector<CirclePoint> pts);

/// Input description of a piecewise-constant map: value i on [d_i, d_{i+1}).
template <class V>
struct PiecewiseConstant {
  std::vector<CirclePoint> breakpoints;
  std::vector<V> values;
};

/// Validated step function over a partition.
template <class V>
struct StepFunction {
  std::shared_ptr<const Partition> partition;
  std::vector<V> values;

  const V& at(const CirclePoint& x, Side side) const { return values[partition->locate(x, side)]; }
};

StepFunction<Rational> make_step_function(std::shared_ptr<const Angle> angle, const PiecewiseConstant<Rational>& f);

/// Right value: the interval containing x. Left value: the interval whose right
/// endpoint is x when x is a breakpoint, else the same as Right.
template <class V>
const V& side_value(const StepFunction<V>& f, const CirclePoint& x, Side side) {
  return f.at(x, side);
}

struct SystemConfig {
  AngleSpec angle;
  PiecewiseConstant<Rational> b;
  std::variant<PiecewiseConstant<Rational>, LambdaSpec> r;
};

/// Rotation by alpha with piecewise-constant b (rational) and r (in (0,1)),
/// both re-expressed over the merged breakpoint set D.
class RotationSystem {
 public:
  RotationSystem(std::shared_ptr<const Angle> angle, std::shared_ptr<const NumberField> field,
                 std::shared_ptr<const Partition> breakpoints, std::vector<Rational> b, std::vector<FieldElem> r,
                 std::optional<FieldElem> lambda);

  const Angle& angle() const { return *angle_; }
  const std::shared_ptr<const Angle>& angle_ptr() const { return angle_; }
  const NumberField* field() const { return field_.get(); }
  const std::shared_ptr<const NumberField>& field_ptr() const { return field_; }
  const Partition& breakpoints() const { return *D_; }
  const std::shared_ptr<const Partition>& breakpoints_ptr() const { return D_; }
  std::size_t N() const { return D_->size(); }

  const Rational& b(std::size_t interval) const { return b_[interval]; }
  const FieldElem& r(std::size_t interval) const { return r_[interval]; }
  const std::vector<Rational>& b_values() const { return b_; }
  const std::vector<FieldElem>& r_values() const { return r_; }
  double b_approx(std::size_t interval) const { return b_d_[interval]; }
  double r_approx(std::size_t interval) const { return r_d_[interval]; }

  StepFunction<Rational> b_function() const { return {D_, b_}; }
  StepFunction<FieldElem> r_function() const { return {D_, r_}; }

  /// Set when r is declared as a constant lambda.
  const std::optional<FieldElem>& lambda() const { return lambda_; }
  bool constant_ratio() const;

  FieldElem one() const { return FieldElem(field_.get(), Rational(1)); }
  FieldElem zero() const { return FieldElem(field_.get(), Rational(0)); }

  const Rational& b_sup() const { return b_sup_; }
  const FieldElem& r_sup() const { return r_sup_; }
  /// Rational upper bound for ||r||_inf, strictly below 1 (exact when r is rational).
  const Rational& r_sup_upper() const { return r_sup_upper_; }

  std::size_t locate(const CirclePoint& x, Side side) const { return D_->locate(x, side); }

 private:
  std::shared_ptr<const Angle> angle_;
  std::shared_ptr<const NumberField> field_;
  std::shared_ptr<const Partition> D_;
  std::vector<Rational> b_;
  std::vector<FieldElem> r_;
  std::vector<double> b_d_, r_d_;
  std::optional<FieldElem> lambda_;
  Rational b_sup_;
  FieldElem r_sup_;
  Rational r_sup_upper_;
};

/// Throws RatioOutOfRange, DuplicateBreakpoint, EmptyPartition, InvalidInput.
RotationSystem build_system(const SystemConfig& config);
/// Same, sharing an already constructed angle.
RotationSystem build_system(std::shared_ptr<const Angle> angle, const PiecewiseConstant<Rational>& b,
                            const std::variant<PiecewiseConstant<Rational>, LambdaSpec>& r);
/// Build from b and an already materialized lambda (shares its field).
RotationSystem build_system(std::shared_ptr<const Angle> angle, const PiecewiseConstant<Rational>& b, const Lambda& lambda);

struct Chain {
  std::size_t base = 0;               // index of d_{0,k} in D
  CirclePoint base_point;
  std::vector<long long> offsets;     // 0 = pi_0 < pi_1 < ... < pi_{m_k}
  std::vector<std::size_t> members;   // indices in D, aligned with offsets

  long long p() const { return offsets.back(); }
  std::size_t m() const { return offsets.size() - 1; }
};

struct ChainDecomposition {
  std::vector<Chain> chains;
  std::size_t K() const { return chains.size(); }
};

/// Orbit classes of the breakpoints, ordered by offset; chains sorted by base point.
ChainDecomposition chain_decompose(const RotationSystem& system);
ChainDecomposition chain_decompose(const Partition& points);

}  // namespace rotlaw
