#pragma once

#include <string>
#include <vector>

#include "rotlaw/system.hpp"

namespace rotlaw {

struct TailBound {
  std::size_t depth = 0;
  Rational radius;  // upper bound for sup |X - X_depth|
};

/// ||r||^n ||b|| / (1 - ||r||), with ||r|| replaced by its rational upper bound.
Rational tail_radius(const RotationSystem& system, std::size_t n);
/// Minimal n with tail_radius(n) <= eps.
std::size_t tail_depth(const RotationSystem& system, const Rational& eps);
TailBound tail_bound(const RotationSystem& system, const Rational& eps);

/// r_k(x) = r(x) r(Tx) ... r(T^{k-1}x), side applied to every lookup.
FieldElem ratio_product(const RotationSystem& system, const CirclePoint& x, std::size_t k, Side side);

/// Enclosure of S_k(x) = -sum_{i<k} log r(T^i x).
struct LogSum {
  double lo = 0.0;
  double hi = 0.0;
};
LogSum log_sum(const RotationSystem& system, const CirclePoint& x, std::size_t k, Side side);

/// Exact depth-n partial sum X_n(x) and the product r_n(x).
struct PartialSum {
  FieldElem sum;
  FieldElem ratio;
};
PartialSum partial_sum(const RotationSystem& system, const CirclePoint& x, std::size_t n, Side side);

struct XEnclosure {
  FieldElem partial;
  std::size_t depth = 0;
  Rational radius;
  RationalInterval interval;  // partial +- radius, width <= 2 eps
};

/// X(x) (Right) or X(x-) (Left) to within eps.
XEnclosure eval_X(const RotationSystem& system, const CirclePoint& x, Side side, const Rational& eps);

struct CylinderPiece {
  CirclePoint lo, hi;   // canonical endpoints of [lo, hi)
  FieldElem value;      // exact partial sum on the piece
  AlphaNumber weight;   // exact length
  double value_approx = 0.0;
  double weight_approx = 0.0;
};

/// Depth-n pushforward of Lebesgue through X_n.
struct CylinderMeasure {
  std::size_t depth = 0;
  Rational radius;
  std::vector<CylinderPiece> pieces;

  /// Exact sum of the weights (1 for a circle partition).
  AlphaNumber total_weight() const;
};

CylinderMeasure cylinder_measure(const RotationSystem& system, std::size_t n, unsigned threads = 1);

struct Atom {
  FieldElem value;
  AlphaNumber mass;
  double value_approx = 0.0;
  double mass_approx = 0.0;
};

/// Pieces with exactly equal values merged, sorted by value.
std::vector<Atom> merge_equal_values(const RotationSystem& system, const std::vector<CylinderPiece>& pieces);

/// CSV with columns interval_lo, interval_hi, value, weight (decimals with
/// `digits` fractional digits) followed by their exact renderings.
std::string cylinder_csv(const RotationSystem& system, const CylinderMeasure& cm, int digits);

/// Decimal rendering helpers shared by report writers.
std::string decimal(const Angle& angle, const AlphaNumber& x, int digits);
std::string decimal(const FieldElem& x, int digits);

}  // namespace rotlaw
