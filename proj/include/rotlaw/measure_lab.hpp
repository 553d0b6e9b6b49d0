#pragma once

#include <cstdint>
#include <vector>

#include "rotlaw/series.hpp"

namespace rotlaw {

/// splitmix64 finalizer; used to derive per-sample streams.
std::uint64_t splitmix64(std::uint64_t x);

struct SampleBatch {
  std::uint64_t seed = 0;
  std::size_t depth = 0;
  Rational radius;                   // tail radius shared by all values
  std::vector<std::uint64_t> x;      // sample point x_i = x[i] / 2^64
  std::vector<double> values;        // depth-n partial sums X_n(x_i)

  std::size_t count() const { return values.size(); }
};

/// Uniform dyadic sample points (breakpoints rejected and redrawn), evaluated
/// to `depth`. The batch depends only on (seed, M, depth).
SampleBatch sample_law(const RotationSystem& system, std::size_t M, std::size_t depth, std::uint64_t seed,
                       unsigned threads = 1);

/// Number of groups after single-linkage merging of values closer than `link`.
std::size_t cluster_count(std::vector<double> values, double link);

struct CoverReport {
  Rational eps;
  std::size_t depth = 0;
  Rational radius;                // tail radius at depth, <= eps/2
  std::size_t boxes = 0;          // eps-grid cells meeting the inflated value set
  std::size_t balls = 0;          // greedy cover by closed balls of radius eps
  std::vector<FieldElem> values;  // distinct exact depth-n values, ascending
};

CoverReport box_count(const RotationSystem& system, const Rational& eps, unsigned threads = 1);

struct DimensionFit {
  std::vector<CoverReport> covers;
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<double> residuals;
  std::vector<double> ratios;  // N(eps) / log(1/eps)
};

/// Least-squares slope of log N(eps) against log(1/eps). Needs >= 3 decreasing scales.
DimensionFit dimension_fit(const RotationSystem& system, const std::vector<Rational>& eps_list, unsigned threads = 1);

struct WeightPoint {
  std::size_t depth = 0;
  double max_weight = 0.0;
  std::size_t groups = 0;
};

/// For each depth, the largest total weight among cylinder pieces whose values
/// agree within twice the tail radius (single linkage).
std::vector<WeightPoint> max_weight_profile(const RotationSystem& system, const std::vector<std::size_t>& depths,
                                            unsigned threads = 1);

}  // namespace rotlaw
