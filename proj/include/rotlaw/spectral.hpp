#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "rotlaw/series.hpp"

namespace rotlaw {

/// Rational upper bound for pi used in certified bounds.
Rational pi_upper();

struct FourierValue {
  double t = 0.0;
  std::complex<double> value;
  double error = 0.0;  // rigorous bound on |value - hat P_X(t)|
  std::size_t depth = 0;

  double modulus() const { return std::abs(value); }
};

/// Evaluates hat P_X at many t from one cylinder measure, built deep enough
/// that the tail contributes at most 0.99 eps at |t| <= t_max.
class FourierEvaluator {
 public:
  static constexpr std::size_t kDefaultDepthCap = 400;

  FourierEvaluator(const RotationSystem& system, double t_max, const Rational& eps, unsigned threads = 1,
                   std::size_t depth_cap = kDefaultDepthCap);

  FourierValue operator()(double t) const;
  std::size_t depth() const { return depth_; }
  double radius() const { return radius_; }
  std::size_t atoms() const { return values_.size(); }

 private:
  std::size_t depth_ = 0;
  double radius_ = 0.0;
  double value_scale_ = 0.0;
  std::vector<long double> values_;
  std::vector<long double> weights_;
};

FourierValue fourier_hat(const RotationSystem& system, double t, const Rational& eps, unsigned threads = 1,
                         std::size_t depth_cap = FourierEvaluator::kDefaultDepthCap);

struct WienerReport {
  double R = 0.0;
  std::size_t grid = 0;
  double value = 0.0;
  double certified_error = 0.0;   // from per-point Fourier error
  double quadrature_error = 0.0;  // Richardson estimate, grid vs half grid
  std::size_t depth = 0;
};

/// (1/R) int_0^R |hat P_X(t)|^2 dt by the trapezoid rule on `grid` intervals.
WienerReport wiener_average(const RotationSystem& system, double R, std::size_t grid, const Rational& eps,
                            unsigned threads = 1);

struct ZValue {
  FieldElem value;
  AlphaNumber weight;  // total length of the pieces carrying this value
  double value_approx = 0.0;
};

struct WitnessLevel {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t g = 0;
  Integer q;        // q_n
  Integer a_next;   // a_{n+1}
  AlphaNumber delta;           // ||q_n alpha|| exactly
  std::vector<ZValue> values;  // distinct values of Z_n on the pieces
  std::size_t pieces = 0;
  AlphaNumber omega;           // |Omega_n| exactly
  Rational omega_upper;        // rational upper bound for |Omega_n|
  Rational r_bound;            // sup |R_n| bound
  bool omega_within_bound = false;    // |Omega_n| <= 2 q N m ||q alpha||
  bool omega_within_quotient = false; // 2 q N m ||q alpha|| <= 2 N m / a_{n+1}
};

WitnessLevel build_witness_level(const RotationSystem& system, std::size_t n, std::size_t m, std::size_t g);

struct MRange {
  long long m_min = 0;
  long long m_max = 0;
  bool feasible = false;
  double threshold = 0.0;  // quotients above this admit a level with g = 13
};

MRange feasible_m_range(const RotationSystem& system, std::size_t n, std::size_t g);

struct MultiplierCheck {
  unsigned multiplier = 0;
  double bound = 0.0;
  FourierValue measured;
  bool holds = false;
};

struct WitnessCertificate {
  bool found = false;
  long long t = 0;
  Rational gap;             // max_j ||t v_j|| (upper bound)
  Rational best_gap;        // best achieved over the scan
  long long best_t = 0;
  Rational certificate;     // lower bound on |hat P_X(t)|
  double asymptotic_bound = 0.0;    // 2 pi / g + 4 N m / a_{n+1} + ||r||^{q_n} ||b|| / (1 - ||r||)
  std::optional<FourierValue> measured;
  std::vector<MultiplierCheck> multipliers;
};

/// Smallest t in [1, t_max] with max_j ||t v_j|| <= 1/g. Throws NotFound.
WitnessCertificate witness_search(const WitnessLevel& level, long long t_max, unsigned threads = 1);

/// Adds the measured Fourier value and multiplier-clause checks to a certificate.
void cross_check(const RotationSystem& system, const WitnessLevel& level, WitnessCertificate& cert, const Rational& eps,
                 const std::vector<unsigned>& multipliers, unsigned threads = 1);

struct ScanReport {
  std::vector<FourierValue> values;
  double tail_max = 0.0;  // max modulus over the second half of the list
  double min_modulus = 0.0;
};

ScanReport rajchman_scan(const RotationSystem& system, const std::vector<double>& ts, const Rational& eps,
                         unsigned threads = 1);

struct PisotPoint {
  std::size_t n = 0;
  FourierValue hat;
  Integer power_sum;         // lambda^{-n} + sum_i mu_i^n
  double conjugate_sum = 0;  // sum_i mu_i^n
  double y_value = 0.0;      // Y_n(x0) mod 1
  double residue = 0.0;      // distance mod 1 between lambda^{-n} X(T^{-n} x0) and Y_n(x0)
};

struct PisotReport {
  bool checked = false;
  std::vector<std::complex<double>> conjugates;
  std::vector<PisotPoint> points;
  double min_modulus = 0.0;
};

/// |hat P_X(lambda^{-n})| for n = 0..n_max. With `check`, requires constant r = lambda
/// with 1/lambda Pisot (NotPisot) and integer b (NonIntegerB), and emits the
/// conjugate-sum diagnostics at x0; without it only the Fourier values are produced.
PisotReport pisot_hat_sequence(const RotationSystem& system, std::size_t n_max, const Rational& eps, bool check = true,
                               const CirclePoint& x0 = CirclePoint(Rational(1, 7)), unsigned threads = 1);

/// Power sums s_0..s_n of the roots of a monic integer polynomial (Newton's identities).
std::vector<Integer> power_sums(const std::vector<Integer>& monic, std::size_t n);

}  // namespace rotlaw
