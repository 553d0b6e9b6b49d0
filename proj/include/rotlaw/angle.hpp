#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <variant>
#include <vector>

#include "rotlaw/number_field.hpp"
#include "rotlaw/rational.hpp"

namespace rotlaw {

/// Explicit partial quotients a1, a2, ...: a finite prefix, optionally followed
/// by a periodic tail repeated forever.
struct QuotientStream {
  std::vector<Integer> prefix;
  std::vector<Integer> period;
};

/// Rotation angle in (0,1): a quadratic surd or an explicit quotient stream.
struct AngleSpec {
  std::variant<QuadraticForm, QuotientStream> form;

  static AngleSpec quadratic(long u, long v, long w, long d) { return {QuadraticForm{u, v, w, d}}; }
  static AngleSpec stream(std::vector<Integer> prefix, std::vector<Integer> period = {}) {
    return {QuotientStream{std::move(prefix), std::move(period)}};
  }
};

/// Convergents p_k/q_k for k = -1..n. Index with p(k), q(k).
struct ConvergentTable {
  std::vector<Integer> quotients;  // a_1..a_n
  std::vector<Integer> p_;         // p_{-1}, p_0, ..., p_n
  std::vector<Integer> q_;

  std::size_t size() const { return quotients.size(); }
  const Integer& a(std::size_t k) const { return quotients.at(k - 1); }
  const Integer& p(long k) const { return p_.at(static_cast<std::size_t>(k + 1)); }
  const Integer& q(long k) const { return q_.at(static_cast<std::size_t>(k + 1)); }
};

/// Convergent recursion from the seeds p0=0, p-1=1, q0=1, q-1=0.
ConvergentTable convergents(const std::vector<Integer>& quotients);

/// An irrational angle with a lazily extended, append-only convergent cache.
/// Thread-safe: concurrent readers see a consistent prefix.
class Angle {
 public:
  static constexpr std::size_t kDefaultRefinementCap = 10000;

  explicit Angle(AngleSpec spec, std::size_t refinement_cap = kDefaultRefinementCap);

  const AngleSpec& spec() const { return spec_; }
  double approx() const { return approx_; }
  std::size_t refinement_cap() const { return cap_; }

  /// Number of quotients available (max size_t for infinite streams).
  std::optional<std::size_t> finite_length() const;

  /// a_k for k >= 1; throws PrefixExhausted past a finite prefix.
  Integer quotient(std::size_t k) const;
  /// p_k, q_k for k >= -1.
  std::pair<Integer, Integer> convergent(long k) const;

  ConvergentTable table(std::size_t n) const;

  /// Open interval containing alpha from the level-k convergents.
  RationalInterval bracket(std::size_t k) const;

  /// Exact sign of a + b*alpha. Throws PrefixExhausted when undecided within
  /// the refinement cap or a finite prefix.
  int sign_linear(const Rational& a, const Rational& b) const;

  /// Enclosure of a + b*alpha with width at most `width` (when b != 0).
  RationalInterval enclose_linear(const Rational& a, const Rational& b, const Rational& width) const;

 private:
  void extend_to(std::size_t k) const;  // requires lock held

  AngleSpec spec_;
  std::size_t cap_;
  double approx_ = 0.0;

  mutable std::mutex mu_;
  mutable std::vector<Integer> a_;  // a_1..a_k materialized
  mutable std::vector<Integer> p_, q_;  // p_{-1}..p_k
  // Gauss-map state for quadratic angles: x = (P + sqrt(D)) / Q.
  mutable Integer gP_, gQ_, gD_, gS_;
};

/// First n partial quotients and convergents. Throws RationalAngle or PrefixExhausted.
ConvergentTable cf_expand(const AngleSpec& angle, std::size_t n);

/// Certified enclosure of ||q_n alpha|| = |q_n alpha - p_n|, of width at most `width`
/// and strictly inside [1/(q_n + q_{n+1}), 1/q_{n+1}].
RationalInterval qn_alpha_dist(const Angle& angle, std::size_t n, const Rational& width = Rational(1, 1000000));

}  // namespace rotlaw
