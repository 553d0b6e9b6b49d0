#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rotlaw/series.hpp"

namespace rotlaw {

enum class JumpVerdict { Zero, NonZero, Undecided };
enum class Verdict { Atomic, Continuous, Undecided };

std::string to_string(JumpVerdict v);
std::string to_string(Verdict v);

/// Continuity criterion at the base point d of chain k:
///   sum_{i<=p} [r_i(d) b(T^i d) - r_i(d-) b(T^i d-)] + [r_{p+1}(d) - r_{p+1}(d-)] X(T^{p+1} d).
struct ChainJump {
  std::size_t k = 0;
  bool exact = false;
  std::optional<FieldElem> value;   // set when exact
  RationalInterval interval;        // always set
  JumpVerdict verdict = JumpVerdict::Undecided;
  /// Constant ratio only: jump coefficients c_i of sum_i c_i lambda^i before reduction.
  std::vector<Rational> polynomial;
};

ChainJump chain_jump(const RotationSystem& system, const ChainDecomposition& chains, std::size_t k,
                     const Rational& eps);

struct AtomicityVerdict {
  Verdict verdict = Verdict::Undecided;
  ChainDecomposition chains;
  std::vector<ChainJump> jumps;
  std::vector<Atom> support;  // set when Atomic
};

/// Default enclosure radius for X at the chain ends.
Rational default_jump_eps();

AtomicityVerdict classify(const RotationSystem& system, const Rational& eps = default_jump_eps(), unsigned threads = 1);

/// Atoms of P_X with exact values and masses. Throws NotAtomic unless classify says Atomic.
std::vector<Atom> atom_support(const RotationSystem& system, unsigned threads = 1);

/// b = sum_k a_k g o T^k with r = lambda, for coefficients satisfying
/// sum_k a_k lambda^{p-k} = 0; then X = sum_{n<p} beta_n g o T^n with
/// beta_n = sum_{k<=n} a_k lambda^{n-k}.
struct CoboundaryExample {
  RotationSystem system;
  StepFunction<Rational> g;
  std::vector<FieldElem> beta;

  /// Closed-form X(x) (Right) or X(x-) (Left).
  FieldElem predict(const CirclePoint& x, Side side) const;
};

CoboundaryExample coboundary_build(std::shared_ptr<const Angle> angle, const PiecewiseConstant<Rational>& g,
                                   const std::vector<Rational>& coeffs, const LambdaSpec& lambda);

}  // namespace rotlaw
