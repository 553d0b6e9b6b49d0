#include "rotlaw/atomicity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rotlaw/errors.hpp"
#include "rotlaw/parallel.hpp"

namespace rotlaw {

std::string to_string(JumpVerdict v) {
  switch (v) {
    case JumpVerdict::Zero: return "Zero";
    case JumpVerdict::NonZero: return "NonZero";
    case JumpVerdict::Undecided: return "Undecided";
  }
  return "Undecided";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Atomic: return "Atomic";
    case Verdict::Continuous: return "Continuous";
    case Verdict::Undecided: return "Undecided";
  }
  return "Undecided";
}

Rational default_jump_eps() {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, 30);
  return Rational(1, p);
}

ChainJump chain_jump(const RotationSystem& system, const ChainDecomposition& chains, std::size_t k,
                     const Rational& eps) {
  if (k >= chains.K()) throw LabError(ErrorKind::InvalidInput, "chain index out of range");
  const Chain& chain = chains.chains[k];
  const CirclePoint& d = chain.base_point;
  const auto steps = static_cast<std::size_t>(chain.p() + 1);

  const PartialSum right = partial_sum(system, d, steps, Side::Right);
  const PartialSum left = partial_sum(system, d, steps, Side::Left);
  const FieldElem head = right.sum - left.sum;
  const FieldElem coeff = right.ratio - left.ratio;

  ChainJump out;
  out.k = k;
  if (system.constant_ratio()) {
    CirclePoint y = d;
    for (std::size_t i = 0; i < steps; ++i) {
      out.polynomial.push_back(system.b(system.locate(y, Side::Right)) - system.b(system.locate(y, Side::Left)));
      y.rot += 1;
    }
  }
  if (coeff.is_zero()) {
    out.exact = true;
    out.value = head;
    out.interval = head.enclose();
    out.verdict = head.is_zero() ? JumpVerdict::Zero : JumpVerdict::NonZero;
    return out;
  }
  const CirclePoint end(d.rat, d.rot + static_cast<long>(steps));
  const XEnclosure x = eval_X(system, end, Side::Right, eps);
  out.interval = head.enclose() + coeff.enclose() * x.interval;
  out.verdict = out.interval.contains_zero() ? JumpVerdict::Undecided : JumpVerdict::NonZero;
  return out;
}

namespace {

std::vector<Atom> support_from_chains(const RotationSystem& system, const ChainDecomposition& chains, unsigned threads) {
  std::vector<CirclePoint> pts;
  for (const auto& c : chains.chains) {
    for (long long i = 0; i <= c.p(); ++i) pts.emplace_back(c.base_point.rat, c.base_point.rot + static_cast<long>(i));
  }
  const Partition cuts(system.angle_ptr(), std::move(pts), true);
  const std::size_t m = cuts.size();

  // On piece j: X = b_j + r_j X(T u_j), with T u_j in piece next[j].
  std::vector<Rational> bj(m);
  std::vector<FieldElem> rj(m);
  std::vector<std::size_t> next(m);
  for (std::size_t j = 0; j < m; ++j) {
    const CirclePoint& u = cuts.point(j);
    const std::size_t i = system.locate(u, Side::Right);
    bj[j] = system.b(i);
    rj[j] = system.r(i);
    next[j] = cuts.locate(CirclePoint(u.rat, u.rot + 1), Side::Right);
  }

  std::vector<std::optional<FieldElem>> value(m);
  std::vector<int> mark(m, 0);  // 0 unvisited, 1 on current path, 2 done
  for (std::size_t s = 0; s < m; ++s) {
    if (value[s]) continue;
    std::vector<std::size_t> path;
    std::size_t j = s;
    while (!value[j] && mark[j] == 0) {
      mark[j] = 1;
      path.push_back(j);
      j = next[j];
    }
    if (!value[j]) {
      // j starts a cycle on the current path: c_j = B + R c_j.
      FieldElem B = system.zero(), R = system.one();
      std::size_t c = j;
      do {
        B += R * bj[c];
        R *= rj[c];
        c = next[c];
      } while (c != j);
      value[j] = B / (system.one() - R);
    }
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      if (!value[*it]) value[*it] = rj[*it] * *value[next[*it]] + FieldElem(system.field(), bj[*it]);
      mark[*it] = 2;
    }
  }

  // Independent cross-check against the series itself.
  parallel_for(m, threads, [&](std::size_t j) {
    const XEnclosure x = eval_X(system, cuts.point(j), Side::Right, default_jump_eps());
    const RationalInterval c = value[j]->enclose();
    if (c.hi < x.interval.lo || c.lo > x.interval.hi) {
      throw std::logic_error("atom value disagrees with the series at " + cuts.point(j).to_string());
    }
  });

  std::vector<CylinderPiece> pieces(m);
  for (std::size_t j = 0; j < m; ++j) {
    pieces[j].lo = cuts.point(j);
    pieces[j].hi = cuts.point((j + 1) % m);
    pieces[j].value = *value[j];
    pieces[j].weight = cuts.length(j);
    pieces[j].value_approx = value[j]->to_double();
  }
  return merge_equal_values(system, pieces);
}

}  // namespace

AtomicityVerdict classify(const RotationSystem& system, const Rational& eps, unsigned threads) {
  AtomicityVerdict out;
  out.chains = chain_decompose(system);
  out.jumps.resize(out.chains.K());
  parallel_for(out.chains.K(), threads, [&](std::size_t k) { out.jumps[k] = chain_jump(system, out.chains, k, eps); });
  const bool any_nonzero = std::any_of(out.jumps.begin(), out.jumps.end(),
                                       [](const ChainJump& j) { return j.verdict == JumpVerdict::NonZero; });
  const bool all_zero = std::all_of(out.jumps.begin(), out.jumps.end(),
                                    [](const ChainJump& j) { return j.verdict == JumpVerdict::Zero; });
  if (any_nonzero) {
    out.verdict = Verdict::Continuous;
  } else if (all_zero) {
    out.verdict = Verdict::Atomic;
    out.support = support_from_chains(system, out.chains, threads);
  } else {
    out.verdict = Verdict::Undecided;
  }
  return out;
}

std::vector<Atom> atom_support(const RotationSystem& system, unsigned threads) {
  AtomicityVerdict v = classify(system, default_jump_eps(), threads);
  if (v.verdict != Verdict::Atomic) {
    throw LabError(ErrorKind::NotAtomic, "system is classified " + to_string(v.verdict));
  }
  return std::move(v.support);
}

FieldElem CoboundaryExample::predict(const CirclePoint& x, Side side) const {
  FieldElem out = system.zero();
  CirclePoint y = x;
  for (const auto& b : beta) {
    out += b * g.at(y, side);
    y.rot += 1;
  }
  return out;
}

CoboundaryExample coboundary_build(std::shared_ptr<const Angle> angle, const PiecewiseConstant<Rational>& g,
                                   const std::vector<Rational>& coeffs, const LambdaSpec& lambda) {
  if (coeffs.size() < 2) throw LabError(ErrorKind::InvalidInput, "coboundary needs p >= 1 (two or more coefficients)");
  const Lambda lam = make_lambda(lambda);
  const std::size_t p = coeffs.size() - 1;

  FieldElem relation(lam.field.get(), Rational(0));
  for (std::size_t k = 0; k <= p; ++k) relation += lam.value.pow(static_cast<unsigned>(p - k)) * coeffs[k];
  if (!relation.is_zero()) {
    throw LabError(ErrorKind::RelationNotSatisfied, "sum_k a_k lambda^(p-k) = " + relation.to_string() + " != 0");
  }

  StepFunction<Rational> gf = make_step_function(angle, g);
  std::vector<CirclePoint> pts;
  for (std::size_t k = 0; k <= p; ++k) {
    for (const auto& d : gf.partition->points()) pts.emplace_back(d.rat, d.rot - static_cast<long>(k));
  }
  const std::vector<CirclePoint> cuts = sort_circle_points(*angle, std::move(pts));
  PiecewiseConstant<Rational> b;
  for (const auto& u : cuts) {
    Rational v = 0;
    CirclePoint y = u;
    for (std::size_t k = 0; k <= p; ++k) {
      v += coeffs[k] * gf.at(y, Side::Right);
      y.rot += 1;
    }
    b.breakpoints.push_back(u);
    b.values.push_back(v);
  }

  RotationSystem system = build_system(angle, b, lam);
  std::vector<FieldElem> beta;
  FieldElem acc = system.zero();
  for (std::size_t n = 0; n < p; ++n) {
    acc = acc * lam.value + FieldElem(system.field(), coeffs[n]);
    beta.push_back(acc);
  }
  return {std::move(system), std::move(gf), std::move(beta)};
}

}  // namespace rotlaw
