#include "rotlaw/ifs.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "rotlaw/errors.hpp"

namespace rotlaw {

AffineMap compose(const AffineMap& f, const AffineMap& g) { return {f.b + f.r * g.b, f.r * g.r}; }

FieldElem fix(const AffineMap& f) {
  const FieldElem one(f.r.field(), Rational(1));
  return f.b / (one - f.r);
}

Alphabet branch_alphabet(const RotationSystem& system) {
  Alphabet out;
  for (std::size_t i = 0; i < system.N(); ++i) {
    const AffineMap m{FieldElem(system.field(), system.b(i)), system.r(i)};
    auto it = std::find(out.maps.begin(), out.maps.end(), m);
    if (it == out.maps.end()) {
      out.letter_of_interval.push_back(out.maps.size());
      out.maps.push_back(m);
    } else {
      out.letter_of_interval.push_back(static_cast<std::size_t>(it - out.maps.begin()));
    }
  }
  return out;
}

AffineMap compose_word(const Alphabet& alphabet, const Word& word) {
  if (word.empty()) throw LabError(ErrorKind::InvalidInput, "empty word");
  AffineMap out = alphabet.maps.at(word.back());
  for (std::size_t k = word.size() - 1; k-- > 0;) out = compose(alphabet.maps.at(word[k]), out);
  return out;
}

std::string word_string(const Word& word) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < word.size(); ++i) os << (i ? "," : "") << word[i];
  os << ')';
  return os.str();
}

std::vector<AffineWord> admissible_words(const RotationSystem& system, std::size_t n) {
  if (n < 1) throw LabError(ErrorKind::InvalidInput, "word length must be >= 1");
  const Alphabet alphabet = branch_alphabet(system);
  std::vector<CirclePoint> pts;
  for (std::size_t k = 0; k < n; ++k) {
    for (const auto& d : system.breakpoints().points()) pts.emplace_back(d.rat, d.rot - static_cast<long>(k));
  }
  const Partition cuts(system.angle_ptr(), std::move(pts), true);
  std::map<Word, std::size_t> seen;
  std::vector<AffineWord> out;
  for (std::size_t j = 0; j < cuts.size(); ++j) {
    Word w;
    CirclePoint y = cuts.point(j);
    for (std::size_t k = 0; k < n; ++k) {
      w.push_back(alphabet.letter_of_interval[system.locate(y, Side::Right)]);
      y.rot += 1;
    }
    if (seen.count(w)) continue;
    seen.emplace(w, out.size());
    AffineWord aw{w, compose_word(alphabet, w), FieldElem(), true, false, cuts.point(j), cuts.point((j + 1) % cuts.size())};
    aw.fix = fix(aw.map);
    out.push_back(std::move(aw));
  }
  std::sort(out.begin(), out.end(), [](const AffineWord& a, const AffineWord& b) { return a.letters < b.letters; });
  return out;
}

std::vector<AffineWord> minimal_words(const RotationSystem& system, std::size_t n) {
  const Alphabet alphabet = branch_alphabet(system);
  std::vector<AffineWord> out;
  for (std::size_t len = 1; len <= n; ++len) {
    for (auto& w : admissible_words(system, len)) {
      bool minimal = true;
      for (std::size_t p = 1; p < len && minimal; ++p) {
        const Word prefix(w.letters.begin(), w.letters.begin() + static_cast<std::ptrdiff_t>(p));
        if (fix(compose_word(alphabet, prefix)) == w.fix) minimal = false;
      }
      if (!minimal) continue;
      w.minimal = true;
      out.push_back(std::move(w));
    }
  }
  return out;
}

InjectivityReport injectivity_report(const RotationSystem& system, std::size_t n) {
  InjectivityReport out;
  out.depth = n;
  std::vector<AffineWord> words = minimal_words(system, n);
  out.minimal_count = words.size();
  std::vector<double> approx;
  for (const auto& w : words) approx.push_back(w.fix.to_double());
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      if (std::fabs(approx[i] - approx[j]) > 1e-9 * (1.0 + std::fabs(approx[i]))) continue;
      if (!(words[i].fix == words[j].fix)) continue;
      const bool commute = compose(words[i].map, words[j].map) == compose(words[j].map, words[i].map);
      out.collisions.push_back({words[i], words[j], commute});
    }
  }
  return out;
}

std::vector<CommutationResult> commutation_equiv_test(const std::vector<std::pair<AffineMap, AffineMap>>& pairs) {
  std::vector<CommutationResult> out;
  for (const auto& [f, g] : pairs) {
    out.push_back({fix(f) == fix(g), compose(f, g) == compose(g, f)});
  }
  return out;
}

std::optional<std::vector<int>> zpm_one_root_check(const LambdaSpec& spec, std::size_t d_max, std::size_t cap) {
  if (d_max < 1) throw LabError(ErrorKind::InvalidInput, "d_max must be >= 1");
  if (d_max > cap) {
    throw LabError(ErrorKind::DegreeTooLarge, "d_max " + std::to_string(d_max) + " exceeds cap " + std::to_string(cap));
  }
  const Lambda lam = make_lambda(spec);
  const auto deg = static_cast<std::size_t>(lam.field->degree());

  // Integer images of lambda^k under a common scaling.
  std::vector<FieldElem> powers{FieldElem(lam.field.get(), Rational(1))};
  for (std::size_t k = 1; k <= d_max; ++k) powers.push_back(powers.back() * lam.value);
  Integer common = 1;
  for (const auto& p : powers) {
    for (const auto& c : p.coeffs()) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), c.get_den_mpz_t());
  }
  using Vec = std::vector<Integer>;
  std::vector<Vec> scaled;
  for (const auto& p : powers) {
    Vec v(deg, Integer(0));
    for (std::size_t i = 0; i < p.coeffs().size() && i < deg; ++i) {
      const Rational c = p.coeffs()[i] * common;
      v[i] = c.get_num();
    }
    scaled.push_back(std::move(v));
  }

  auto add = [](Vec a, const Vec& b, int s) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
    return a;
  };
  // Depth-first enumeration of sum_{k in [lo, hi)} c_k v_k, c_k in {0, 1, -1}.
  auto enumerate = [&](std::size_t lo, std::size_t hi, const Vec& start,
                       const std::function<bool(const Vec&, const std::vector<int>&)>& visit) {
    std::vector<int> digits;
    std::function<bool(std::size_t, const Vec&)> rec = [&](std::size_t k, const Vec& acc) -> bool {
      if (k == hi) return visit(acc, digits);
      for (int c : {0, 1, -1}) {
        digits.push_back(c);
        const bool stop = rec(k + 1, c == 0 ? acc : add(acc, scaled[k], c));
        digits.pop_back();
        if (stop) return true;
      }
      return false;
    };
    return rec(lo, start);
  };

  for (std::size_t d = 1; d <= d_max; ++d) {
    const std::size_t h = (d + 1) / 2;
    std::map<Vec, std::vector<int>> low;
    enumerate(0, h, Vec(deg, Integer(0)), [&](const Vec& s, const std::vector<int>& digits) {
      low.emplace(s, digits);
      return false;
    });
    std::optional<std::vector<int>> found;
    enumerate(h, d, scaled[d], [&](const Vec& s, const std::vector<int>& digits) {
      Vec neg = s;
      for (auto& x : neg) x = -x;
      auto it = low.find(neg);
      if (it == low.end()) return false;
      std::vector<int> c = it->second;
      c.insert(c.end(), digits.begin(), digits.end());
      c.push_back(1);
      found = std::move(c);
      return true;
    });
    if (found) return found;
  }
  return std::nullopt;
}

DichotomyVerdict periodic_dichotomy(const RotationSystem& system, std::size_t n) {
  if (!injectivity_report(system, n).injective()) {
    throw LabError(ErrorKind::InjectivityNotVerified, "fixed points of minimal words collide by depth " + std::to_string(n));
  }
  const Alphabet alphabet = branch_alphabet(system);
  const Partition& D = system.breakpoints();
  const std::size_t N = D.size();

  struct Change {
    CirclePoint at;
    std::size_t left, right;
  };
  std::vector<Change> changes;
  for (std::size_t i = 0; i < N; ++i) {
    const std::size_t left = alphabet.letter_of_interval[(i + N - 1) % N];
    const std::size_t right = alphabet.letter_of_interval[i];
    if (left != right) changes.push_back({D.point(i), left, right});
  }

  DichotomyVerdict out;
  out.depth = n;
  if (changes.empty()) {
    out.periodic = true;
    out.period = 1;
  } else {
    for (std::size_t P = 1; P <= 2 * n && !out.periodic; ++P) {
      const bool invariant = std::all_of(changes.begin(), changes.end(), [&](const Change& c) {
        const CirclePoint moved(c.at.rat, c.at.rot + static_cast<long>(P));
        return std::any_of(changes.begin(), changes.end(), [&](const Change& e) {
          return same_point(e.at, moved) && e.left == c.left && e.right == c.right;
        });
      });
      if (invariant) {
        out.periodic = true;
        out.period = P;
      }
    }
  }
  if (!out.periodic) {
    out.verdict = "Continuous (conditional on injectivity beyond depth " + std::to_string(n) + ")";
    return out;
  }
  out.verdict = "Periodic coding";
  for (const auto& w : admissible_words(system, out.period)) {
    if (std::none_of(out.range.begin(), out.range.end(), [&](const FieldElem& v) { return v == w.fix; })) {
      out.range.push_back(w.fix);
    }
  }
  std::sort(out.range.begin(), out.range.end(),
            [](const FieldElem& a, const FieldElem& b) { return (a - b).sign() < 0; });
  return out;
}

}  // namespace rotlaw
