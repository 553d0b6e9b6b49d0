#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rotlaw/system.hpp"

namespace rotlaw {

/// y -> b + r y over a number field.
struct AffineMap {
  FieldElem b;
  FieldElem r;

  FieldElem operator()(const FieldElem& y) const { return b + r * y; }
  friend bool operator==(const AffineMap& f, const AffineMap& g) { return f.b == g.b && f.r == g.r; }
};

/// f o g.
AffineMap compose(const AffineMap& f, const AffineMap& g);
/// b / (1 - r). Requires r != 1.
FieldElem fix(const AffineMap& f);

/// Branch maps of a system: one letter per distinct (b, r) pair, numbered in
/// order of first appearance along D.
struct Alphabet {
  std::vector<AffineMap> maps;
  std::vector<std::size_t> letter_of_interval;
};

Alphabet branch_alphabet(const RotationSystem& system);

using Word = std::vector<std::size_t>;

AffineMap compose_word(const Alphabet& alphabet, const Word& word);
std::string word_string(const Word& word);

struct AffineWord {
  Word letters;
  AffineMap map;
  FieldElem fix;
  bool admissible = false;
  bool minimal = false;
  CirclePoint witness_lo, witness_hi;  // a piece of the cylinder realizing the word
};

/// Words of length n realized by a piece of the partition cut by T^{-k} D, k < n,
/// in lexicographic order.
std::vector<AffineWord> admissible_words(const RotationSystem& system, std::size_t n);

/// Admissible words of length <= n no strict prefix of which shares the fixed point.
std::vector<AffineWord> minimal_words(const RotationSystem& system, std::size_t n);

struct Collision {
  AffineWord first, second;
  bool commute = false;
};

struct InjectivityReport {
  std::size_t depth = 0;
  std::size_t minimal_count = 0;
  std::vector<Collision> collisions;

  bool injective() const { return collisions.empty(); }
};

InjectivityReport injectivity_report(const RotationSystem& system, std::size_t n);

struct CommutationResult {
  bool same_fix = false;
  bool commute = false;
};

std::vector<CommutationResult> commutation_equiv_test(const std::vector<std::pair<AffineMap, AffineMap>>& pairs);

/// Coefficients c_0..c_d in {0, +-1}, c_d = 1, d <= d_max minimal, with sum c_k lambda^k = 0.
std::optional<std::vector<int>> zpm_one_root_check(const LambdaSpec& lambda, std::size_t d_max,
                                                   std::size_t cap = 24);

struct DichotomyVerdict {
  bool periodic = false;
  std::size_t period = 0;
  std::size_t depth = 0;
  std::vector<FieldElem> range;  // X values when the coding is periodic
  std::string verdict;
};

/// Requires injectivity to depth n (InjectivityNotVerified otherwise).
DichotomyVerdict periodic_dichotomy(const RotationSystem& system, std::size_t n);

}  // namespace rotlaw
