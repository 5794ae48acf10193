#pragma once

#include <vector>

#include "satpaths/pbf.hpp"

namespace satpaths {

/// One ancilla introduced by quadratise: y = first * second.
struct SubstitutionRecord {
  Var first = 0;
  Var second = 0;
  Var ancilla = 0;
  std::size_t monomials_rewritten = 0;
  std::size_t iteration = 0;
  double weight = 1.0;  // multiplier applied to the penalty gadget
};

/// Multiplier M for the penalty gadget. Adaptive weights use
/// M = 1 + sum of |coefficients| of the monomials rewritten in that step,
/// which keeps min_y f'(x, y) = f(x) for arbitrary coefficients. Fixed
/// weights (M >= 1) reproduce the plain gadget with M = 1.
class PenaltyWeight {
 public:
  static PenaltyWeight adaptive() { return PenaltyWeight(true, 0.0); }
  static PenaltyWeight fixed(double multiplier);
  static PenaltyWeight unit() { return fixed(1.0); }

  bool is_adaptive() const { return adaptive_; }
  double value() const { return value_; }
  double resolve(double rewritten_abs_sum) const {
    return adaptive_ ? 1.0 + rewritten_abs_sum : value_;
  }
  std::string describe() const;

 private:
  PenaltyWeight(bool adaptive, double value) : adaptive_(adaptive), value_(value) {}
  bool adaptive_;
  double value_;
};

/// 3y + x_i x_j - 2 x_i y - 2 x_j y over `vars`. Zero iff y = x_i x_j,
/// otherwise at least 1.
Pbf penalty(const VariableTable& vars, Var xi, Var xj, Var y);

struct PairSelection {
  Var first = 0;
  Var second = 0;
  std::size_t count = 0;
};

/// Counts, for every unordered variable pair, the monomials of degree >= 3
/// containing it, and returns the pair at the nearest-rank p-quantile of the
/// ascending count list (p = 0 picks a least frequent pair, p = 1 a most
/// frequent one). Among pairs with that count the lexicographically smallest
/// wins. Throws std::invalid_argument if f has degree < 3 or p is outside
/// [0, 1].
PairSelection select_pair(const Pbf& f, double percentile);

struct Quadratisation {
  Pbf result;
  std::vector<SubstitutionRecord> substitutions;

  std::vector<Var> ancillas() const;
};

/// Iterative pair substitution until degree <= 2. Each step picks a pair via
/// select_pair, introduces a fresh ancilla `_y<j>`, replaces the pair inside
/// every monomial of degree >= 3 that contains it, and adds
/// M * penalty(x_i, x_j, y). Quadratic and linear terms are never rewritten.
/// f must be in min sense.
Quadratisation quadratise(const Pbf& f, double percentile,
                          PenaltyWeight weight = PenaltyWeight::adaptive());

}  // namespace satpaths
