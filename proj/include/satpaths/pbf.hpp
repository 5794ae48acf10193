#pragma once

#include <map>
#include <vector>

#include "satpaths/cnf.hpp"

namespace satpaths {

enum class Sense { Max, Min };

const char* to_string(Sense sense);

/// Sorted, duplicate-free set of variable indices. The empty support is the
/// constant term.
using Support = std::vector<Var>;

/// Multi-linear pseudo-Boolean polynomial f: {0,1}^n -> R.
///
/// Terms are kept canonical: one entry per support, supports ordered
/// lexicographically, no zero coefficients. Coefficients are doubles, but
/// every construction in this library produces small integers, so sums and
/// cancellations are exact.
class Pbf {
 public:
  using TermMap = std::map<Support, double>;

  Pbf() = default;
  explicit Pbf(VariableTable vars, Sense sense = Sense::Max)
      : vars_(std::move(vars)), sense_(sense) {}

  static Pbf constant(VariableTable vars, double value, Sense sense = Sense::Max);

  /// Adds coeff * prod(support). The support is sorted and deduplicated
  /// (x*x = x) before accumulation; a resulting zero coefficient removes the
  /// term.
  void add_term(Support support, double coeff);

  const TermMap& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }
  double coefficient(const Support& support) const;
  double constant_term() const { return coefficient({}); }

  std::size_t degree() const;
  /// Number of terms with |support| == d.
  std::size_t count_degree(std::size_t d) const;
  /// Terms excluding the constant.
  std::size_t count_nonconstant() const;
  bool is_integral() const;

  double evaluate(const std::vector<bool>& assignment) const;

  const VariableTable& variables() const { return vars_; }
  std::size_t num_variables() const { return vars_.size(); }
  Var add_variable(std::string name) { return vars_.add(std::move(name)); }
  Var add_fresh_variable(std::string_view tag) { return vars_.add_fresh(tag); }

  /// Variables that appear in at least one non-constant term, ascending.
  std::vector<Var> occurring_variables() const;

  Sense sense() const { return sense_; }
  void set_sense(Sense sense) { sense_ = sense; }

  Pbf scaled(double factor) const;

  friend bool operator==(const Pbf& a, const Pbf& b) {
    return a.sense_ == b.sense_ && a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

 private:
  VariableTable vars_;
  TermMap terms_;
  Sense sense_ = Sense::Max;
};

/// x_v (complemented == false) or 1 - x_v (complemented == true).
struct AffineFactor {
  Var variable = 0;
  bool complemented = false;
};

/// Pointwise sum. Variable tables are merged by name: the result keeps a's
/// table and appends b's names that a lacks. Both operands must share a sense.
Pbf pbf_add(const Pbf& a, const Pbf& b);

/// Multiplies f by x_v or (1 - x_v) with full multi-linear expansion.
Pbf pbf_multiply_factor(const Pbf& f, AffineFactor factor);

double pbf_evaluate(const Pbf& f, const std::vector<bool>& assignment);

std::size_t pbf_degree(const Pbf& f);

}  // namespace satpaths
