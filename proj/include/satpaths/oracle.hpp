#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "satpaths/cnf.hpp"
#include "satpaths/mis.hpp"
#include "satpaths/pbf.hpp"

namespace satpaths {

/// Brute-force ground truth. Every check enumerates all 2^b points of some
/// bit space and refuses when b exceeds the budget.
///
/// Assignments are packed into integers; bit i belongs to the i-th variable of
/// the space being enumerated. Enumeration runs in ascending integer order, so
/// returned sets are sorted and witnesses are the smallest failing point.
struct OracleBudget {
  std::size_t max_total_bits = 22;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolutionSet {
  std::vector<Var> variables;              // the used variables, ascending
  std::vector<std::uint64_t> assignments;  // bit i <-> variables[i]
};

/// All models over the variables that occur in the formula.
SolutionSet sat_solutions(const CnfFormula& formula, OracleBudget budget = {});
bool is_satisfiable(const CnfFormula& formula, OracleBudget budget = {});

/// Satisfiability by enumerating only `core` and, for each core assignment,
/// splitting the residual formula into variable-disjoint components that are
/// enumerated separately. Exact; useful when the non-core variables form
/// small independent groups (e.g. clause-splitting auxiliaries). Each
/// enumeration, core or component, must fit the budget.
bool is_satisfiable_given(const CnfFormula& formula, std::span<const Var> core,
                          OracleBudget budget = {});

struct Extrema {
  double min_value = 0.0;
  std::vector<std::uint64_t> argmin;  // bit v <-> variable v of f
  double max_value = 0.0;
  std::vector<std::uint64_t> argmax;
};

Extrema pbf_extrema(const Pbf& f, OracleBudget budget = {});

/// Size of a maximum independent set, by include/exclude branching.
std::size_t max_independent_set_size(const MisInstance& g, OracleBudget budget = {});

struct CheckResult {
  bool passed = true;
  /// Offending assignment over the relevant formula/polynomial table.
  std::optional<std::vector<bool>> witness;
  std::string detail;

  explicit operator bool() const { return passed; }
};

/// original(x) == min_y reduced(x, y) for every x. Variables of `reduced` are
/// matched to `original` by name; `ancillas` are the remaining indices of
/// `reduced`. The witness is an assignment to original's table.
CheckResult verify_quadratisation(const Pbf& original, const Pbf& reduced,
                                  std::span<const Var> ancillas, OracleBudget budget = {});

/// (maximum independent set size == m) == satisfiable(formula).
CheckResult verify_mis_correspondence(const CnfFormula& formula, const MisInstance& g,
                                      OracleBudget budget = {});

/// Every maximiser of `qubo` (a mis_to_qubo output over the nodes of g) is an
/// independent set of maximum size.
CheckResult verify_mis_qubo(const MisInstance& g, const Pbf& qubo, OracleBudget budget = {});

/// For every assignment: pubo == satisfied-clause count (max sense) or
/// pubo == m - count (min sense). The witness is an assignment to the
/// formula's table.
CheckResult verify_counting(const CnfFormula& formula, const Pbf& pubo,
                            OracleBudget budget = {});

}  // namespace satpaths
