#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "satpaths/cnf.hpp"
#include "satpaths/mis.hpp"
#include "satpaths/pbf.hpp"
#include "satpaths/quadratiser.hpp"

namespace satpaths {

enum class PathVariant { Choi, ChoiStar, Dobrynin, DeMorgan };

inline constexpr std::array<PathVariant, 4> kAllVariants = {
    PathVariant::Choi, PathVariant::ChoiStar, PathVariant::Dobrynin, PathVariant::DeMorgan};

const char* to_string(PathVariant variant);
std::optional<PathVariant> parse_variant(std::string_view text);
/// Choi and Choi* go through an independent-set graph; the others through a
/// higher-order polynomial.
bool uses_mis(PathVariant variant);
bool uses_textbook(PathVariant variant);

/// Splits every clause longer than `target` by repeatedly replacing its last
/// target - 1 literals with a fresh variable z and emitting (~z, replaced...).
/// Each input clause is replaced in place by its chain: the shortened clause
/// first, then the split-off clauses, latest first. For target 3 a clause of
/// size k yields k - 2 clauses and k - 3 fresh variables named `_t<j>`.
CnfFormula textbook_reduce(const CnfFormula& formula, std::size_t target = 3);

/// One node per literal occurrence, a clique per clause and an edge between
/// every complementary pair of occurrences in different clauses. Nodes carry
/// weight 1; edges carry `edge_penalty`.
MisInstance sat_to_mis(const CnfFormula& formula, double edge_penalty = 2.0);

/// gamma(x) = sum_i c_i x_i - sum_{(i,j) in E} J x_i x_j, to be maximised.
/// Variables are the node names. Throws std::invalid_argument if J <= 1.
Pbf mis_to_qubo(const MisInstance& graph);

/// Indicator of `clause` being violated: prod over literals of x_v (negated
/// literal) or 1 - x_v (positive literal).
Pbf clause_violation(const VariableTable& vars, const Clause& clause);

/// Max sense: sum over clauses of (1 - violation), i.e. the number of
/// satisfied clauses. Min sense: sum of violations, i.e. m minus that count,
/// which is 0 exactly on models.
Pbf sat_to_pubo(const CnfFormula& formula, Sense sense = Sense::Min);

/// Ancillas per clause of a binary-counting MAX-k-SAT encoding:
/// r(2) = 0, r(3) = 1, r(k) = ceil(log2(k + 1)) + r(ceil(log2(k + 1))).
std::size_t nuesslein_ancillas(std::size_t k);
/// n + m * r(k). Throws std::invalid_argument for k < 2.
std::size_t nuesslein_size(std::size_t n, std::size_t m, std::size_t k);

struct PathOptions {
  double percentile = 1.0;  // ignored by Choi / Choi*
  PenaltyWeight penalty = PenaltyWeight::adaptive();
  double mis_edge_penalty = 2.0;
  std::size_t textbook_target = 3;
};

/// A k-SAT -> QUBO run with every intermediate kept.
struct PathRun {
  PathVariant variant = PathVariant::Choi;
  std::optional<CnfFormula> reduced;  // textbook output (Choi, Dobrynin)
  std::optional<MisInstance> mis;     // Choi, Choi*
  std::optional<Pbf> pubo;            // Dobrynin, DeMorgan (min sense)
  std::vector<SubstitutionRecord> substitutions;
  Pbf qubo;
  double wall_time_seconds = 0.0;

  std::size_t ancilla_count() const { return substitutions.size(); }
};

/// Runs one of the four paths. Wall time covers the transformation stages
/// only.
PathRun run_path(const CnfFormula& formula, PathVariant variant,
                 const PathOptions& options = {});

}  // namespace satpaths
