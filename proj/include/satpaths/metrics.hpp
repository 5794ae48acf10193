#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "satpaths/cnf.hpp"
#include "satpaths/reductions.hpp"

namespace satpaths {

/// One CSV row: the structural metrics of a finished path run.
struct PathReport {
  PathVariant variant = PathVariant::Choi;
  std::size_t k = 0;
  std::size_t m = 0;
  std::size_t pool = 0;
  std::size_t used_variables = 0;
  std::uint64_t seed = 0;
  std::optional<double> p;  // empty for Choi / Choi*
  std::size_t qubo_variables = 0;
  std::size_t qubo_monomials = 0;  // non-constant terms
  std::size_t qubo_deg2 = 0;
  std::size_t qubo_deg1 = 0;
  double sat_density = 0.0;
  double qubo_deg2_density = 0.0;
  double time_s = 0.0;
  std::string error;  // non-empty marks a failed combination

  bool failed() const { return !error.empty(); }
  /// Throws std::logic_error if a structural invariant is broken.
  void validate() const;
};

/// m / (C(n_used, k) * 2^k): clauses present over polarity-labelled
/// k-variable clauses drawable from the used variables.
double sat_density(std::size_t m, std::size_t used_variables, std::size_t k);

/// deg2 / C(N, 2); 0 when N < 2.
double qubo_deg2_density(std::size_t deg2, std::size_t variables);

/// k is the formula's declared clause size, falling back to its largest
/// clause. QUBO variables are those occurring in some non-constant term.
PathReport compute_metrics(const CnfFormula& input, const PathRun& run, std::size_t pool,
                           std::uint64_t seed, std::optional<double> p);

/// Fixed header, without trailing newline.
const std::string& csv_header();
std::string to_csv_row(const PathReport& report);
/// Reads a sweep CSV, checking the header, every column's type and the
/// report invariants. Throws std::runtime_error naming the offending line.
std::vector<PathReport> read_sweep_csv(std::istream& in);

}  // namespace satpaths
