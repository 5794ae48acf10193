#pragma once

#include <cstdint>
#include <string>

#include "satpaths/cnf.hpp"

namespace satpaths {

struct GeneratorConfig {
  std::size_t n_pool = 0;  // |V|
  std::size_t k = 3;
  std::size_t m = 1;
  std::uint64_t seed = 0;
  bool deduplicate = false;  // drop repeated clauses and resample

  void validate() const;
};

/// Random exact-k formula: each clause is k literals drawn uniformly from
/// the 2 * n_pool literal set, conditioned on the k variables being distinct
/// (so no duplicates and no tautologies). Deterministic for a fixed config.
/// The formula's table holds all n_pool variables; see
/// CnfFormula::used_variable_count for the ones that actually occur.
CnfFormula generate_random_ksat(const GeneratorConfig& cfg);

/// Human-readable description of the RNG and sampling policy, recorded in
/// experiment metadata.
std::string generator_policy();

}  // namespace satpaths
