#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "satpaths/metrics.hpp"
#include "satpaths/quadratiser.hpp"
#include "satpaths/reductions.hpp"

namespace satpaths {

inline constexpr const char* kToolName = "satpaths";
inline constexpr const char* kToolVersion = "0.1.0";

struct SweepConfig {
  std::vector<std::size_t> k_values;
  std::vector<std::size_t> m_values;
  std::vector<std::size_t> pool_sizes;
  std::vector<std::uint64_t> seeds;
  std::vector<PathVariant> variants{kAllVariants.begin(), kAllVariants.end()};
  std::vector<double> p_values{1.0};
  std::filesystem::path output_dir = ".";
  std::size_t threads = 0;  // 0: hardware concurrency
  std::size_t timing_repeats = 1;
  PenaltyWeight penalty = PenaltyWeight::adaptive();

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
  nlohmann::json to_json() const;
};

/// Accepts the keys of SweepConfig (k_values, m_values, pool_sizes, seeds,
/// variants, p_values, output_dir, threads, timing_repeats, penalty).
/// `penalty` is "adaptive" or a number >= 1.
SweepConfig sweep_config_from_json(const nlohmann::json& j);
/// Flat TOML: `key = value` lines with integers, reals, strings and
/// single-line arrays of those; `#` comments. Tables are rejected.
nlohmann::json parse_flat_toml(const std::string& text);
/// Dispatches on the extension: .json, otherwise flat TOML.
SweepConfig load_sweep_config(const std::filesystem::path& path);

/// Number of rows a config produces; p collapses to one row for Choi/Choi*.
std::size_t expected_rows(const SweepConfig& cfg);

/// Worker count: cfg.threads (or hardware concurrency), capped by the
/// SATPATHS_THREADS environment variable and by the number of instances.
std::size_t sweep_threads(const SweepConfig& cfg, std::size_t instances);

/// Every combination in a fixed order: k, m, pool, seed, then variant, then p.
/// A combination that throws becomes a row with its error message set.
std::vector<PathReport> run_sweep_rows(const SweepConfig& cfg);

struct SweepSummary {
  std::filesystem::path csv_path;
  std::filesystem::path metadata_path;
  std::size_t rows = 0;
  std::size_t failed_rows = 0;
  double wall_time_seconds = 0.0;
};

/// Writes <output_dir>/sweep.csv and <output_dir>/metadata.json. Throws
/// std::runtime_error if the output directory cannot be written.
SweepSummary run_sweep(const SweepConfig& cfg);

}  // namespace satpaths
