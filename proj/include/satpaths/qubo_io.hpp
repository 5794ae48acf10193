#pragma once

#include <string>

#include "json.hpp"
#include "satpaths/metrics.hpp"
#include "satpaths/pbf.hpp"

namespace satpaths {

/// {"variables": [names], "sense": "min"|"max",
///  "terms": [{"support": [indices], "coeff": c}, ...]}
/// Terms appear in canonical (support) order; the constant has support [].
nlohmann::json pbf_to_json(const Pbf& f);
/// Inverse of pbf_to_json. Throws std::invalid_argument on malformed input.
Pbf pbf_from_json(const nlohmann::json& j);

/// One term per line: `i j coeff` (i < j) or `i i coeff` for linear terms,
/// preceded by `# sense`, `# variables` and `# offset` comment lines.
/// Throws std::invalid_argument if f has a term of degree above 2.
std::string write_flat_qubo(const Pbf& f);

nlohmann::json report_to_json(const PathReport& report);

}  // namespace satpaths
