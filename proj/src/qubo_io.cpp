#include "satpaths/qubo_io.hpp"

#include <cstdio>
#include <stdexcept>

namespace satpaths {

nlohmann::json pbf_to_json(const Pbf& f) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [support, coeff] : f.terms()) {
    terms.push_back({{"support", support}, {"coeff", coeff}});
  }
  return {{"variables", f.variables().names()},
          {"sense", to_string(f.sense())},
          {"terms", std::move(terms)}};
}

Pbf pbf_from_json(const nlohmann::json& j) {
  try {
    const auto sense_text = j.at("sense").get<std::string>();
    Sense sense;
    if (sense_text == "min") {
      sense = Sense::Min;
    } else if (sense_text == "max") {
      sense = Sense::Max;
    } else {
      throw std::invalid_argument("unknown sense '" + sense_text + "'");
    }
    Pbf f(VariableTable(j.at("variables").get<std::vector<std::string>>()), sense);
    for (const auto& term : j.at("terms")) {
      auto support = term.at("support").get<Support>();
      for (auto v : support) {
        if (v >= f.num_variables()) {
          throw std::invalid_argument("term index " + std::to_string(v) + " out of range");
        }
      }
      f.add_term(std::move(support), term.at("coeff").get<double>());
    }
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed QUBO JSON: ") + e.what());
  }
}

std::string write_flat_qubo(const Pbf& f) {
  if (f.degree() > 2) {
    throw std::invalid_argument("flat QUBO format needs degree <= 2, got " +
                                std::to_string(f.degree()));
  }
  std::string out = std::string("# sense ") + to_string(f.sense()) + "\n# variables " +
                    std::to_string(f.num_variables()) + '\n';
  char buf[96];
  std::snprintf(buf, sizeof buf, "# offset %.17g\n", f.constant_term());
  out += buf;
  for (const auto& [support, coeff] : f.terms()) {
    if (support.empty()) continue;
    const auto i = support.front();
    const auto j = support.back();
    std::snprintf(buf, sizeof buf, "%u %u %.17g\n", i, j, coeff);
    out += buf;
  }
  return out;
}

nlohmann::json report_to_json(const PathReport& r) {
  nlohmann::json j = {{"variant", to_string(r.variant)},
                      {"k", r.k},
                      {"m", r.m},
                      {"pool", r.pool},
                      {"used_vars", r.used_variables},
                      {"seed", r.seed},
                      {"p", r.p ? nlohmann::json(*r.p) : nlohmann::json(nullptr)},
                      {"qubo_vars", r.qubo_variables},
                      {"qubo_monomials", r.qubo_monomials},
                      {"qubo_deg2", r.qubo_deg2},
                      {"qubo_deg1", r.qubo_deg1},
                      {"sat_density", r.sat_density},
                      {"qubo_deg2_density", r.qubo_deg2_density},
                      {"time_s", r.time_s}};
  if (r.failed()) j["error"] = r.error;
  return j;
}

}  // namespace satpaths
