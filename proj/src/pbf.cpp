#include "satpaths/pbf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace satpaths {

const char* to_string(Sense sense) { return sense == Sense::Max ? "max" : "min"; }

Pbf Pbf::constant(VariableTable vars, double value, Sense sense) {
  Pbf f(std::move(vars), sense);
  f.add_term({}, value);
  return f;
}

void Pbf::add_term(Support support, double coeff) {
  if (coeff == 0.0) return;
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  if (!support.empty() && support.back() >= vars_.size()) {
    throw std::out_of_range("term refers to unknown variable index " +
                            std::to_string(support.back()));
  }
  auto [it, inserted] = terms_.try_emplace(std::move(support), coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double Pbf::coefficient(const Support& support) const {
  auto it = terms_.find(support);
  return it == terms_.end() ? 0.0 : it->second;
}

std::size_t Pbf::degree() const {
  std::size_t d = 0;
  for (const auto& [support, coeff] : terms_) d = std::max(d, support.size());
  return d;
}

std::size_t Pbf::count_degree(std::size_t d) const {
  return static_cast<std::size_t>(std::count_if(
      terms_.begin(), terms_.end(), [d](const auto& t) { return t.first.size() == d; }));
}

std::size_t Pbf::count_nonconstant() const {
  return terms_.size() - (terms_.count(Support{}) ? 1 : 0);
}

bool Pbf::is_integral() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) {
    return std::isfinite(t.second) && std::floor(t.second) == t.second;
  });
}

double Pbf::evaluate(const std::vector<bool>& assignment) const {
  if (assignment.size() != vars_.size()) {
    throw std::invalid_argument("assignment has " + std::to_string(assignment.size()) +
                                " bits, polynomial has " + std::to_string(vars_.size()) +
                                " variables");
  }
  double value = 0.0;
  for (const auto& [support, coeff] : terms_) {
    if (std::all_of(support.begin(), support.end(), [&](Var v) { return assignment[v]; })) {
      value += coeff;
    }
  }
  return value;
}

std::vector<Var> Pbf::occurring_variables() const {
  std::vector<bool> seen(vars_.size(), false);
  for (const auto& [support, coeff] : terms_)
    for (Var v : support) seen[v] = true;
  std::vector<Var> out;
  for (Var v = 0; v < seen.size(); ++v)
    if (seen[v]) out.push_back(v);
  return out;
}

Pbf Pbf::scaled(double factor) const {
  Pbf out(vars_, sense_);
  for (const auto& [support, coeff] : terms_) out.add_term(support, coeff * factor);
  return out;
}

Pbf pbf_add(const Pbf& a, const Pbf& b) {
  if (a.sense() != b.sense()) {
    throw std::invalid_argument("cannot add polynomials of different optimisation sense");
  }
  Pbf out = a;
  std::vector<Var> remap(b.num_variables());
  for (Var v = 0; v < b.num_variables(); ++v) {
    const auto& name = b.variables().name(v);
    auto found = out.variables().find(name);
    remap[v] = found ? *found : out.add_variable(name);
  }
  for (const auto& [support, coeff] : b.terms()) {
    Support mapped;
    mapped.reserve(support.size());
    for (Var v : support) mapped.push_back(remap[v]);
    out.add_term(std::move(mapped), coeff);
  }
  return out;
}

Pbf pbf_multiply_factor(const Pbf& f, AffineFactor factor) {
  if (factor.variable >= f.num_variables()) {
    throw std::out_of_range("factor refers to unknown variable index");
  }
  Pbf out(f.variables(), f.sense());
  const double sign = factor.complemented ? -1.0 : 1.0;
  for (const auto& [support, coeff] : f.terms()) {
    if (factor.complemented) out.add_term(support, coeff);
    Support grown = support;
    grown.push_back(factor.variable);
    out.add_term(std::move(grown), sign * coeff);
  }
  return out;
}

double pbf_evaluate(const Pbf& f, const std::vector<bool>& assignment) {
  return f.evaluate(assignment);
}

std::size_t pbf_degree(const Pbf& f) { return f.degree(); }

}  // namespace satpaths
