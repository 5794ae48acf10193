#include "satpaths/cnf.hpp"

#include <algorithm>

namespace satpaths {

std::optional<Clause> normalize_clause(Clause clause) {
  auto& lits = clause.literals;
  if (lits.empty()) throw UnsatisfiableClauseError("empty clause");
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  // After sorting, x and ~x are adjacent.
  for (std::size_t i = 1; i < lits.size(); ++i) {
    if (lits[i].variable == lits[i - 1].variable) return std::nullopt;
  }
  return clause;
}

VariableTable::VariableTable(std::vector<std::string> names) {
  for (auto& n : names) add(std::move(n));
}

VariableTable VariableTable::numbered(std::size_t n) {
  VariableTable t;
  for (std::size_t i = 1; i <= n; ++i) t.add("x" + std::to_string(i));
  return t;
}

Var VariableTable::add(std::string name) {
  if (name.empty()) throw std::invalid_argument("empty variable name");
  if (index_.count(name)) {
    throw std::invalid_argument("duplicate variable name '" + name + "'");
  }
  const auto v = static_cast<Var>(names_.size());
  index_.emplace(name, v);
  names_.push_back(std::move(name));
  return v;
}

Var VariableTable::add_fresh(std::string_view tag) {
  const std::string prefix = std::string(1, kReservedPrefix) + std::string(tag);
  auto& next = next_fresh_[prefix];
  std::string candidate;
  do {
    candidate = prefix + std::to_string(++next);
  } while (index_.count(candidate));
  return add(std::move(candidate));
}

std::optional<Var> VariableTable::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string literal_name(const VariableTable& vars, Literal lit) {
  return (lit.negated ? "~" : "") + vars.name(lit.variable);
}

void CnfFormula::check_literals(const Clause& clause) const {
  for (const auto& lit : clause.literals) {
    if (lit.variable >= vars_.size()) {
      throw std::out_of_range("literal refers to unknown variable index " +
                              std::to_string(lit.variable));
    }
  }
}

bool CnfFormula::add_clause(Clause clause) {
  check_literals(clause);
  auto normalized = normalize_clause(std::move(clause));
  if (!normalized) return false;
  clauses_.push_back(std::move(*normalized));
  return true;
}

void CnfFormula::append_raw(Clause clause) {
  if (clause.literals.empty()) throw UnsatisfiableClauseError("empty clause");
  check_literals(clause);
  clauses_.push_back(std::move(clause));
}

std::size_t CnfFormula::max_clause_size() const {
  std::size_t k = 0;
  for (const auto& c : clauses_) k = std::max(k, c.size());
  return k;
}

std::size_t CnfFormula::total_literals() const {
  std::size_t total = 0;
  for (const auto& c : clauses_) total += c.size();
  return total;
}

bool CnfFormula::is_exact_k(std::size_t k) const {
  return std::all_of(clauses_.begin(), clauses_.end(),
                     [k](const Clause& c) { return c.size() == k; });
}

std::vector<Var> CnfFormula::used_variables() const {
  std::vector<bool> seen(vars_.size(), false);
  for (const auto& c : clauses_)
    for (const auto& lit : c.literals) seen[lit.variable] = true;
  std::vector<Var> used;
  for (Var v = 0; v < seen.size(); ++v)
    if (seen[v]) used.push_back(v);
  return used;
}

std::size_t CnfFormula::count_satisfied(const std::vector<bool>& assignment) const {
  if (assignment.size() != vars_.size()) {
    throw std::invalid_argument("assignment length does not match variable count");
  }
  std::size_t count = 0;
  for (const auto& c : clauses_) {
    const bool sat = std::any_of(c.literals.begin(), c.literals.end(), [&](Literal l) {
      return assignment[l.variable] != l.negated;
    });
    if (sat) ++count;
  }
  return count;
}

bool CnfFormula::satisfied_by(const std::vector<bool>& assignment) const {
  return count_satisfied(assignment) == clauses_.size();
}

}  // namespace satpaths
