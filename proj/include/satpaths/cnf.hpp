#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace satpaths {

using Var = std::uint32_t;

/// Names produced by the toolchain itself start with this character; parsed
/// names never do.
inline constexpr char kReservedPrefix = '_';

struct Literal {
  Var variable = 0;
  bool negated = false;

  Literal operator~() const { return {variable, !negated}; }

  // Canonical order: by variable, positive before negative.
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

struct Clause {
  std::vector<Literal> literals;

  std::size_t size() const { return literals.size(); }
  friend bool operator==(const Clause&, const Clause&) = default;
};

class UnsatisfiableClauseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sorts literals canonically and drops duplicates. Returns std::nullopt
/// when the clause holds both l and ~l. Throws UnsatisfiableClauseError on
/// an empty clause.
std::optional<Clause> normalize_clause(Clause clause);

/// Bidirectional name <-> index map. Indices are dense and stable.
class VariableTable {
 public:
  VariableTable() = default;
  explicit VariableTable(std::vector<std::string> names);

  /// Table with names x1..xn.
  static VariableTable numbered(std::size_t n);

  Var add(std::string name);
  /// Appends a fresh name `_<tag><j>` that is not yet in the table.
  Var add_fresh(std::string_view tag);

  std::optional<Var> find(std::string_view name) const;
  const std::string& name(Var v) const { return names_.at(v); }
  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return names_.size(); }

  friend bool operator==(const VariableTable& a, const VariableTable& b) {
    return a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Var> index_;
  std::unordered_map<std::string, std::size_t> next_fresh_;
};

std::string literal_name(const VariableTable& vars, Literal lit);

/// A CNF formula. Clauses added through add_clause are normalized; clauses
/// built by reductions may be appended verbatim with append_raw (they must
/// still be free of duplicates and complementary pairs).
class CnfFormula {
 public:
  CnfFormula() = default;
  explicit CnfFormula(VariableTable vars) : vars_(std::move(vars)) {}

  /// Normalizes and appends. Returns false if the clause was a tautology and
  /// got dropped.
  bool add_clause(Clause clause);
  void append_raw(Clause clause);

  Var add_variable(std::string name) { return vars_.add(std::move(name)); }
  Var add_fresh_variable(std::string_view tag) { return vars_.add_fresh(tag); }

  const VariableTable& variables() const { return vars_; }
  const std::vector<Clause>& clauses() const { return clauses_; }
  std::size_t num_variables() const { return vars_.size(); }
  std::size_t num_clauses() const { return clauses_.size(); }

  std::optional<std::size_t> declared_k() const { return k_declared_; }
  void set_declared_k(std::optional<std::size_t> k) { k_declared_ = k; }

  std::size_t max_clause_size() const;
  std::size_t total_literals() const;
  bool is_exact_k(std::size_t k) const;
  /// Variables occurring in at least one clause, ascending.
  std::vector<Var> used_variables() const;
  std::size_t used_variable_count() const { return used_variables().size(); }

  bool satisfied_by(const std::vector<bool>& assignment) const;
  std::size_t count_satisfied(const std::vector<bool>& assignment) const;

  /// Same clauses over the same number of variables (names not compared).
  friend bool same_clauses(const CnfFormula& a, const CnfFormula& b) {
    return a.num_variables() == b.num_variables() && a.clauses_ == b.clauses_;
  }

 private:
  void check_literals(const Clause& clause) const;

  VariableTable vars_;
  std::vector<Clause> clauses_;
  std::optional<std::size_t> k_declared_;
};

}  // namespace satpaths
