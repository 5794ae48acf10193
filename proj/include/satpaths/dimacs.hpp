#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "satpaths/cnf.hpp"

namespace satpaths {

class DimacsError : public std::runtime_error {
 public:
  enum class Kind {
    MissingHeader,
    MalformedHeader,
    UnexpectedToken,
    VariableOutOfRange,
    EmptyClause,
    UnterminatedClause,
    ClauseCountMismatch,
    NoClausesLeft,
  };

  DimacsError(Kind kind, std::size_t line, const std::string& what);

  Kind kind() const { return kind_; }
  /// 1-based; 0 when the error is not tied to a line.
  std::size_t line() const { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

/// Reads `p cnf <n> <m>` DIMACS. Variables are named x1..xn. Clauses may span
/// lines. Tautological clauses are dropped and reported through `warnings`
/// (if non-null); they still count towards the header's clause total.
CnfFormula parse_dimacs(std::istream& in, std::vector<std::string>* warnings = nullptr);
CnfFormula parse_dimacs(const std::string& text, std::vector<std::string>* warnings = nullptr);

/// Header line, one clause per line as space-separated signed decimals
/// followed by " 0". Variable i in the table is written as i + 1.
void write_dimacs(std::ostream& out, const CnfFormula& formula);
std::string write_dimacs(const CnfFormula& formula);

}  // namespace satpaths
