#include "satpaths/dimacs.hpp"

#include <cctype>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace satpaths {

DimacsError::DimacsError(Kind kind, std::size_t line, const std::string& what)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
      kind_(kind),
      line_(line) {}

namespace {

using Kind = DimacsError::Kind;

bool parse_int(std::string_view token, long long& value) {
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  return ec == std::errc() && ptr == token.data() + token.size();
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

}  // namespace

CnfFormula parse_dimacs(std::istream& in, std::vector<std::string>* warnings) {
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  long long n = 0, m = 0;
  CnfFormula formula;
  Clause current;
  std::size_t current_start = 0;
  long long clauses_read = 0;
  std::size_t dropped = 0;

  while (std::getline(in, line)) {
    ++lineno;
    auto tokens = split(line);
    if (tokens.empty() || tokens[0][0] == 'c') continue;
    // SATLIB files end with a "%" line followed by junk.
    if (tokens[0] == "%" && have_header) break;
    if (tokens[0] == "p") {
      if (have_header) throw DimacsError(Kind::MalformedHeader, lineno, "duplicate header");
      if (tokens.size() != 4 || tokens[1] != "cnf" || !parse_int(tokens[2], n) ||
          !parse_int(tokens[3], m) || n < 0 || m < 0) {
        throw DimacsError(Kind::MalformedHeader, lineno,
                          "expected 'p cnf <variables> <clauses>'");
      }
      have_header = true;
      formula = CnfFormula(VariableTable::numbered(static_cast<std::size_t>(n)));
      continue;
    }
    if (!have_header) {
      throw DimacsError(Kind::MissingHeader, lineno, "clause data before 'p cnf' header");
    }
    for (auto token : tokens) {
      long long lit = 0;
      if (!parse_int(token, lit)) {
        throw DimacsError(Kind::UnexpectedToken, lineno,
                          "unexpected token '" + std::string(token) + "'");
      }
      if (lit == 0) {
        if (current.literals.empty()) {
          throw DimacsError(Kind::EmptyClause, lineno, "empty clause");
        }
        ++clauses_read;
        if (clauses_read > m) {
          throw DimacsError(Kind::ClauseCountMismatch, lineno,
                            "more clauses than the header's " + std::to_string(m));
        }
        if (!formula.add_clause(std::move(current))) {
          ++dropped;
          if (warnings) {
            warnings->push_back("line " + std::to_string(current_start) +
                                ": dropped tautological clause");
          }
        }
        current = Clause{};
        continue;
      }
      const long long var = lit < 0 ? -lit : lit;
      if (var > n) {
        throw DimacsError(Kind::VariableOutOfRange, lineno,
                          "variable " + std::to_string(var) + " exceeds declared " +
                              std::to_string(n));
      }
      if (current.literals.empty()) current_start = lineno;
      current.literals.push_back({static_cast<Var>(var - 1), lit < 0});
    }
  }
  if (!have_header) throw DimacsError(Kind::MissingHeader, lineno, "missing 'p cnf' header");
  if (!current.literals.empty()) {
    throw DimacsError(Kind::UnterminatedClause, current_start, "clause not terminated by 0");
  }
  if (clauses_read != m) {
    throw DimacsError(Kind::ClauseCountMismatch, lineno,
                      "header declares " + std::to_string(m) + " clauses, found " +
                          std::to_string(clauses_read));
  }
  if (dropped > 0 && formula.num_clauses() == 0) {
    throw DimacsError(Kind::NoClausesLeft, 0, "every clause was tautological");
  }
  return formula;
}

CnfFormula parse_dimacs(const std::string& text, std::vector<std::string>* warnings) {
  std::istringstream in(text);
  return parse_dimacs(in, warnings);
}

void write_dimacs(std::ostream& out, const CnfFormula& formula) {
  out << "p cnf " << formula.num_variables() << ' ' << formula.num_clauses() << '\n';
  for (const auto& clause : formula.clauses()) {
    for (const auto& lit : clause.literals) {
      out << (lit.negated ? "-" : "") << (lit.variable + 1) << ' ';
    }
    out << "0\n";
  }
}

std::string write_dimacs(const CnfFormula& formula) {
  std::ostringstream out;
  write_dimacs(out, formula);
  return out.str();
}

}  // namespace satpaths
