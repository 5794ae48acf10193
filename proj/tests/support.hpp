#pragma once

// Test-side reference implementations. They share no code with the library
// beyond the data types, so library results can be checked against them.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "satpaths/cnf.hpp"
#include "satpaths/mis.hpp"
#include "satpaths/pbf.hpp"

namespace testing_support {

using namespace satpaths;

inline std::vector<bool> unpack(std::uint64_t bits, std::size_t n) {
  std::vector<bool> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = (bits >> i) & 1u;
  return x;
}

inline bool clause_holds(const Clause& c, const std::vector<bool>& x) {
  for (const auto& lit : c.literals) {
    if (x[lit.variable] != lit.negated) return true;
  }
  return false;
}

inline std::size_t satisfied_count(const CnfFormula& f, const std::vector<bool>& x) {
  std::size_t n = 0;
  for (const auto& c : f.clauses()) n += clause_holds(c, x);
  return n;
}

/// Plain enumeration over the whole variable table.
inline bool brute_satisfiable(const CnfFormula& f) {
  const auto n = f.num_variables();
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
    if (satisfied_count(f, unpack(b, n)) == f.num_clauses()) return true;
  }
  return false;
}

/// Term-by-term evaluation.
inline double direct_value(const Pbf& f, const std::vector<bool>& x) {
  double v = 0.0;
  for (const auto& [support, coeff] : f.terms()) {
    bool on = true;
    for (auto i : support) on = on && x[i];
    if (on) v += coeff;
  }
  return v;
}

inline std::size_t brute_mis(const MisInstance& g) {
  const auto n = g.num_nodes();
  std::size_t best = 0;
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
    bool independent = true;
    for (const auto& [u, v] : g.edges) {
      if (((b >> u) & 1u) && ((b >> v) & 1u)) {
        independent = false;
        break;
      }
    }
    if (independent) best = std::max<std::size_t>(best, __builtin_popcountll(b));
  }
  return best;
}

/// Clauses of size 1..max_k over n variables, distinct variables per clause.
inline CnfFormula random_formula(std::mt19937_64& rng, std::size_t n, std::size_t m,
                                 std::size_t min_k, std::size_t max_k) {
  CnfFormula f(VariableTable::numbered(n));
  std::uniform_int_distribution<std::size_t> size(min_k, std::min(max_k, n));
  std::bernoulli_distribution coin(0.5);
  while (f.num_clauses() < m) {
    std::vector<Var> vars(n);
    for (std::size_t i = 0; i < n; ++i) vars[i] = static_cast<Var>(i);
    std::shuffle(vars.begin(), vars.end(), rng);
    Clause c;
    const auto k = size(rng);
    for (std::size_t i = 0; i < k; ++i) c.literals.push_back({vars[i], coin(rng)});
    f.add_clause(std::move(c));
  }
  return f;
}

/// Random multilinear polynomial in min sense with small integer
/// coefficients and at least one term of degree >= 3.
inline Pbf random_pbf(std::mt19937_64& rng, std::size_t n, std::size_t terms,
                      std::size_t max_degree) {
  Pbf f(VariableTable::numbered(n), Sense::Min);
  std::uniform_int_distribution<int> coeff(-4, 4);
  std::uniform_int_distribution<std::size_t> deg(1, std::min(max_degree, n));
  std::vector<Var> vars(n);
  for (std::size_t i = 0; i < n; ++i) vars[i] = static_cast<Var>(i);
  for (std::size_t t = 0; t < terms || f.degree() < 3; ++t) {
    std::shuffle(vars.begin(), vars.end(), rng);
    const auto d = t == 0 ? std::min<std::size_t>(3, n) : deg(rng);
    Support s(vars.begin(), vars.begin() + static_cast<long>(d));
    int c = coeff(rng);
    f.add_term(std::move(s), c == 0 ? 1 : c);
  }
  return f;
}

}  // namespace testing_support
