#include "satpaths/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numeric>
#include <unordered_map>

namespace satpaths {

namespace {

constexpr std::size_t kHardBitLimit = 30;

void require_bits(std::size_t bits, OracleBudget budget, const std::string& what) {
  if (bits > budget.max_total_bits || bits > kHardBitLimit) {
    throw BudgetExceeded(what + " needs " + std::to_string(bits) + " bits, budget is " +
                         std::to_string(std::min(budget.max_total_bits, kHardBitLimit)));
  }
}

using MaskedTerms = std::vector<std::pair<std::uint64_t, double>>;

// Value of sum_S c_S prod_{i in S} x_i at every x in {0,1}^bits, via the
// subset-sum (zeta) transform: f(x) = sum over S subset of x of c_S.
std::vector<double> evaluate_everywhere(const MaskedTerms& terms, std::size_t bits) {
  std::vector<double> values(std::size_t{1} << bits, 0.0);
  for (const auto& [mask, coeff] : terms) values[mask] += coeff;
  for (std::size_t i = 0; i < bits; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    for (std::uint64_t x = 0; x < values.size(); ++x)
      if (x & bit) values[x] += values[x ^ bit];
  }
  return values;
}

bool close(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

struct CompiledClause {
  std::uint64_t positive = 0;
  std::uint64_t negative = 0;
  bool satisfied(std::uint64_t x) const { return (x & positive) || (~x & negative); }
};

// Clauses over a packed bit space; `bit_of[v]` is the bit of formula var v.
std::vector<CompiledClause> compile(const std::vector<Clause>& clauses,
                                    const std::unordered_map<Var, std::size_t>& bit_of) {
  std::vector<CompiledClause> out;
  out.reserve(clauses.size());
  for (const auto& c : clauses) {
    CompiledClause cc;
    for (const auto& lit : c.literals) {
      const auto bit = std::uint64_t{1} << bit_of.at(lit.variable);
      (lit.negated ? cc.negative : cc.positive) |= bit;
    }
    out.push_back(cc);
  }
  return out;
}

std::unordered_map<Var, std::size_t> bit_map(const std::vector<Var>& vars) {
  std::unordered_map<Var, std::size_t> m;
  for (std::size_t i = 0; i < vars.size(); ++i) m.emplace(vars[i], i);
  return m;
}

std::vector<bool> unpack(std::uint64_t x, const std::vector<Var>& vars, std::size_t table_size) {
  std::vector<bool> out(table_size, false);
  for (std::size_t i = 0; i < vars.size(); ++i) out[vars[i]] = (x >> i) & 1;
  return out;
}

bool any_model(const std::vector<CompiledClause>& clauses, std::size_t bits) {
  const std::uint64_t end = std::uint64_t{1} << bits;
  for (std::uint64_t x = 0; x < end; ++x) {
    if (std::all_of(clauses.begin(), clauses.end(),
                    [x](const CompiledClause& c) { return c.satisfied(x); })) {
      return true;
    }
  }
  return false;
}

}  // namespace

SolutionSet sat_solutions(const CnfFormula& formula, OracleBudget budget) {
  SolutionSet out;
  out.variables = formula.used_variables();
  require_bits(out.variables.size(), budget, "SAT enumeration");
  const auto clauses = compile(formula.clauses(), bit_map(out.variables));
  const std::uint64_t end = std::uint64_t{1} << out.variables.size();
  for (std::uint64_t x = 0; x < end; ++x) {
    if (std::all_of(clauses.begin(), clauses.end(),
                    [x](const CompiledClause& c) { return c.satisfied(x); })) {
      out.assignments.push_back(x);
    }
  }
  return out;
}

bool is_satisfiable(const CnfFormula& formula, OracleBudget budget) {
  const auto vars = formula.used_variables();
  require_bits(vars.size(), budget, "SAT enumeration");
  return any_model(compile(formula.clauses(), bit_map(vars)), vars.size());
}

bool is_satisfiable_given(const CnfFormula& formula, std::span<const Var> core,
                          OracleBudget budget) {
  std::vector<Var> core_vars(core.begin(), core.end());
  std::sort(core_vars.begin(), core_vars.end());
  core_vars.erase(std::unique(core_vars.begin(), core_vars.end()), core_vars.end());
  require_bits(core_vars.size(), budget, "core enumeration");
  const auto core_bit = bit_map(core_vars);
  const std::size_t n = formula.num_variables();

  // Split each clause into its core part and its residual literals.
  struct Split {
    CompiledClause core;
    std::vector<Literal> rest;
  };
  std::vector<Split> splits;
  for (const auto& c : formula.clauses()) {
    Split s;
    for (const auto& lit : c.literals) {
      auto it = core_bit.find(lit.variable);
      if (it == core_bit.end()) {
        s.rest.push_back(lit);
      } else {
        (lit.negated ? s.core.negative : s.core.positive) |= std::uint64_t{1} << it->second;
      }
    }
    splits.push_back(std::move(s));
  }

  std::vector<Var> parent(n);
  auto find = [&](Var v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };

  const std::uint64_t end = std::uint64_t{1} << core_vars.size();
  for (std::uint64_t x = 0; x < end; ++x) {
    std::vector<const Split*> residual;
    bool dead = false;
    for (const auto& s : splits) {
      if (s.core.satisfied(x)) continue;
      if (s.rest.empty()) {
        dead = true;
        break;
      }
      residual.push_back(&s);
    }
    if (dead) continue;

    std::iota(parent.begin(), parent.end(), Var{0});
    for (const auto* s : residual)
      for (const auto& lit : s->rest) parent[find(lit.variable)] = find(s->rest[0].variable);

    std::unordered_map<Var, std::vector<Clause>> components;
    for (const auto* s : residual) components[find(s->rest[0].variable)].push_back({s->rest});

    bool all_sat = true;
    for (const auto& [root, clauses] : components) {
      std::vector<Var> vars;
      for (const auto& c : clauses)
        for (const auto& lit : c.literals) vars.push_back(lit.variable);
      std::sort(vars.begin(), vars.end());
      vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
      require_bits(vars.size(), budget, "component enumeration");
      if (!any_model(compile(clauses, bit_map(vars)), vars.size())) {
        all_sat = false;
        break;
      }
    }
    if (all_sat) return true;
  }
  return false;
}

Extrema pbf_extrema(const Pbf& f, OracleBudget budget) {
  const std::size_t bits = f.num_variables();
  require_bits(bits, budget, "PBF enumeration");
  MaskedTerms terms;
  for (const auto& [support, coeff] : f.terms()) {
    std::uint64_t mask = 0;
    for (Var v : support) mask |= std::uint64_t{1} << v;
    terms.emplace_back(mask, coeff);
  }
  const auto values = evaluate_everywhere(terms, bits);
  Extrema e;
  e.min_value = *std::min_element(values.begin(), values.end());
  e.max_value = *std::max_element(values.begin(), values.end());
  for (std::uint64_t x = 0; x < values.size(); ++x) {
    if (close(values[x], e.min_value)) e.argmin.push_back(x);
    if (close(values[x], e.max_value)) e.argmax.push_back(x);
  }
  return e;
}

std::size_t max_independent_set_size(const MisInstance& g, OracleBudget budget) {
  const std::size_t n = g.num_nodes();
  require_bits(n, budget, "independent-set search");
  std::vector<std::uint64_t> adj(n, 0);
  for (const auto& [a, b] : g.edges) {
    adj[a] |= std::uint64_t{1} << b;
    adj[b] |= std::uint64_t{1} << a;
  }
  std::size_t best = 0;
  std::function<void(std::uint64_t, std::size_t)> branch = [&](std::uint64_t cand,
                                                               std::size_t size) {
    if (size + static_cast<std::size_t>(std::popcount(cand)) <= best) return;
    if (cand == 0) {
      best = size;
      return;
    }
    const auto v = static_cast<std::size_t>(std::countr_zero(cand));
    const std::uint64_t bit = std::uint64_t{1} << v;
    branch(cand & ~adj[v] & ~bit, size + 1);
    branch(cand & ~bit, size);
  };
  branch(n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1, 0);
  return best;
}

CheckResult verify_quadratisation(const Pbf& original, const Pbf& reduced,
                                  std::span<const Var> ancillas, OracleBudget budget) {
  std::vector<bool> is_ancilla(reduced.num_variables(), false);
  for (Var a : ancillas) is_ancilla.at(a) = true;

  // x bits: original variables that occur anywhere; y bits: ancillas.
  std::vector<Var> x_vars = original.occurring_variables();
  std::vector<std::size_t> reduced_bit(reduced.num_variables(), 0);
  std::vector<Var> y_vars;
  for (Var v = 0; v < reduced.num_variables(); ++v) {
    if (is_ancilla[v]) {
      y_vars.push_back(v);
      continue;
    }
    auto o = original.variables().find(reduced.variables().name(v));
    if (!o) {
      throw std::invalid_argument("variable '" + reduced.variables().name(v) +
                                  "' is neither in the original nor an ancilla");
    }
    if (!std::binary_search(x_vars.begin(), x_vars.end(), *o)) {
      x_vars.insert(std::upper_bound(x_vars.begin(), x_vars.end(), *o), *o);
    }
  }
  const std::size_t nx = x_vars.size();
  const std::size_t ny = y_vars.size();
  require_bits(nx + ny, budget, "quadratisation check");

  const auto x_bit = bit_map(x_vars);
  for (Var v = 0; v < reduced.num_variables(); ++v) {
    if (!is_ancilla[v]) reduced_bit[v] = x_bit.at(*original.variables().find(reduced.variables().name(v)));
  }
  for (std::size_t i = 0; i < ny; ++i) reduced_bit[y_vars[i]] = nx + i;

  MaskedTerms orig_terms;
  for (const auto& [support, coeff] : original.terms()) {
    std::uint64_t mask = 0;
    for (Var v : support) mask |= std::uint64_t{1} << x_bit.at(v);
    orig_terms.emplace_back(mask, coeff);
  }
  MaskedTerms red_terms;
  for (const auto& [support, coeff] : reduced.terms()) {
    std::uint64_t mask = 0;
    for (Var v : support) mask |= std::uint64_t{1} << reduced_bit[v];
    red_terms.emplace_back(mask, coeff);
  }
  const auto orig_values = evaluate_everywhere(orig_terms, nx);
  const auto red_values = evaluate_everywhere(red_terms, nx + ny);

  const std::uint64_t x_end = std::uint64_t{1} << nx;
  const std::uint64_t y_end = std::uint64_t{1} << ny;
  for (std::uint64_t x = 0; x < x_end; ++x) {
    double best = red_values[x];
    for (std::uint64_t y = 1; y < y_end; ++y) best = std::min(best, red_values[x | (y << nx)]);
    if (!close(best, orig_values[x])) {
      CheckResult r;
      r.passed = false;
      r.witness = unpack(x, x_vars, original.num_variables());
      r.detail = "min over ancillas is " + std::to_string(best) + ", original is " +
                 std::to_string(orig_values[x]);
      return r;
    }
  }
  return {true, std::nullopt,
          "checked " + std::to_string(x_end) + " points x " + std::to_string(y_end) +
              " ancilla assignments"};
}

CheckResult verify_mis_correspondence(const CnfFormula& formula, const MisInstance& g,
                                      OracleBudget budget) {
  const bool sat = is_satisfiable(formula, budget);
  const std::size_t mis = max_independent_set_size(g, budget);
  const std::size_t m = formula.num_clauses();
  CheckResult r;
  r.passed = (mis == m) == sat && mis <= m;
  r.detail = std::string(sat ? "satisfiable" : "unsatisfiable") + ", maximum independent set " +
             std::to_string(mis) + ", clauses " + std::to_string(m);
  return r;
}

CheckResult verify_mis_qubo(const MisInstance& g, const Pbf& qubo, OracleBudget budget) {
  if (qubo.num_variables() != g.num_nodes()) {
    throw std::invalid_argument("QUBO and graph disagree on node count");
  }
  const std::size_t mis = max_independent_set_size(g, budget);
  const auto extrema = pbf_extrema(qubo, budget);
  CheckResult r;
  r.detail = "maximum " + std::to_string(extrema.max_value) + ", independent set size " +
             std::to_string(mis);
  if (!close(extrema.max_value, static_cast<double>(mis))) r.passed = false;
  std::vector<Var> all(g.num_nodes());
  std::iota(all.begin(), all.end(), Var{0});
  for (auto x : extrema.argmax) {
    const bool independent = std::none_of(g.edges.begin(), g.edges.end(), [x](const NodePair& e) {
      return ((x >> e.first) & 1) && ((x >> e.second) & 1);
    });
    if (!independent || static_cast<std::size_t>(std::popcount(x)) != mis) {
      r.passed = false;
      r.witness = unpack(x, all, g.num_nodes());
      r.detail += "; maximiser is not a maximum independent set";
      break;
    }
  }
  return r;
}

CheckResult verify_counting(const CnfFormula& formula, const Pbf& pubo, OracleBudget budget) {
  std::vector<Var> vars = formula.used_variables();
  std::vector<Var> pubo_to_formula(pubo.num_variables());
  for (Var v = 0; v < pubo.num_variables(); ++v) {
    auto f = formula.variables().find(pubo.variables().name(v));
    if (!f) {
      throw std::invalid_argument("polynomial variable '" + pubo.variables().name(v) +
                                  "' is not a formula variable");
    }
    pubo_to_formula[v] = *f;
  }
  for (Var v : pubo.occurring_variables()) {
    const Var fv = pubo_to_formula[v];
    if (!std::binary_search(vars.begin(), vars.end(), fv)) {
      vars.insert(std::upper_bound(vars.begin(), vars.end(), fv), fv);
    }
  }
  require_bits(vars.size(), budget, "counting check");
  const auto bit_of = bit_map(vars);
  const auto clauses = compile(formula.clauses(), bit_of);

  MaskedTerms terms;
  for (const auto& [support, coeff] : pubo.terms()) {
    std::uint64_t mask = 0;
    for (Var v : support) mask |= std::uint64_t{1} << bit_of.at(pubo_to_formula[v]);
    terms.emplace_back(mask, coeff);
  }
  const auto values = evaluate_everywhere(terms, vars.size());
  const double m = static_cast<double>(formula.num_clauses());
  for (std::uint64_t x = 0; x < values.size(); ++x) {
    const auto sat = static_cast<double>(std::count_if(
        clauses.begin(), clauses.end(), [x](const CompiledClause& c) { return c.satisfied(x); }));
    const double expected = pubo.sense() == Sense::Max ? sat : m - sat;
    if (!close(values[x], expected)) {
      CheckResult r;
      r.passed = false;
      r.witness = unpack(x, vars, formula.num_variables());
      r.detail = "polynomial gives " + std::to_string(values[x]) + ", expected " +
                 std::to_string(expected);
      return r;
    }
  }
  return {true, std::nullopt, "checked " + std::to_string(values.size()) + " assignments"};
}

}  // namespace satpaths
