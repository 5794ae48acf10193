#include "satpaths/reductions.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <stdexcept>

namespace satpaths {

const char* to_string(PathVariant variant) {
  switch (variant) {
    case PathVariant::Choi: return "choi";
    case PathVariant::ChoiStar: return "choistar";
    case PathVariant::Dobrynin: return "dobrynin";
    case PathVariant::DeMorgan: return "demorgan";
  }
  return "?";
}

std::optional<PathVariant> parse_variant(std::string_view text) {
  for (auto v : kAllVariants)
    if (text == to_string(v)) return v;
  return std::nullopt;
}

bool uses_mis(PathVariant variant) {
  return variant == PathVariant::Choi || variant == PathVariant::ChoiStar;
}

bool uses_textbook(PathVariant variant) {
  return variant == PathVariant::Choi || variant == PathVariant::Dobrynin;
}

CnfFormula textbook_reduce(const CnfFormula& formula, std::size_t target) {
  if (target < 3) throw std::invalid_argument("textbook target size must be at least 3");
  CnfFormula out(formula.variables());
  std::vector<Clause> split_off;
  for (const auto& clause : formula.clauses()) {
    if (clause.size() <= target) {
      out.append_raw(clause);
      continue;
    }
    auto lits = clause.literals;
    split_off.clear();
    while (lits.size() > target) {
      const Var z = out.add_fresh_variable("t");
      Clause tail{{Literal{z, true}}};
      tail.literals.insert(tail.literals.end(), lits.end() - static_cast<long>(target - 1),
                           lits.end());
      lits.resize(lits.size() - (target - 1));
      lits.push_back({z, false});
      split_off.push_back(std::move(tail));
    }
    out.append_raw(Clause{std::move(lits)});
    for (auto it = split_off.rbegin(); it != split_off.rend(); ++it) out.append_raw(*it);
  }
  if (out.max_clause_size() <= target && formula.declared_k()) {
    out.set_declared_k(std::min(*formula.declared_k(), target));
  }
  return out;
}

MisInstance sat_to_mis(const CnfFormula& formula, double edge_penalty) {
  MisInstance g;
  g.edge_penalty = edge_penalty;
  const auto& vars = formula.variables();
  // occurrences[v][polarity] -> node ids
  std::vector<std::array<std::vector<std::uint32_t>, 2>> occurrences(vars.size());

  const auto& clauses = formula.clauses();
  for (std::size_t c = 0; c < clauses.size(); ++c) {
    const auto first = static_cast<std::uint32_t>(g.nodes.size());
    const auto& lits = clauses[c].literals;
    for (std::size_t p = 0; p < lits.size(); ++p) {
      const auto id = static_cast<std::uint32_t>(g.nodes.size());
      g.nodes.push_back({c, p, lits[p],
                         "c" + std::to_string(c) + "_p" + std::to_string(p) + "_" +
                             literal_name(vars, lits[p])});
      occurrences[lits[p].variable][lits[p].negated ? 1 : 0].push_back(id);
      for (auto other = first; other < id; ++other) g.edges.emplace_back(other, id);
    }
  }
  for (const auto& occ : occurrences) {
    for (auto a : occ[0]) {
      for (auto b : occ[1]) {
        if (g.nodes[a].clause == g.nodes[b].clause) continue;
        g.edges.emplace_back(std::min(a, b), std::max(a, b));
      }
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  g.node_weights.assign(g.nodes.size(), 1.0);
  return g;
}

Pbf mis_to_qubo(const MisInstance& graph) {
  if (!(graph.edge_penalty > 1.0)) {
    throw std::invalid_argument("edge penalty J must exceed 1 (node weights are 1)");
  }
  VariableTable vars;
  for (const auto& node : graph.nodes) vars.add(node.name);
  Pbf q(std::move(vars), Sense::Max);
  for (std::uint32_t i = 0; i < graph.nodes.size(); ++i) {
    q.add_term({i}, graph.node_weights.empty() ? 1.0 : graph.node_weights[i]);
  }
  for (const auto& [a, b] : graph.edges) q.add_term({a, b}, -graph.edge_penalty);
  return q;
}

Pbf clause_violation(const VariableTable& vars, const Clause& clause) {
  Pbf f = Pbf::constant(vars, 1.0, Sense::Min);
  for (const auto& lit : clause.literals) {
    f = pbf_multiply_factor(f, {lit.variable, !lit.negated});
  }
  return f;
}

Pbf sat_to_pubo(const CnfFormula& formula, Sense sense) {
  Pbf sum(formula.variables(), Sense::Min);
  // Expands each violation product locally rather than through Pbf copies,
  // which would duplicate the variable table once per clause.
  std::vector<std::pair<Support, double>> terms, next;
  for (const auto& clause : formula.clauses()) {
    terms.assign(1, {Support{}, 1.0});
    for (const auto& lit : clause.literals) {
      next.clear();
      for (const auto& [support, coeff] : terms) {
        Support with = support;
        with.push_back(lit.variable);
        if (lit.negated) {
          next.emplace_back(std::move(with), coeff);  // x_v
        } else {
          next.emplace_back(support, coeff);  // 1 - x_v
          next.emplace_back(std::move(with), -coeff);
        }
      }
      terms.swap(next);
    }
    for (auto& [support, coeff] : terms) sum.add_term(std::move(support), coeff);
  }
  if (sense == Sense::Min) return sum;
  Pbf count = sum.scaled(-1.0);
  count.add_term({}, static_cast<double>(formula.num_clauses()));
  count.set_sense(Sense::Max);
  return count;
}

std::size_t nuesslein_ancillas(std::size_t k) {
  if (k < 2) throw std::invalid_argument("nuesslein_size needs k >= 2");
  if (k == 2) return 0;
  if (k == 3) return 1;
  // ceil(log2(k + 1)) == bit_width(k) for k >= 1.
  const auto bits = static_cast<std::size_t>(std::bit_width(k));
  return bits + nuesslein_ancillas(bits);
}

std::size_t nuesslein_size(std::size_t n, std::size_t m, std::size_t k) {
  return n + m * nuesslein_ancillas(k);
}

PathRun run_path(const CnfFormula& formula, PathVariant variant, const PathOptions& options) {
  PathRun run;
  run.variant = variant;
  const auto start = std::chrono::steady_clock::now();

  const CnfFormula* source = &formula;
  if (uses_textbook(variant)) {
    run.reduced = textbook_reduce(formula, options.textbook_target);
    source = &*run.reduced;
  }
  if (uses_mis(variant)) {
    run.mis = sat_to_mis(*source, options.mis_edge_penalty);
    run.qubo = mis_to_qubo(*run.mis);
  } else {
    run.pubo = sat_to_pubo(*source, Sense::Min);
    auto quad = quadratise(*run.pubo, options.percentile, options.penalty);
    run.qubo = std::move(quad.result);
    run.substitutions = std::move(quad.substitutions);
  }

  run.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return run;
}

}  // namespace satpaths
