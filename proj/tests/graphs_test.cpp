#include <gtest/gtest.h>

#include <set>

#include "satpaths/dimacs.hpp"
#include "satpaths/generator.hpp"
#include "satpaths/graphs.hpp"
#include "satpaths/reductions.hpp"
#include "support.hpp"

using namespace satpaths;
namespace ts = testing_support;

namespace {

IncidenceGraph graph_from_edges(std::size_t n, std::vector<NodePair> edges) {
  IncidenceGraph g;
  for (std::size_t i = 0; i < n; ++i) g.nodes.push_back("n" + std::to_string(i));
  for (auto [a, b] : edges) g.edges[{std::min(a, b), std::max(a, b)}] = 1;
  g.stage_tag = "test";
  return g;
}

bool is_clique(const IncidenceGraph& g, const std::vector<std::uint32_t>& nodes) {
  for (std::size_t a = 0; a < nodes.size(); ++a)
    for (std::size_t b = a + 1; b < nodes.size(); ++b)
      if (!g.multiplicity(nodes[a], nodes[b])) return false;
  return true;
}

// Largest clique among the nodes in `alive`, by subset enumeration.
std::size_t brute_clique_number(const IncidenceGraph& g, std::uint64_t alive) {
  std::size_t best = 0;
  for (std::uint64_t s = alive;; s = (s - 1) & alive) {
    if (static_cast<std::size_t>(__builtin_popcountll(s)) > best) {
      std::vector<std::uint32_t> nodes;
      for (std::uint32_t v = 0; v < 64; ++v)
        if ((s >> v) & 1u) nodes.push_back(v);
      if (is_clique(g, nodes)) best = nodes.size();
    }
    if (s == 0) break;
  }
  return best;
}

}  // namespace

TEST(IncidenceGraph, FourSatMultiplicities) {
  const auto f = parse_dimacs(std::string("p cnf 5 2\n1 2 -4 5 0\n-1 3 -4 -5 0\n"));
  const auto g = sat_incidence_graph(f);
  EXPECT_EQ(g.multiplicity(0, 3), 2u);
  EXPECT_EQ(g.multiplicity(1, 2), 0u);
  EXPECT_EQ(g.multiplicity(4, 0), 2u);
  EXPECT_EQ(g.num_nodes(), 5u);
}

TEST(IncidenceGraph, SingleClauseClique) {
  CnfFormula f(VariableTable::numbered(5));
  f.add_clause({{{0, false}, {1, true}, {2, false}, {3, false}, {4, true}}});
  const auto g = sat_incidence_graph(f);
  EXPECT_EQ(g.num_edges(), 10u);
  for (const auto& [e, label] : g.edges) EXPECT_EQ(label, 1u);
  EXPECT_EQ(sat_incidence_graph(CnfFormula{}).num_nodes(), 0u);
}

TEST(IncidenceGraph, QuboLabelsAreOne) {
  const auto f = generate_random_ksat({10, 5, 8, 1, false});
  for (auto v : kAllVariants) {
    const auto g = pbf_incidence_graph(run_path(f, v).qubo);
    for (const auto& [e, label] : g.edges) EXPECT_EQ(label, 1u);
  }
  EXPECT_EQ(pbf_incidence_graph(Pbf::constant(VariableTable::numbered(3), 2.0)).num_edges(), 0u);
}

TEST(IncidenceGraph, PuboMatchesFormulaWithoutSharedSupports) {
  // Clauses over distinct variable sets cannot cancel each other's top
  // monomial, so the two graphs share their edge sets.
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = generate_random_ksat({12, 4, 6, rng(), false});
    std::set<std::vector<Var>> supports;
    for (const auto& c : f.clauses()) {
      std::vector<Var> s;
      for (auto l : c.literals) s.push_back(l.variable);
      supports.insert(s);
    }
    const auto sat = sat_incidence_graph(f);
    const auto pubo = pbf_incidence_graph(sat_to_pubo(f));
    std::set<NodePair> a, b;
    for (const auto& [e, l] : sat.edges) a.insert(e);
    for (const auto& [e, l] : pubo.edges) b.insert(e);
    if (supports.size() == f.num_clauses()) {
      EXPECT_EQ(a, b);
    } else {
      EXPECT_TRUE(std::includes(a.begin(), a.end(), b.begin(), b.end()));
    }
  }
}

TEST(CliqueSort, DisjointTriangles) {
  const auto g = graph_from_edges(6, {{3, 4}, {4, 5}, {3, 5}, {0, 1}, {1, 2}, {0, 2}});
  const auto o = sort_nodes_by_clique(g);
  EXPECT_EQ(o.order, (std::vector<std::uint32_t>{0, 1, 2, 3, 4, 5}));
  EXPECT_EQ(o.cliques.size(), 2u);
  EXPECT_FALSE(o.approximate);
}

TEST(CliqueSort, LexicographicTieBreak) {
  // Maximum cliques {1,2,3} and {0,4,5}: the latter is lexicographically smaller.
  const auto g = graph_from_edges(6, {{1, 2}, {2, 3}, {1, 3}, {0, 4}, {4, 5}, {0, 5}, {0, 1}});
  const auto o = sort_nodes_by_clique(g);
  EXPECT_EQ(o.cliques.front(), (std::vector<std::uint32_t>{0, 4, 5}));
}

TEST(CliqueSort, Edgeless) {
  const auto o = sort_nodes_by_clique(graph_from_edges(4, {}));
  EXPECT_EQ(o.order, (std::vector<std::uint32_t>{0, 1, 2, 3}));
}

TEST(CliqueSort, ExtractsMaximumCliquesOnRandomGraphs) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 4 + rng() % 14;
    std::vector<NodePair> edges;
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint32_t b = a + 1; b < n; ++b)
        if (rng() % 100 < 45) edges.emplace_back(a, b);
    const auto g = graph_from_edges(n, edges);
    const auto o = sort_nodes_by_clique(g);
    auto sorted = o.order;
    std::sort(sorted.begin(), sorted.end());
    for (std::uint32_t i = 0; i < n; ++i) ASSERT_EQ(sorted[i], i);
    std::uint64_t alive = (std::uint64_t{1} << n) - 1;
    for (const auto& c : o.cliques) {
      ASSERT_TRUE(is_clique(g, c));
      ASSERT_EQ(c.size(), brute_clique_number(g, alive));
      for (auto v : c) alive &= ~(std::uint64_t{1} << v);
    }
  }
}

TEST(CliqueSort, SixSatMisCliques) {
  const auto f = generate_random_ksat({14, 6, 5, 3, false});
  const auto star = sort_nodes_by_clique(mis_incidence_graph(sat_to_mis(f)));
  ASSERT_EQ(star.cliques.size(), 5u);
  for (std::size_t c = 0; c < 5; ++c) {
    ASSERT_EQ(star.cliques[c].size(), 6u);
    EXPECT_EQ(star.cliques[c].front(), 6 * c);
  }
  const auto choi = sort_nodes_by_clique(mis_incidence_graph(sat_to_mis(textbook_reduce(f))));
  EXPECT_EQ(choi.order.size(), 60u);
  EXPECT_EQ(choi.cliques.size(), 20u);
  for (const auto& c : choi.cliques) EXPECT_EQ(c.size(), 3u);
}

TEST(CliqueSort, LargeGraphsNeedGreedy) {
  const auto f = generate_random_ksat({40, 6, 40, 1, false});
  const auto g = mis_incidence_graph(sat_to_mis(f));
  ASSERT_GT(g.num_nodes(), kExactCliqueNodeLimit);
  EXPECT_THROW(sort_nodes_by_clique(g), CliqueBudgetError);
  const auto o = sort_nodes_by_clique(g, true);
  EXPECT_TRUE(o.approximate);
  EXPECT_EQ(o.order.size(), g.num_nodes());
  for (const auto& c : o.cliques) EXPECT_TRUE(is_clique(g, c));
  EXPECT_NE(export_dot(g, nullptr, true).find("clique_order=greedy"), std::string::npos);
}

TEST(Diff, Identity) {
  const auto f = generate_random_ksat({8, 3, 6, 1, false});
  const auto g = sat_incidence_graph(f);
  const auto d = graph_diff(g, g);
  EXPECT_TRUE(d.new_nodes.empty());
  EXPECT_TRUE(d.new_edges.empty());
  EXPECT_EQ(d.carried_edges.size(), g.num_edges());
}

TEST(Diff, QuadratisationAddsAncillasAndPenaltyEdges) {
  const auto f = generate_random_ksat({8, 5, 4, 2, false});
  const auto run = run_path(f, PathVariant::DeMorgan);
  const auto d = graph_diff(pbf_incidence_graph(*run.pubo, "pubo"),
                            pbf_incidence_graph(run.qubo, "qubo"));
  std::set<std::string> ancillas;
  for (const auto& s : run.substitutions) ancillas.insert(run.qubo.variables().name(s.ancilla));
  EXPECT_EQ(d.new_nodes, ancillas);
  for (const auto& s : run.substitutions) {
    const auto& names = run.qubo.variables();
    for (Var x : {s.first, s.second}) {
      const auto a = names.name(x);
      const auto y = names.name(s.ancilla);
      EXPECT_TRUE(d.new_edges.count(a < y ? std::pair{a, y} : std::pair{y, a}));
    }
  }
}

TEST(Diff, MisGraphIsAllNew) {
  const auto f = generate_random_ksat({8, 3, 4, 2, false});
  const auto d = graph_diff(sat_incidence_graph(f), mis_incidence_graph(sat_to_mis(f)));
  EXPECT_EQ(d.new_nodes.size(), 12u);
  EXPECT_TRUE(d.carried_edges.empty());
}

TEST(Dot, Triangle) {
  auto g = graph_from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
  const auto dot = export_dot(g);
  EXPECT_EQ(dot,
            "graph \"test\" {\n  // provenance=formula\n  \"n0\";\n  \"n1\";\n  \"n2\";\n"
            "  \"n0\" -- \"n1\";\n  \"n0\" -- \"n2\";\n  \"n1\" -- \"n2\";\n}\n");
}

TEST(Dot, LabelsAndDiffColours) {
  auto g = graph_from_edges(3, {{0, 1}, {1, 2}});
  g.edges[{0, 1}] = 3;
  auto base = graph_from_edges(2, {{0, 1}});
  const auto d = graph_diff(base, g);
  const auto dot = export_dot(g, &d);
  EXPECT_NE(dot.find("\"n0\" -- \"n1\" [label=\"3\"];"), std::string::npos);
  EXPECT_NE(dot.find("\"n1\" -- \"n2\" [color=red];"), std::string::npos);
  EXPECT_NE(dot.find("\"n2\" [color=red];"), std::string::npos);
  EXPECT_NE(dot.find("\"n0\";"), std::string::npos);
}
