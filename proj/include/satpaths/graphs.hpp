#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "satpaths/cnf.hpp"
#include "satpaths/mis.hpp"
#include "satpaths/pbf.hpp"

namespace satpaths {

enum class Provenance { Formula, Pbf, Mis };

const char* to_string(Provenance provenance);

/// Labeled simple graph standing in for a multigraph: the label of {a, b} is
/// the number of clauses (or monomials) containing both endpoints.
struct IncidenceGraph {
  std::vector<std::string> nodes;
  std::map<NodePair, std::uint32_t> edges;  // first < second, label >= 1
  Provenance provenance = Provenance::Formula;
  std::string stage_tag;

  std::size_t num_nodes() const { return nodes.size(); }
  std::size_t num_edges() const { return edges.size(); }
  std::uint32_t multiplicity(std::uint32_t a, std::uint32_t b) const;
  std::optional<std::uint32_t> find(const std::string& name) const;
};

IncidenceGraph sat_incidence_graph(const CnfFormula& formula, std::string stage_tag = "sat");

/// Linear and constant terms add nothing; zero coefficients are never stored.
IncidenceGraph pbf_incidence_graph(const Pbf& f, std::string stage_tag = "pbf");

/// The independent-set graph itself, nodes named after their literal
/// occurrence.
IncidenceGraph mis_incidence_graph(const MisInstance& g, std::string stage_tag = "mis");

inline constexpr std::size_t kExactCliqueNodeLimit = 200;

class CliqueBudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CliqueOrder {
  std::vector<std::uint32_t> order;                 // permutation of all nodes
  std::vector<std::vector<std::uint32_t>> cliques;  // in extraction order
  bool approximate = false;                         // greedy cliques were used
};

/// Repeatedly removes a maximum clique and appends its nodes (ascending).
/// Among maximum cliques the one with the lexicographically smallest node
/// sequence is taken. Exact search is limited to kExactCliqueNodeLimit nodes;
/// larger graphs throw CliqueBudgetError unless `greedy_fallback` is set, in
/// which case greedy cliques are used and the result is marked approximate.
CliqueOrder sort_nodes_by_clique(const IncidenceGraph& g, bool greedy_fallback = false);

struct GraphDiff {
  using NamePair = std::pair<std::string, std::string>;  // first < second

  std::string base_stage;
  std::string new_stage;
  std::set<std::string> new_nodes;
  std::set<NamePair> new_edges;
  std::set<NamePair> carried_edges;
};

/// Nodes are matched by name. An independent-set graph shares nothing with
/// a non-independent-set predecessor, so everything in it counts as new.
GraphDiff graph_diff(const IncidenceGraph& base, const IncidenceGraph& next);

/// Undirected DOT with nodes in clique order, edge labels for multiplicity
/// above 1 and color=red on elements that `diff` marks as new.
std::string export_dot(const IncidenceGraph& g, const GraphDiff* diff = nullptr,
                       bool greedy_fallback = false);

}  // namespace satpaths
