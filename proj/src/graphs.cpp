#include "satpaths/graphs.hpp"

#include <algorithm>
#include <bitset>
#include <sstream>

namespace satpaths {

const char* to_string(Provenance provenance) {
  switch (provenance) {
    case Provenance::Formula: return "formula";
    case Provenance::Pbf: return "pbf";
    case Provenance::Mis: return "mis";
  }
  return "?";
}

std::uint32_t IncidenceGraph::multiplicity(std::uint32_t a, std::uint32_t b) const {
  if (a > b) std::swap(a, b);
  auto it = edges.find({a, b});
  return it == edges.end() ? 0 : it->second;
}

std::optional<std::uint32_t> IncidenceGraph::find(const std::string& name) const {
  auto it = std::find(nodes.begin(), nodes.end(), name);
  if (it == nodes.end()) return std::nullopt;
  return static_cast<std::uint32_t>(it - nodes.begin());
}

namespace {

template <typename Range>
void add_clique_edges(IncidenceGraph& g, const Range& vars) {
  for (std::size_t a = 0; a < vars.size(); ++a) {
    for (std::size_t b = a + 1; b < vars.size(); ++b) {
      const auto u = static_cast<std::uint32_t>(std::min(vars[a], vars[b]));
      const auto v = static_cast<std::uint32_t>(std::max(vars[a], vars[b]));
      if (u != v) ++g.edges[{u, v}];
    }
  }
}

}  // namespace

IncidenceGraph sat_incidence_graph(const CnfFormula& formula, std::string stage_tag) {
  IncidenceGraph g;
  g.nodes = formula.variables().names();
  g.provenance = Provenance::Formula;
  g.stage_tag = std::move(stage_tag);
  std::vector<Var> vars;
  for (const auto& clause : formula.clauses()) {
    vars.clear();
    for (const auto& lit : clause.literals) vars.push_back(lit.variable);
    add_clique_edges(g, vars);
  }
  return g;
}

IncidenceGraph pbf_incidence_graph(const Pbf& f, std::string stage_tag) {
  IncidenceGraph g;
  g.nodes = f.variables().names();
  g.provenance = Provenance::Pbf;
  g.stage_tag = std::move(stage_tag);
  for (const auto& [support, coeff] : f.terms()) add_clique_edges(g, support);
  return g;
}

IncidenceGraph mis_incidence_graph(const MisInstance& mis, std::string stage_tag) {
  IncidenceGraph g;
  g.provenance = Provenance::Mis;
  g.stage_tag = std::move(stage_tag);
  for (const auto& node : mis.nodes) g.nodes.push_back(node.name);
  for (const auto& e : mis.edges) g.edges[e] = 1;
  return g;
}

namespace {

using Bits = std::bitset<256>;
static_assert(kExactCliqueNodeLimit <= 256);

// Branch and bound over ascending node sequences with a greedy colouring
// bound. Sequences are visited in lexicographic pre-order and only strictly
// larger cliques replace the incumbent, so the first maximum clique found is
// the lexicographically smallest one.
class ExactMaxClique {
 public:
  explicit ExactMaxClique(const std::vector<Bits>& adj) : adj_(adj) {}

  std::vector<std::uint32_t> find(const Bits& candidates) {
    best_.clear();
    current_.clear();
    expand(candidates);
    return best_;
  }

 private:
  std::size_t colour_bound(Bits p) const {
    std::size_t colours = 0;
    while (p.any()) {
      ++colours;
      Bits q = p;
      while (q.any()) {
        const auto v = q._Find_first();
        p.reset(v);
        q.reset(v);
        q &= ~adj_[v];
      }
    }
    return colours;
  }

  void expand(Bits p) {
    if (current_.size() > best_.size()) best_ = current_;
    if (p.none() || current_.size() + colour_bound(p) <= best_.size()) return;
    for (auto v = p._Find_first(); v < p.size(); v = p._Find_next(v)) {
      if (current_.size() + p.count() <= best_.size()) return;
      p.reset(v);
      current_.push_back(static_cast<std::uint32_t>(v));
      expand(p & adj_[v]);
      current_.pop_back();
    }
  }

  const std::vector<Bits>& adj_;
  std::vector<std::uint32_t> best_;
  std::vector<std::uint32_t> current_;
};

CliqueOrder exact_clique_order(const IncidenceGraph& g) {
  std::vector<Bits> adj(g.num_nodes());
  for (const auto& [e, label] : g.edges) {
    adj[e.first].set(e.second);
    adj[e.second].set(e.first);
  }
  Bits remaining;
  for (std::size_t v = 0; v < g.num_nodes(); ++v) remaining.set(v);

  CliqueOrder out;
  ExactMaxClique search(adj);
  while (remaining.any()) {
    auto clique = search.find(remaining);
    for (auto v : clique) {
      remaining.reset(v);
      out.order.push_back(v);
    }
    out.cliques.push_back(std::move(clique));
  }
  return out;
}

// Seed with the highest-degree remaining node, then grow by the candidate
// with the most neighbours among the remaining candidates.
CliqueOrder greedy_clique_order(const IncidenceGraph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (const auto& [e, label] : g.edges) {
    adj[e.first].push_back(e.second);
    adj[e.second].push_back(e.first);
  }
  std::vector<char> alive(n, 1);
  std::vector<std::size_t> degree(n);
  for (std::size_t v = 0; v < n; ++v) degree[v] = adj[v].size();

  CliqueOrder out;
  out.approximate = true;
  std::vector<char> in_candidates(n, 0);
  for (std::size_t left = n; left > 0;) {
    std::uint32_t seed = 0;
    bool have_seed = false;
    for (std::uint32_t v = 0; v < n; ++v) {
      if (alive[v] && (!have_seed || degree[v] > degree[seed])) {
        seed = v;
        have_seed = true;
      }
    }
    std::vector<std::uint32_t> clique{seed};
    std::vector<std::uint32_t> candidates;
    for (auto u : adj[seed])
      if (alive[u]) candidates.push_back(u);
    while (!candidates.empty()) {
      std::fill(in_candidates.begin(), in_candidates.end(), 0);
      for (auto c : candidates) in_candidates[c] = 1;
      std::uint32_t pick = candidates.front();
      std::size_t pick_score = 0;
      bool first = true;
      for (auto c : candidates) {
        std::size_t score = 0;
        for (auto u : adj[c]) score += in_candidates[u];
        if (first || score > pick_score || (score == pick_score && c < pick)) {
          pick = c;
          pick_score = score;
          first = false;
        }
      }
      clique.push_back(pick);
      std::vector<std::uint32_t> next;
      for (auto u : adj[pick])
        if (in_candidates[u] && u != pick) next.push_back(u);
      candidates = std::move(next);
    }
    std::sort(clique.begin(), clique.end());
    for (auto v : clique) {
      alive[v] = 0;
      --left;
      for (auto u : adj[v]) --degree[u];
      out.order.push_back(v);
    }
    out.cliques.push_back(std::move(clique));
  }
  return out;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

GraphDiff::NamePair name_pair(const IncidenceGraph& g, const NodePair& e) {
  const auto& a = g.nodes[e.first];
  const auto& b = g.nodes[e.second];
  return a < b ? GraphDiff::NamePair{a, b} : GraphDiff::NamePair{b, a};
}

}  // namespace

CliqueOrder sort_nodes_by_clique(const IncidenceGraph& g, bool greedy_fallback) {
  if (g.num_nodes() > kExactCliqueNodeLimit) {
    if (!greedy_fallback) {
      throw CliqueBudgetError("graph '" + g.stage_tag + "' has " +
                              std::to_string(g.num_nodes()) +
                              " nodes; exact clique ordering is limited to " +
                              std::to_string(kExactCliqueNodeLimit) +
                              ", enable the greedy fallback (--greedy) for larger graphs");
    }
    return greedy_clique_order(g);
  }
  return exact_clique_order(g);
}

GraphDiff graph_diff(const IncidenceGraph& base, const IncidenceGraph& next) {
  GraphDiff diff;
  diff.base_stage = base.stage_tag;
  diff.new_stage = next.stage_tag;
  const bool fresh = next.provenance == Provenance::Mis && base.provenance != Provenance::Mis;

  std::set<std::string> base_nodes(base.nodes.begin(), base.nodes.end());
  for (const auto& name : next.nodes) {
    if (fresh || !base_nodes.count(name)) diff.new_nodes.insert(name);
  }
  std::set<GraphDiff::NamePair> base_edges;
  for (const auto& [e, label] : base.edges) base_edges.insert(name_pair(base, e));
  for (const auto& [e, label] : next.edges) {
    auto key = name_pair(next, e);
    if (!fresh && base_edges.count(key)) {
      diff.carried_edges.insert(std::move(key));
    } else {
      diff.new_edges.insert(std::move(key));
    }
  }
  return diff;
}

std::string export_dot(const IncidenceGraph& g, const GraphDiff* diff, bool greedy_fallback) {
  const auto order = sort_nodes_by_clique(g, greedy_fallback);
  std::vector<std::size_t> position(g.num_nodes());
  for (std::size_t i = 0; i < order.order.size(); ++i) position[order.order[i]] = i;

  std::ostringstream out;
  out << "graph " << quote(g.stage_tag.empty() ? "G" : g.stage_tag) << " {\n";
  out << "  // provenance=" << to_string(g.provenance);
  if (order.approximate) out << " clique_order=greedy";
  out << '\n';
  for (auto v : order.order) {
    out << "  " << quote(g.nodes[v]);
    if (diff && diff->new_nodes.count(g.nodes[v])) out << " [color=red]";
    out << ";\n";
  }

  std::vector<std::pair<NodePair, std::uint32_t>> edges;
  for (const auto& [e, label] : g.edges) {
    auto [a, b] = e;
    if (position[a] > position[b]) std::swap(a, b);
    edges.push_back({{a, b}, label});
  }
  std::sort(edges.begin(), edges.end(), [&](const auto& x, const auto& y) {
    return std::pair{position[x.first.first], position[x.first.second]} <
           std::pair{position[y.first.first], position[y.first.second]};
  });
  for (const auto& [e, label] : edges) {
    out << "  " << quote(g.nodes[e.first]) << " -- " << quote(g.nodes[e.second]);
    std::vector<std::string> attrs;
    if (diff && diff->new_edges.count(name_pair(g, e))) attrs.emplace_back("color=red");
    if (label != 1) attrs.push_back("label=\"" + std::to_string(label) + "\"");
    if (!attrs.empty()) {
      out << " [";
      for (std::size_t i = 0; i < attrs.size(); ++i) out << (i ? ", " : "") << attrs[i];
      out << ']';
    }
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace satpaths
