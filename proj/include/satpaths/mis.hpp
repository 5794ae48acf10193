#pragma once

#include <string>
#include <utility>
#include <vector>

#include "satpaths/cnf.hpp"

namespace satpaths {

/// One graph node per literal occurrence.
struct MisNode {
  std::size_t clause = 0;
  std::size_t position = 0;
  Literal literal;
  std::string name;  // c<clause>_p<position>_<literal>
};

using NodePair = std::pair<std::uint32_t, std::uint32_t>;

/// Weighted graph whose maximum independent sets encode the models of a CNF
/// formula. Edges are stored once with first < second, sorted.
struct MisInstance {
  std::vector<MisNode> nodes;
  std::vector<NodePair> edges;
  std::vector<double> node_weights;
  double edge_penalty = 2.0;

  std::size_t num_nodes() const { return nodes.size(); }
  std::size_t num_edges() const { return edges.size(); }
  bool has_edge(std::uint32_t a, std::uint32_t b) const;
};

}  // namespace satpaths
