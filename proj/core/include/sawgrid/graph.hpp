#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sawgrid {

using NodeId = std::uint32_t;

// Undirected edge stored with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Simple undirected graph. The edge list is the source of truth; adjacency
// lists are rebuilt from it at construction and kept sorted.
class Graph {
 public:
  Graph() = default;

  // Throws std::invalid_argument on an out-of-range endpoint, a self-loop or
  // a duplicate edge. Edge orientation in the input does not matter.
  Graph(std::size_t num_nodes, std::vector<Edge> edges);

  // Lenient builder used by ingestion: drops self-loops and merges duplicate
  // (u,v)/(v,u) entries. The number of dropped loops is written to
  // *dropped_loops when non-null.
  static Graph from_edge_list(std::size_t num_nodes,
                              std::span<const std::pair<NodeId, NodeId>> pairs,
                              std::size_t* dropped_loops = nullptr);

  std::size_t num_nodes() const noexcept { return adjacency_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return adjacency_.empty(); }

  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::span<const NodeId> neighbors(NodeId v) const { return adjacency_.at(v); }
  std::size_t degree(NodeId v) const { return adjacency_.at(v).size(); }
  bool has_edge(NodeId a, NodeId b) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.adjacency_.size() == b.adjacency_.size() && a.edges_ == b.edges_;
  }

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<NodeId>> adjacency_;
};

// Per-node real values of a filtration function. All values finite.
class NodeValues {
 public:
  NodeValues() = default;
  explicit NodeValues(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }
  double min() const;
  double max() const;

  // Throws std::invalid_argument when size() != g.num_nodes().
  void check_matches(const Graph& g) const;

 private:
  std::vector<double> values_;
};

struct Subgraph {
  Graph graph;
  std::vector<NodeId> to_parent;  // new index -> index in the source graph
};

Subgraph induced_subgraph(const Graph& g, const std::function<bool(NodeId)>& keep);
Subgraph induced_subgraph(const Graph& g, const std::vector<bool>& keep_mask);

struct Components {
  std::vector<std::uint32_t> id;  // component id per node, numbered 0..count-1
  std::size_t count = 0;
};

Components connected_components(const Graph& g);

// First Betti number of the graph viewed as a 1-complex: |E| - |V| + B0.
std::size_t cycle_rank(const Graph& g);

}  // namespace sawgrid
