#include "sawgrid/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>

namespace sawgrid {

namespace {

std::vector<std::vector<NodeId>> build_adjacency(std::size_t n, const std::vector<Edge>& edges) {
  std::vector<std::vector<NodeId>> adj(n);
  for (const Edge& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
  return adj;
}

}  // namespace

Graph::Graph(std::size_t num_nodes, std::vector<Edge> edges) : edges_(std::move(edges)) {
  for (Edge& e : edges_) {
    if (e.u >= num_nodes || e.v >= num_nodes) {
      throw std::invalid_argument("edge endpoint out of range: (" + std::to_string(e.u) + "," +
                                  std::to_string(e.v) + ") with " + std::to_string(num_nodes) +
                                  " nodes");
    }
    if (e.u == e.v) throw std::invalid_argument("self-loop at node " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw std::invalid_argument("duplicate edge");
  }
  adjacency_ = build_adjacency(num_nodes, edges_);
}

Graph Graph::from_edge_list(std::size_t num_nodes,
                            std::span<const std::pair<NodeId, NodeId>> pairs,
                            std::size_t* dropped_loops) {
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  std::size_t loops = 0;
  for (auto [a, b] : pairs) {
    if (a == b) {
      ++loops;
      continue;
    }
    edges.push_back(a < b ? Edge{a, b} : Edge{b, a});
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  if (dropped_loops != nullptr) *dropped_loops = loops;
  return Graph(num_nodes, std::move(edges));
}

bool Graph::has_edge(NodeId a, NodeId b) const {
  const auto& nbrs = adjacency_.at(a);
  return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

NodeValues::NodeValues(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw std::invalid_argument("non-finite node value at index " + std::to_string(i));
    }
  }
}

double NodeValues::min() const {
  if (values_.empty()) throw std::logic_error("min of empty NodeValues");
  return *std::min_element(values_.begin(), values_.end());
}

double NodeValues::max() const {
  if (values_.empty()) throw std::logic_error("max of empty NodeValues");
  return *std::max_element(values_.begin(), values_.end());
}

void NodeValues::check_matches(const Graph& g) const {
  if (values_.size() != g.num_nodes()) {
    throw std::invalid_argument("node value count " + std::to_string(values_.size()) +
                                " does not match node count " + std::to_string(g.num_nodes()));
  }
}

Subgraph induced_subgraph(const Graph& g, const std::vector<bool>& keep_mask) {
  if (keep_mask.size() != g.num_nodes()) {
    throw std::invalid_argument("keep mask size does not match node count");
  }
  constexpr NodeId kDropped = static_cast<NodeId>(-1);
  std::vector<NodeId> to_new(g.num_nodes(), kDropped);
  Subgraph out;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (keep_mask[v]) {
      to_new[v] = static_cast<NodeId>(out.to_parent.size());
      out.to_parent.push_back(v);
    }
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (to_new[e.u] != kDropped && to_new[e.v] != kDropped) {
      edges.push_back({to_new[e.u], to_new[e.v]});
    }
  }
  out.graph = Graph(out.to_parent.size(), std::move(edges));
  return out;
}

Subgraph induced_subgraph(const Graph& g, const std::function<bool(NodeId)>& keep) {
  std::vector<bool> mask(g.num_nodes());
  for (NodeId v = 0; v < g.num_nodes(); ++v) mask[v] = keep(v);
  return induced_subgraph(g, mask);
}

Components connected_components(const Graph& g) {
  constexpr std::uint32_t kUnset = static_cast<std::uint32_t>(-1);
  Components c;
  c.id.assign(g.num_nodes(), kUnset);
  std::queue<NodeId> frontier;
  for (NodeId s = 0; s < g.num_nodes(); ++s) {
    if (c.id[s] != kUnset) continue;
    const auto label = static_cast<std::uint32_t>(c.count++);
    c.id[s] = label;
    frontier.push(s);
    while (!frontier.empty()) {
      NodeId v = frontier.front();
      frontier.pop();
      for (NodeId w : g.neighbors(v)) {
        if (c.id[w] == kUnset) {
          c.id[w] = label;
          frontier.push(w);
        }
      }
    }
  }
  return c;
}

std::size_t cycle_rank(const Graph& g) {
  // |E| + B0 >= |V| always holds, so this never underflows.
  return g.num_edges() + connected_components(g).count - g.num_nodes();
}

}  // namespace sawgrid
