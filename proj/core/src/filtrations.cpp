#include "sawgrid/filtrations.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

namespace sawgrid {

namespace {

constexpr std::array<std::string_view, 7> kNames = {
    "degree", "closeness", "betweenness", "eccentricity", "hub", "authority", "forman_ricci",
};

constexpr std::int64_t kUnreached = -1;

// Hop distances from `source`; kUnreached outside its component.
void bfs_distances(const Graph& g, NodeId source, std::vector<std::int64_t>& dist,
                   std::vector<NodeId>& queue) {
  std::fill(dist.begin(), dist.end(), kUnreached);
  queue.clear();
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId v = queue[head];
    for (NodeId w : g.neighbors(v)) {
      if (dist[w] == kUnreached) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
}

}  // namespace

std::string_view to_string(FiltrationKind kind) { return kNames.at(static_cast<std::size_t>(kind)); }

std::optional<FiltrationKind> parse_filtration_kind(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<FiltrationKind>(i);
  }
  return std::nullopt;
}

NodeValues degree_values(const Graph& g) {
  std::vector<double> out(g.num_nodes());
  for (NodeId v = 0; v < g.num_nodes(); ++v) out[v] = static_cast<double>(g.degree(v));
  return NodeValues(std::move(out));
}

NodeValues closeness_values(const Graph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<double> out(n, 0.0);
  std::vector<std::int64_t> dist(n);
  std::vector<NodeId> queue;
  queue.reserve(n);
  for (NodeId v = 0; v < n; ++v) {
    bfs_distances(g, v, dist, queue);
    std::int64_t total = 0;
    for (NodeId u : queue) total += dist[u];
    if (total > 0) out[v] = static_cast<double>(queue.size() - 1) / static_cast<double>(total);
  }
  return NodeValues(std::move(out));
}

NodeValues eccentricity_values(const Graph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<double> out(n, 0.0);
  std::vector<std::int64_t> dist(n);
  std::vector<NodeId> queue;
  queue.reserve(n);
  for (NodeId v = 0; v < n; ++v) {
    bfs_distances(g, v, dist, queue);
    // BFS order is non-decreasing in distance.
    out[v] = static_cast<double>(dist[queue.back()]);
  }
  return NodeValues(std::move(out));
}

NodeValues betweenness_values(const Graph& g) {
  // Brandes' accumulation over single-source BFS DAGs.
  const std::size_t n = g.num_nodes();
  std::vector<double> centrality(n, 0.0);
  std::vector<std::int64_t> dist(n);
  std::vector<double> sigma(n);
  std::vector<double> delta(n);
  std::vector<NodeId> order;
  order.reserve(n);

  for (NodeId s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kUnreached);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    order.clear();
    dist[s] = 0;
    sigma[s] = 1.0;
    order.push_back(s);
    for (std::size_t head = 0; head < order.size(); ++head) {
      const NodeId v = order[head];
      for (NodeId w : g.neighbors(v)) {
        if (dist[w] == kUnreached) {
          dist[w] = dist[v] + 1;
          order.push_back(w);
        }
        if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const NodeId w = *it;
      for (NodeId v : g.neighbors(w)) {
        if (dist[v] == dist[w] - 1) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      }
      if (w != s) centrality[w] += delta[w];
    }
  }
  // Every unordered pair was visited from both ends.
  for (double& c : centrality) c /= 2.0;
  return NodeValues(std::move(centrality));
}

NodeValues hits_values(const Graph& g, const HitsOptions& options) {
  // Undirected HITS reduces to the dominant eigenvector of A. Iterating with
  // A + I instead of A (or A^2) keeps bipartite graphs from oscillating
  // between the +lambda and -lambda eigenvectors.
  const std::size_t n = g.num_nodes();
  if (g.num_edges() == 0) return NodeValues(std::vector<double>(n, 0.0));
  std::vector<double> current(n, 1.0);
  std::vector<double> next(n);

  double residual = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    for (NodeId v = 0; v < n; ++v) {
      double sum = current[v];
      for (NodeId w : g.neighbors(v)) sum += current[w];
      next[v] = sum;
    }
    const double scale = *std::max_element(next.begin(), next.end());
    residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] /= scale;
      residual = std::max(residual, std::abs(next[i] - current[i]));
    }
    current.swap(next);
    if (residual < options.tolerance) return NodeValues(std::move(current));
  }
  throw ConvergenceError("HITS power iteration did not converge in " +
                             std::to_string(options.max_iterations) +
                             " iterations (residual " + std::to_string(residual) + ")",
                         residual);
}

NodeValues forman_ricci_values(const Graph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<double> sum(n, 0.0);
  for (const Edge& e : g.edges()) {
    const double curvature = 4.0 - static_cast<double>(g.degree(e.u)) -
                             static_cast<double>(g.degree(e.v));
    sum[e.u] += curvature;
    sum[e.v] += curvature;
  }
  for (NodeId v = 0; v < n; ++v) {
    if (g.degree(v) > 0) sum[v] /= static_cast<double>(g.degree(v));
  }
  return NodeValues(std::move(sum));
}

NodeValues compute_filtration(const Graph& g, FiltrationKind kind) {
  if (g.empty()) throw std::invalid_argument("cannot compute a filtration on an empty graph");
  switch (kind) {
    case FiltrationKind::kDegree:
      return degree_values(g);
    case FiltrationKind::kCloseness:
      return closeness_values(g);
    case FiltrationKind::kBetweenness:
      return betweenness_values(g);
    case FiltrationKind::kEccentricity:
      return eccentricity_values(g);
    case FiltrationKind::kHub:
    case FiltrationKind::kAuthority:
      return hits_values(g);
    case FiltrationKind::kFormanRicci:
      return forman_ricci_values(g);
  }
  throw std::invalid_argument("unknown filtration kind");
}

}  // namespace sawgrid
