#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace sawgrid {

struct Assignment {
  std::vector<std::size_t> row_to_col;
  double cost = 0.0;
};

// Minimum-cost perfect assignment on a dense n x n row-major cost matrix
// (Hungarian method with potentials, O(n^3)).
Assignment solve_assignment(std::span<const double> cost, std::size_t n);

// True when the bipartite graph on n + n vertices with an edge (i, j) for
// every allowed(i, j) has a perfect matching (Kuhn's augmenting paths).
bool has_perfect_matching(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& allowed);

}  // namespace sawgrid
