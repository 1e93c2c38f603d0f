#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "sawgrid/graph.hpp"

namespace sawgrid {

enum class FiltrationKind {
  kDegree,
  kCloseness,
  kBetweenness,
  kEccentricity,
  kHub,
  kAuthority,
  kFormanRicci,
};

inline constexpr std::array<FiltrationKind, 7> kAllFiltrationKinds = {
    FiltrationKind::kDegree,       FiltrationKind::kCloseness, FiltrationKind::kBetweenness,
    FiltrationKind::kEccentricity, FiltrationKind::kHub,       FiltrationKind::kAuthority,
    FiltrationKind::kFormanRicci,
};

// Lower-case names used on the command line: degree, closeness, betweenness,
// eccentricity, hub, authority, forman_ricci.
std::string_view to_string(FiltrationKind kind);
std::optional<FiltrationKind> parse_filtration_kind(std::string_view name);

// Power iteration did not settle within the iteration cap.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

struct HitsOptions {
  double tolerance = 1e-10;
  int max_iterations = 1000;
};

// Throws std::invalid_argument for an empty graph.
NodeValues compute_filtration(const Graph& g, FiltrationKind kind);

NodeValues degree_values(const Graph& g);
// (|C|-1) / sum of distances inside the node's component C; 0 when isolated.
NodeValues closeness_values(const Graph& g);
// Unnormalized Brandes betweenness; each unordered pair counted once.
NodeValues betweenness_values(const Graph& g);
// Largest distance to a node in the same component.
NodeValues eccentricity_values(const Graph& g);
// HITS scores. For an undirected graph hub and authority coincide; values are
// non-negative and scaled so the maximum is 1 (all zeros for an edgeless graph).
NodeValues hits_values(const Graph& g, const HitsOptions& options = {});
// Mean over incident edges of 4 - deg(u) - deg(v); 0 for isolated nodes.
NodeValues forman_ricci_values(const Graph& g);

}  // namespace sawgrid
