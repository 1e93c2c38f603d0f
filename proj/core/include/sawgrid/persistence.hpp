#pragma once

#include <cstddef>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "sawgrid/graph.hpp"

namespace sawgrid {

enum class Direction { kSublevel, kSuperlevel };
enum class ComplexMode {
  kGraph,    // the level subgraph itself, as a 1-complex
  kClique2,  // clique complex of the level subgraph, truncated at triangles
};

std::string_view to_string(Direction d);
std::string_view to_string(ComplexMode m);

// m evenly spaced thresholds from min(values) to max(values). When all values
// coincide at v the degenerate pair {v, v+1} is returned instead, or {v-1, v}
// for a superlevel filtration, so the whole graph is present at the first level.
// Throws std::invalid_argument if m < 2 or values is empty.
std::vector<double> make_thresholds(const NodeValues& values, std::size_t m,
                                    Direction direction = Direction::kSublevel);
std::vector<double> make_thresholds(double lo, double hi, std::size_t m);

// A node-function filtration of a graph at a finite set of thresholds.
//
// Sublevel: level i holds the nodes with f(v) <= t[i]; requires t.back() >= max f.
// Superlevel: level i holds the nodes with f(v) >= t[i]; requires t.front() <= min f.
//
// Persistence results (diagrams, Betti curves) are always reported in the
// coordinates of the equivalent sublevel filtration returned by canonical():
// for a superlevel filtration that is the function -f with thresholds
// -t[N-1] < ... < -t[0].
class FiltrationSpec {
 public:
  FiltrationSpec(NodeValues values, std::vector<double> thresholds,
                 Direction direction = Direction::kSublevel,
                 ComplexMode mode = ComplexMode::kGraph);

  const NodeValues& values() const noexcept { return values_; }
  const std::vector<double>& thresholds() const noexcept { return thresholds_; }
  Direction direction() const noexcept { return direction_; }
  ComplexMode mode() const noexcept { return mode_; }
  std::size_t size() const noexcept { return thresholds_.size(); }

  FiltrationSpec canonical() const;

  // Mean threshold spacing.
  double spacing() const;
  // Death coordinate assigned to essential classes: last canonical threshold
  // plus spacing().
  double essential_cap() const;

 private:
  NodeValues values_;
  std::vector<double> thresholds_;
  Direction direction_;
  ComplexMode mode_;
};

struct PersistencePair {
  double birth = 0.0;
  double death = 0.0;
  int dimension = 0;
  bool essential = false;

  double persistence() const noexcept { return death - birth; }
  friend bool operator==(const PersistencePair&, const PersistencePair&) = default;
};

struct PersistenceDiagram {
  int dimension = 0;
  std::vector<PersistencePair> pairs;
  std::vector<double> thresholds;  // canonical coordinates
  double essential_cap = 0.0;

  std::size_t size() const noexcept { return pairs.size(); }
  bool empty() const noexcept { return pairs.empty(); }
  std::size_t essential_count() const;
  // Pairs sorted by (birth, death, essential); convenient for comparisons.
  std::vector<PersistencePair> sorted_pairs() const;
};

struct BettiCurve {
  std::vector<double> thresholds;  // canonical coordinates
  std::vector<std::size_t> values;

  friend bool operator==(const BettiCurve&, const BettiCurve&) = default;
};

struct BettiCurves {
  BettiCurve b0;
  BettiCurve b1;

  friend bool operator==(const BettiCurves&, const BettiCurves&) = default;
};

// Induced subgraph on level i, indexed in the spec's own (not canonical)
// threshold order.
Subgraph sublevel_subgraph(const Graph& g, const FiltrationSpec& spec, std::size_t i);

// Incremental sweep: union-find for B0, edge/node counts for the graph-mode
// B1, and a running GF(2) rank of triangle boundaries for clique2.
BettiCurves betti_curves(const Graph& g, const FiltrationSpec& spec);

// Union-find with the elder rule. Ties between equally old components keep
// the one holding the smallest node index. Zero-length pairs are dropped.
PersistenceDiagram persistence_dim0(const Graph& g, const FiltrationSpec& spec);

// Graph mode: every cycle-closing edge yields an essential class.
// Clique2 mode: boundary-matrix reduction over GF(2) of edges and triangles.
PersistenceDiagram persistence_dim1(const Graph& g, const FiltrationSpec& spec);

// Reference implementation for tests: rebuilds every level from scratch.
BettiCurves oracle_counts(const Graph& g, const FiltrationSpec& spec);

// Number of pairs alive at each threshold: b <= t < d.
std::vector<std::size_t> live_counts(const PersistenceDiagram& pd);

// Line format `dim birth death essential_flag`, one pair per line.
void write_diagram(std::ostream& out, const PersistenceDiagram& pd);
std::vector<PersistencePair> read_diagram(std::istream& in);

}  // namespace sawgrid
