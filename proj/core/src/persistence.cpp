#include "sawgrid/persistence.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>

#include "sawgrid/format.hpp"
#include "sawgrid/union_find.hpp"

namespace sawgrid {

std::string_view to_string(Direction d) {
  return d == Direction::kSublevel ? "sublevel" : "superlevel";
}

std::string_view to_string(ComplexMode m) { return m == ComplexMode::kGraph ? "graph" : "clique2"; }

std::vector<double> make_thresholds(double lo, double hi, std::size_t m) {
  if (m < 2) throw std::invalid_argument("at least two thresholds are required");
  if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo) {
    throw std::invalid_argument("invalid threshold range");
  }
  if (lo == hi) return {lo, lo + 1.0};
  std::vector<double> t(m);
  const double span = hi - lo;
  const double steps = static_cast<double>(m - 1);
  for (std::size_t k = 0; k + 1 < m; ++k) t[k] = lo + span * static_cast<double>(k) / steps;
  t.back() = hi;
  return t;
}

std::vector<double> make_thresholds(const NodeValues& values, std::size_t m, Direction direction) {
  if (values.empty()) throw std::invalid_argument("cannot place thresholds for empty values");
  const double lo = values.min();
  const double hi = values.max();
  if (lo == hi && direction == Direction::kSuperlevel) return {lo - 1.0, lo};
  return make_thresholds(lo, hi, m);
}

FiltrationSpec::FiltrationSpec(NodeValues values, std::vector<double> thresholds,
                               Direction direction, ComplexMode mode)
    : values_(std::move(values)),
      thresholds_(std::move(thresholds)),
      direction_(direction),
      mode_(mode) {
  if (thresholds_.size() < 2) throw std::invalid_argument("at least two thresholds are required");
  for (std::size_t i = 0; i < thresholds_.size(); ++i) {
    if (!std::isfinite(thresholds_[i])) throw std::invalid_argument("non-finite threshold");
    if (i > 0 && !(thresholds_[i - 1] < thresholds_[i])) {
      throw std::invalid_argument("thresholds must be strictly increasing");
    }
  }
  if (!values_.empty()) {
    if (direction_ == Direction::kSublevel && thresholds_.back() < values_.max()) {
      throw std::invalid_argument("last threshold is below max f; the filtration would not reach the full graph");
    }
    if (direction_ == Direction::kSuperlevel && thresholds_.front() > values_.min()) {
      throw std::invalid_argument("first threshold is above min f; the filtration would not reach the full graph");
    }
  }
}

FiltrationSpec FiltrationSpec::canonical() const {
  if (direction_ == Direction::kSublevel) return *this;
  std::vector<double> neg(values_.size());
  for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -values_[i];
  std::vector<double> t(thresholds_.rbegin(), thresholds_.rend());
  for (double& x : t) x = -x;
  return FiltrationSpec(NodeValues(std::move(neg)), std::move(t), Direction::kSublevel, mode_);
}

double FiltrationSpec::spacing() const {
  return (thresholds_.back() - thresholds_.front()) / static_cast<double>(thresholds_.size() - 1);
}

double FiltrationSpec::essential_cap() const {
  const double last = direction_ == Direction::kSublevel ? thresholds_.back() : -thresholds_.front();
  return last + spacing();
}

std::size_t PersistenceDiagram::essential_count() const {
  return static_cast<std::size_t>(
      std::count_if(pairs.begin(), pairs.end(), [](const PersistencePair& p) { return p.essential; }));
}

std::vector<PersistencePair> PersistenceDiagram::sorted_pairs() const {
  auto out = pairs;
  std::sort(out.begin(), out.end(), [](const PersistencePair& a, const PersistencePair& b) {
    return std::tie(a.birth, a.death, a.essential) < std::tie(b.birth, b.death, b.essential);
  });
  return out;
}

namespace {

using Column = std::vector<std::uint32_t>;
constexpr std::uint32_t kNone = static_cast<std::uint32_t>(-1);

// Symmetric difference of two sorted columns, written into `target`.
void add_column(Column& target, const Column& source, Column& scratch) {
  scratch.clear();
  std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                std::back_inserter(scratch));
  target.swap(scratch);
}

// Reduces `col` against columns already owning a pivot. Returns the final
// pivot row, or kNone if the column vanished.
std::uint32_t reduce(Column& col, const std::vector<std::uint32_t>& owner,
                     const std::vector<Column>& reduced, Column& scratch) {
  while (!col.empty()) {
    const std::uint32_t low = col.back();
    const std::uint32_t other = owner[low];
    if (other == kNone) return low;
    add_column(col, reduced[other], scratch);
  }
  return kNone;
}

struct LeveledEdge {
  std::size_t entry;
  NodeId u;
  NodeId v;
};

struct LeveledTriangle {
  std::size_t entry;
  std::array<NodeId, 3> nodes;
  Column boundary;  // edge positions in filtration order, ascending
};

// Simplices of the canonical filtration with their entry levels, in
// filtration order: by level, then lexicographically.
struct LeveledComplex {
  std::vector<double> thresholds;
  std::vector<std::size_t> node_entry;
  std::vector<std::vector<NodeId>> nodes_at;  // level -> nodes
  std::vector<LeveledEdge> edges;
  std::vector<LeveledTriangle> triangles;
};

LeveledComplex build_complex(const Graph& g, const FiltrationSpec& canonical, bool with_triangles) {
  canonical.values().check_matches(g);
  LeveledComplex c;
  c.thresholds = canonical.thresholds();
  const std::size_t levels = c.thresholds.size();
  c.node_entry.resize(g.num_nodes());
  c.nodes_at.resize(levels);
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    const auto it = std::lower_bound(c.thresholds.begin(), c.thresholds.end(), canonical.values()[v]);
    const auto level = static_cast<std::size_t>(it - c.thresholds.begin());
    c.node_entry[v] = level;
    c.nodes_at[level].push_back(v);
  }

  c.edges.reserve(g.num_edges());
  for (const Edge& e : g.edges()) {
    c.edges.push_back({std::max(c.node_entry[e.u], c.node_entry[e.v]), e.u, e.v});
  }
  std::sort(c.edges.begin(), c.edges.end(), [](const LeveledEdge& a, const LeveledEdge& b) {
    return std::tie(a.entry, a.u, a.v) < std::tie(b.entry, b.u, b.v);
  });
  if (!with_triangles) return c;

  // g.edges() is sorted by (u, v); map each to its filtration position.
  std::vector<std::uint32_t> position_of(g.num_edges());
  for (std::size_t p = 0; p < c.edges.size(); ++p) {
    const Edge key{c.edges[p].u, c.edges[p].v};
    const auto it = std::lower_bound(g.edges().begin(), g.edges().end(), key);
    position_of[static_cast<std::size_t>(it - g.edges().begin())] = static_cast<std::uint32_t>(p);
  }
  const auto edge_position = [&](NodeId a, NodeId b) {
    const auto it = std::lower_bound(g.edges().begin(), g.edges().end(), Edge{a, b});
    return position_of[static_cast<std::size_t>(it - g.edges().begin())];
  };

  for (const Edge& e : g.edges()) {
    const auto nu = g.neighbors(e.u);
    const auto nv = g.neighbors(e.v);
    auto iu = std::upper_bound(nu.begin(), nu.end(), e.v);
    auto iv = std::upper_bound(nv.begin(), nv.end(), e.v);
    while (iu != nu.end() && iv != nv.end()) {
      if (*iu < *iv) {
        ++iu;
      } else if (*iv < *iu) {
        ++iv;
      } else {
        const NodeId w = *iu;
        LeveledTriangle t;
        t.nodes = {e.u, e.v, w};
        t.entry = std::max({c.node_entry[e.u], c.node_entry[e.v], c.node_entry[w]});
        t.boundary = {edge_position(e.u, e.v), edge_position(e.u, w), edge_position(e.v, w)};
        std::sort(t.boundary.begin(), t.boundary.end());
        c.triangles.push_back(std::move(t));
        ++iu;
        ++iv;
      }
    }
  }
  std::sort(c.triangles.begin(), c.triangles.end(),
            [](const LeveledTriangle& a, const LeveledTriangle& b) {
              return std::tie(a.entry, a.nodes) < std::tie(b.entry, b.nodes);
            });
  return c;
}

struct UnionFindSweep {
  std::vector<PersistencePair> dim0;
  std::vector<std::size_t> cycle_entries;  // level of each cycle-closing edge
};

UnionFindSweep sweep_components(const Graph& g, const LeveledComplex& c, double cap) {
  UnionFindSweep out;
  UnionFind uf(g.num_nodes());
  std::vector<std::size_t> birth(g.num_nodes());
  std::vector<NodeId> oldest_node(g.num_nodes());
  std::size_t next_edge = 0;
  for (std::size_t level = 0; level < c.thresholds.size(); ++level) {
    for (NodeId v : c.nodes_at[level]) {
      birth[v] = level;
      oldest_node[v] = v;
    }
    for (; next_edge < c.edges.size() && c.edges[next_edge].entry == level; ++next_edge) {
      const auto& e = c.edges[next_edge];
      std::uint32_t a = uf.find(e.u);
      std::uint32_t b = uf.find(e.v);
      if (a == b) {
        out.cycle_entries.push_back(level);
        continue;
      }
      // Elder rule: `a` survives.
      if (std::tie(birth[b], oldest_node[b]) < std::tie(birth[a], oldest_node[a])) std::swap(a, b);
      if (birth[b] < level) {
        out.dim0.push_back({c.thresholds[birth[b]], c.thresholds[level], 0, false});
      }
      uf.link(a, b);
      oldest_node[a] = std::min(oldest_node[a], oldest_node[b]);
    }
  }
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (uf.find(v) == v) out.dim0.push_back({c.thresholds[birth[v]], cap, 0, true});
  }
  return out;
}

PersistenceDiagram empty_diagram(int dim, const FiltrationSpec& canonical) {
  PersistenceDiagram pd;
  pd.dimension = dim;
  pd.thresholds = canonical.thresholds();
  pd.essential_cap = canonical.essential_cap();
  return pd;
}

// GF(2) rank of triangle boundaries over the edges of a graph, by dense
// elimination on bit rows. Independent of the sparse reduction above.
std::size_t dense_triangle_rank(const Graph& g) {
  const std::size_t words = (g.num_edges() + 63) / 64;
  const auto edge_index = [&](NodeId a, NodeId b) {
    if (a > b) std::swap(a, b);
    return static_cast<std::size_t>(
        std::lower_bound(g.edges().begin(), g.edges().end(), Edge{a, b}) - g.edges().begin());
  };
  std::vector<std::vector<std::uint64_t>> rows;
  for (NodeId a = 0; a < g.num_nodes(); ++a) {
    for (NodeId b : g.neighbors(a)) {
      if (b <= a) continue;
      for (NodeId w : g.neighbors(b)) {
        if (w <= b || !g.has_edge(a, w)) continue;
        std::vector<std::uint64_t> row(words, 0);
        for (std::size_t e : {edge_index(a, b), edge_index(a, w), edge_index(b, w)}) {
          row[e / 64] |= std::uint64_t{1} << (e % 64);
        }
        rows.push_back(std::move(row));
      }
    }
  }
  std::size_t rank = 0;
  for (std::size_t bit = 0; bit < g.num_edges() && rank < rows.size(); ++bit) {
    const std::size_t w = bit / 64;
    const std::uint64_t mask = std::uint64_t{1} << (bit % 64);
    std::size_t pivot = rank;
    while (pivot < rows.size() && (rows[pivot][w] & mask) == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && (rows[r][w] & mask) != 0) {
        for (std::size_t k = 0; k < words; ++k) rows[r][k] ^= rows[rank][k];
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace

Subgraph sublevel_subgraph(const Graph& g, const FiltrationSpec& spec, std::size_t i) {
  spec.values().check_matches(g);
  const double alpha = spec.thresholds().at(i);
  std::vector<bool> keep(g.num_nodes());
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    keep[v] = spec.direction() == Direction::kSublevel ? spec.values()[v] <= alpha
                                                        : spec.values()[v] >= alpha;
  }
  return induced_subgraph(g, keep);
}

BettiCurves betti_curves(const Graph& g, const FiltrationSpec& spec) {
  const FiltrationSpec canon = spec.canonical();
  const bool clique = spec.mode() == ComplexMode::kClique2;
  const LeveledComplex c = build_complex(g, canon, clique);
  const std::size_t levels = c.thresholds.size();

  BettiCurves out;
  out.b0 = {c.thresholds, std::vector<std::size_t>(levels)};
  out.b1 = {c.thresholds, std::vector<std::size_t>(levels)};

  UnionFind uf(g.num_nodes());
  std::vector<std::uint32_t> owner(c.edges.size(), kNone);
  std::vector<Column> reduced(c.triangles.size());
  Column scratch;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t components = 0;
  std::size_t rank = 0;
  std::size_t next_edge = 0;
  std::size_t next_triangle = 0;
  for (std::size_t level = 0; level < levels; ++level) {
    nodes += c.nodes_at[level].size();
    components += c.nodes_at[level].size();
    for (; next_edge < c.edges.size() && c.edges[next_edge].entry == level; ++next_edge) {
      ++edges;
      const std::uint32_t a = uf.find(c.edges[next_edge].u);
      const std::uint32_t b = uf.find(c.edges[next_edge].v);
      if (a != b) {
        uf.link(a, b);
        --components;
      }
    }
    for (; next_triangle < c.triangles.size() && c.triangles[next_triangle].entry == level;
         ++next_triangle) {
      Column col = c.triangles[next_triangle].boundary;
      const std::uint32_t low = reduce(col, owner, reduced, scratch);
      if (low != kNone) {
        owner[low] = static_cast<std::uint32_t>(next_triangle);
        reduced[next_triangle] = std::move(col);
        ++rank;
      }
    }
    out.b0.values[level] = components;
    out.b1.values[level] = edges + components - nodes - rank;
  }
  return out;
}

PersistenceDiagram persistence_dim0(const Graph& g, const FiltrationSpec& spec) {
  const FiltrationSpec canon = spec.canonical();
  const LeveledComplex c = build_complex(g, canon, false);
  PersistenceDiagram pd = empty_diagram(0, canon);
  pd.pairs = sweep_components(g, c, pd.essential_cap).dim0;
  return pd;
}

PersistenceDiagram persistence_dim1(const Graph& g, const FiltrationSpec& spec) {
  const FiltrationSpec canon = spec.canonical();
  PersistenceDiagram pd = empty_diagram(1, canon);
  if (spec.mode() == ComplexMode::kGraph) {
    const LeveledComplex c = build_complex(g, canon, false);
    for (std::size_t level : sweep_components(g, c, pd.essential_cap).cycle_entries) {
      pd.pairs.push_back({c.thresholds[level], pd.essential_cap, 1, true});
    }
    return pd;
  }

  const LeveledComplex c = build_complex(g, canon, true);
  Column scratch;

  // Vertex rows in filtration order: by level, then node index.
  std::vector<std::uint32_t> vertex_row(g.num_nodes());
  {
    std::uint32_t row = 0;
    for (const auto& level_nodes : c.nodes_at) {
      for (NodeId v : level_nodes) vertex_row[v] = row++;
    }
  }

  // Edge columns: an edge that reduces to zero closes a cycle.
  std::vector<std::uint32_t> vertex_owner(g.num_nodes(), kNone);
  std::vector<Column> edge_reduced(c.edges.size());
  std::vector<bool> positive(c.edges.size(), false);
  for (std::size_t p = 0; p < c.edges.size(); ++p) {
    Column col = {vertex_row[c.edges[p].u], vertex_row[c.edges[p].v]};
    std::sort(col.begin(), col.end());
    const std::uint32_t low = reduce(col, vertex_owner, edge_reduced, scratch);
    if (low == kNone) {
      positive[p] = true;
    } else {
      vertex_owner[low] = static_cast<std::uint32_t>(p);
      edge_reduced[p] = std::move(col);
    }
  }

  // Triangle columns: the pivot edge's cycle dies when the triangle enters.
  std::vector<std::uint32_t> edge_owner(c.edges.size(), kNone);
  std::vector<Column> tri_reduced(c.triangles.size());
  std::vector<bool> killed(c.edges.size(), false);
  for (std::size_t q = 0; q < c.triangles.size(); ++q) {
    Column col = c.triangles[q].boundary;
    const std::uint32_t low = reduce(col, edge_owner, tri_reduced, scratch);
    if (low == kNone) continue;
    edge_owner[low] = static_cast<std::uint32_t>(q);
    tri_reduced[q] = std::move(col);
    killed[low] = true;
    const std::size_t born = c.edges[low].entry;
    const std::size_t dies = c.triangles[q].entry;
    if (born < dies) pd.pairs.push_back({c.thresholds[born], c.thresholds[dies], 1, false});
  }
  for (std::size_t p = 0; p < c.edges.size(); ++p) {
    if (positive[p] && !killed[p]) {
      pd.pairs.push_back({c.thresholds[c.edges[p].entry], pd.essential_cap, 1, true});
    }
  }
  return pd;
}

BettiCurves oracle_counts(const Graph& g, const FiltrationSpec& spec) {
  spec.values().check_matches(g);
  const std::size_t levels = spec.size();
  const FiltrationSpec canon = spec.canonical();
  BettiCurves out;
  out.b0 = {canon.thresholds(), std::vector<std::size_t>(levels)};
  out.b1 = {canon.thresholds(), std::vector<std::size_t>(levels)};
  for (std::size_t c = 0; c < levels; ++c) {
    const std::size_t i = spec.direction() == Direction::kSublevel ? c : levels - 1 - c;
    const double alpha = spec.thresholds()[i];
    const Subgraph level = induced_subgraph(g, [&](NodeId v) {
      return spec.direction() == Direction::kSublevel ? spec.values()[v] <= alpha
                                                      : spec.values()[v] >= alpha;
    });
    out.b0.values[c] = connected_components(level.graph).count;
    std::size_t b1 = cycle_rank(level.graph);
    if (spec.mode() == ComplexMode::kClique2) b1 -= dense_triangle_rank(level.graph);
    out.b1.values[c] = b1;
  }
  return out;
}

std::vector<std::size_t> live_counts(const PersistenceDiagram& pd) {
  std::vector<std::size_t> out(pd.thresholds.size(), 0);
  for (std::size_t i = 0; i < pd.thresholds.size(); ++i) {
    const double t = pd.thresholds[i];
    for (const auto& p : pd.pairs) {
      if (p.birth <= t && t < p.death) ++out[i];
    }
  }
  return out;
}

void write_diagram(std::ostream& out, const PersistenceDiagram& pd) {
  for (const auto& p : pd.pairs) {
    out << p.dimension << ' ' << format_number(p.birth) << ' ' << format_number(p.death) << ' '
        << (p.essential ? 1 : 0) << '\n';
  }
}

std::vector<PersistencePair> read_diagram(std::istream& in) {
  std::vector<PersistencePair> pairs;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    PersistencePair p;
    int flag = 0;
    if (!(fields >> p.dimension >> p.birth >> p.death >> flag) || (flag != 0 && flag != 1)) {
      throw std::runtime_error("malformed diagram line " + std::to_string(number) + ": " + line);
    }
    p.essential = flag == 1;
    pairs.push_back(p);
  }
  return pairs;
}

}  // namespace sawgrid
