#include "sawgrid/mpgf.hpp"

#include <algorithm>
#include <functional>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "sawgrid/format.hpp"

namespace sawgrid {

namespace {

void check_axis(const std::vector<double>& t, const char* name) {
  if (t.size() < 2) throw std::invalid_argument(std::string(name) + ": need at least two thresholds");
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (!(t[i - 1] < t[i])) throw std::invalid_argument(std::string(name) + ": thresholds must increase");
  }
}

double axis_padding(const std::vector<double>& t) {
  return (t.back() - t.front()) / static_cast<double>(t.size() - 1);
}

// Lower and upper edge of cell i along one axis.
std::pair<double, double> cell_edges(const std::vector<double>& t, std::size_t i, bool pad_below) {
  if (pad_below) return {i == 0 ? t.front() - axis_padding(t) : t[i - 1], t[i]};
  return {t[i], i + 1 == t.size() ? t.back() + axis_padding(t) : t[i + 1]};
}

std::vector<bool> level_mask(const NodeValues& f, double alpha, Direction direction) {
  std::vector<bool> keep(f.size());
  for (std::size_t v = 0; v < f.size(); ++v) {
    keep[v] = direction == Direction::kSublevel ? f[v] <= alpha : f[v] >= alpha;
  }
  return keep;
}

NodeValues restrict_values(const NodeValues& f, const std::vector<NodeId>& to_parent) {
  std::vector<double> out;
  out.reserve(to_parent.size());
  for (NodeId v : to_parent) out.push_back(f[v]);
  return NodeValues(std::move(out));
}

}  // namespace

std::vector<double> axis_thresholds(const NodeValues& values, std::size_t m, Direction direction) {
  if (values.empty()) throw std::invalid_argument("cannot place thresholds for empty values");
  const double lo = values.min();
  const double hi = values.max();
  if (lo == hi && direction == Direction::kSuperlevel) return make_thresholds(lo - 1.0, lo, m);
  if (lo == hi) return make_thresholds(lo, lo + 1.0, m);
  return make_thresholds(lo, hi, m);
}

double GridSpec2::padding_f() const { return axis_padding(thresholds_f); }
double GridSpec2::padding_g() const { return axis_padding(thresholds_g); }

void GridSpec2::validate() const {
  check_axis(thresholds_f, "first axis");
  check_axis(thresholds_g, "second axis");
}

Rect GridSpec2::cell(std::size_t i, std::size_t j) const {
  const bool pad_below = direction == Direction::kSublevel && convention == CellConvention::kUpperEdge;
  const auto [x0, x1] = cell_edges(thresholds_f, i, pad_below);
  const auto [y0, y1] = cell_edges(thresholds_g, j, pad_below);
  return {x0, x1, y0, y1};
}

Rect GridSpec2::domain() const {
  const Rect lo = cell(0, 0);
  const Rect hi = cell(rows() - 1, cols() - 1);
  return {lo.x0, hi.x1, lo.y0, hi.y1};
}

std::size_t MPGFGridD::flat_index(std::span<const std::size_t> index) const {
  if (index.size() != shape.size()) throw std::invalid_argument("index rank mismatch");
  std::size_t flat = 0;
  for (std::size_t a = 0; a < shape.size(); ++a) {
    if (index[a] >= shape[a]) throw std::out_of_range("grid index out of range");
    flat = flat * shape[a] + index[a];
  }
  return flat;
}

MPGFGrid compute_mpgf2(const Graph& g, const NodeValues& f, const NodeValues& gfun,
                       const GridSpec2& spec, ComplexMode mode) {
  spec.validate();
  f.check_matches(g);
  gfun.check_matches(g);
  MPGFGrid grid;
  grid.spec = spec;
  const std::size_t m1 = spec.rows();
  const std::size_t m2 = spec.cols();
  grid.values[0].assign(m1 * m2, 0);
  grid.values[1].assign(m1 * m2, 0);

  for (std::size_t i = 0; i < m1; ++i) {
    const Subgraph row = induced_subgraph(g, level_mask(f, spec.thresholds_f[i], spec.direction));
    const FiltrationSpec sweep(restrict_values(gfun, row.to_parent), spec.thresholds_g, spec.direction, mode);
    const BettiCurves curves = betti_curves(row.graph, sweep);
    for (std::size_t j = 0; j < m2; ++j) {
      // Betti curves come back in canonical order, reversed for superlevel.
      const std::size_t c = spec.direction == Direction::kSublevel ? j : m2 - 1 - j;
      grid.values[0][i * m2 + j] = curves.b0.values[c];
      grid.values[1][i * m2 + j] = curves.b1.values[c];
    }
  }
  return grid;
}

MPGFGrid compute_mpgf2(const Graph& g, const NodeValues& f, const NodeValues& gfun, std::size_t m1,
                       std::size_t m2, ComplexMode mode, CellConvention convention) {
  GridSpec2 spec{axis_thresholds(f, m1), axis_thresholds(gfun, m2), Direction::kSublevel, convention};
  return compute_mpgf2(g, f, gfun, spec, mode);
}

MPGFGrid superlevel_mpgf2(const Graph& g, const NodeValues& f, const NodeValues& gfun,
                          std::size_t m1, std::size_t m2, ComplexMode mode) {
  GridSpec2 spec{axis_thresholds(f, m1, Direction::kSuperlevel),
                 axis_thresholds(gfun, m2, Direction::kSuperlevel), Direction::kSuperlevel,
                 CellConvention::kUpperEdge};
  return compute_mpgf2(g, f, gfun, spec, mode);
}

MPGFGridD compute_mpgf_d(const Graph& g, std::span<const NodeValues> functions,
                         std::vector<std::vector<double>> axes, ComplexMode mode) {
  if (functions.empty()) throw std::invalid_argument("at least one filtration function is required");
  if (axes.size() != functions.size()) throw std::invalid_argument("one threshold axis per function");
  for (const auto& f : functions) f.check_matches(g);
  for (const auto& a : axes) check_axis(a, "axis");

  MPGFGridD grid;
  grid.shape.reserve(axes.size());
  std::size_t cells = 1;
  for (const auto& a : axes) {
    grid.shape.push_back(a.size());
    cells *= a.size();
  }
  grid.axes = std::move(axes);
  grid.values[0].assign(cells, 0);
  grid.values[1].assign(cells, 0);

  const std::size_t d = functions.size();
  std::vector<std::size_t> index(d, 0);

  // Fix the last `axis` coordinates one at a time by shrinking the vertex set,
  // then sweep axis 0 as a single-parameter filtration.
  std::function<void(std::size_t, const std::vector<bool>&)> fill =
      [&](std::size_t axis, const std::vector<bool>& keep) {
        if (axis == 0) {
          const Subgraph sub = induced_subgraph(g, keep);
          const FiltrationSpec sweep(restrict_values(functions[0], sub.to_parent), grid.axes[0],
                                     Direction::kSublevel, mode);
          const BettiCurves curves = betti_curves(sub.graph, sweep);
          for (std::size_t j = 0; j < grid.shape[0]; ++j) {
            index[0] = j;
            const std::size_t flat = grid.flat_index(index);
            grid.values[0][flat] = curves.b0.values[j];
            grid.values[1][flat] = curves.b1.values[j];
          }
          return;
        }
        const NodeValues& f = functions[axis];
        for (std::size_t j = 0; j < grid.shape[axis]; ++j) {
          index[axis] = j;
          std::vector<bool> narrowed = keep;
          for (std::size_t v = 0; v < narrowed.size(); ++v) {
            narrowed[v] = narrowed[v] && f[v] <= grid.axes[axis][j];
          }
          fill(axis - 1, narrowed);
        }
      };
  fill(d - 1, std::vector<bool>(g.num_nodes(), true));
  return grid;
}

MPGFGridD compute_mpgf_d(const Graph& g, std::span<const NodeValues> functions,
                         std::span<const std::size_t> sizes, ComplexMode mode) {
  if (functions.empty()) throw std::invalid_argument("at least one filtration function is required");
  if (sizes.size() != functions.size()) throw std::invalid_argument("one grid size per function");
  std::vector<std::vector<double>> axes;
  for (std::size_t a = 0; a < functions.size(); ++a) {
    if (sizes[a] < 2) throw std::invalid_argument("grid sizes must be at least 2");
    axes.push_back(axis_thresholds(functions[a], sizes[a]));
  }
  return compute_mpgf_d(g, functions, std::move(axes), mode);
}

double grid_l1_distance(const MPGFGrid& a, const MPGFGrid& b, int dim) {
  const auto collect = [](const MPGFGrid& grid, std::vector<double>& xs, std::vector<double>& ys) {
    for (std::size_t i = 0; i < grid.rows(); ++i) {
      const Rect r = grid.spec.cell(i, 0);
      xs.push_back(r.x0);
      xs.push_back(r.x1);
    }
    for (std::size_t j = 0; j < grid.cols(); ++j) {
      const Rect r = grid.spec.cell(0, j);
      ys.push_back(r.y0);
      ys.push_back(r.y1);
    }
  };
  std::vector<double> xs;
  std::vector<double> ys;
  collect(a, xs, ys);
  collect(b, xs, ys);
  for (auto* v : {&xs, &ys}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }

  // Value of a grid at an interior point of an overlay cell.
  const auto value_at = [dim](const MPGFGrid& grid, double x, double y) -> double {
    const Rect dom = grid.spec.domain();
    if (x < dom.x0 || x > dom.x1 || y < dom.y0 || y > dom.y1) return 0.0;
    std::size_t i = 0;
    while (i + 1 < grid.rows() && grid.spec.cell(i, 0).x1 < x) ++i;
    std::size_t j = 0;
    while (j + 1 < grid.cols() && grid.spec.cell(0, j).y1 < y) ++j;
    return static_cast<double>(grid.at(dim, i, j));
  };

  double total = 0.0;
  for (std::size_t p = 1; p < xs.size(); ++p) {
    const double cx = 0.5 * (xs[p - 1] + xs[p]);
    for (std::size_t q = 1; q < ys.size(); ++q) {
      const double cy = 0.5 * (ys[q - 1] + ys[q]);
      const double diff = std::abs(value_at(a, cx, cy) - value_at(b, cx, cy));
      if (diff != 0.0) total += diff * (xs[p] - xs[p - 1]) * (ys[q] - ys[q - 1]);
    }
  }
  return total;
}

std::vector<double> flatten(const MPGFGrid& grid) {
  std::vector<double> out;
  out.reserve(grid.values[0].size() * 2);
  for (const auto& block : grid.values) {
    for (std::size_t v : block) out.push_back(static_cast<double>(v));
  }
  return out;
}

std::vector<double> flatten(const MPGFGridD& grid) {
  std::vector<double> out;
  out.reserve(grid.values[0].size() * 2);
  for (const auto& block : grid.values) {
    for (std::size_t v : block) out.push_back(static_cast<double>(v));
  }
  return out;
}

void write_grid_csv(std::ostream& out, const MPGFGrid& grid) {
  bool first = true;
  for (int k = 0; k < 2; ++k) {
    for (std::size_t i = 0; i < grid.rows(); ++i) {
      for (std::size_t j = 0; j < grid.cols(); ++j) {
        out << (first ? "" : ",") << 'b' << k << '_' << i << '_' << j;
        first = false;
      }
    }
  }
  out << '\n';
  first = true;
  for (double v : flatten(grid)) {
    out << (first ? "" : ",") << format_number(v);
    first = false;
  }
  out << '\n';
}

std::string grid_to_json(const MPGFGrid& grid) {
  nlohmann::json j;
  j["rows"] = grid.rows();
  j["cols"] = grid.cols();
  j["thresholds_f"] = grid.spec.thresholds_f;
  j["thresholds_g"] = grid.spec.thresholds_g;
  j["direction"] = std::string(to_string(grid.spec.direction));
  j["convention"] = grid.spec.convention == CellConvention::kUpperEdge ? "upper_edge" : "lower_edge";
  for (int k = 0; k < 2; ++k) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < grid.rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t c = 0; c < grid.cols(); ++c) row.push_back(grid.at(k, i, c));
      rows.push_back(std::move(row));
    }
    j["b" + std::to_string(k)] = std::move(rows);
  }
  return j.dump(2);
}

}  // namespace sawgrid
