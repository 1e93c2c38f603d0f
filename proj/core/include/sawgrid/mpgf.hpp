#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sawgrid/graph.hpp"
#include "sawgrid/persistence.hpp"

namespace sawgrid {

// Which rectangle of the parameter plane a grid value is drawn on, i.e.
// whether the thresholds sit on the upper or the lower edge of each cell.
//   kUpperEdge: cell (i,j) = (a[i-1], a[i]] x (b[j-1], b[j]], padded below.
//   kLowerEdge: cell (i,j) = [a[i], a[i+1]) x [b[j], b[j+1]), padded above.
// Superlevel grids always use the upper padding. The value array is the same
// under both conventions.
enum class CellConvention { kUpperEdge, kLowerEdge };

struct Rect {
  double x0 = 0.0;
  double x1 = 0.0;
  double y0 = 0.0;
  double y1 = 0.0;

  double area() const noexcept { return (x1 - x0) * (y1 - y0); }
};

// Thresholds along one axis. A constant function gets m evenly spaced
// thresholds on [v, v+1] ([v-1, v] for superlevel) so grid shapes stay fixed
// across a dataset and every cell sees the whole graph.
std::vector<double> axis_thresholds(const NodeValues& values, std::size_t m,
                                    Direction direction = Direction::kSublevel);

struct GridSpec2 {
  std::vector<double> thresholds_f;
  std::vector<double> thresholds_g;
  Direction direction = Direction::kSublevel;
  CellConvention convention = CellConvention::kUpperEdge;

  std::size_t rows() const noexcept { return thresholds_f.size(); }
  std::size_t cols() const noexcept { return thresholds_g.size(); }
  double padding_f() const;
  double padding_g() const;
  Rect cell(std::size_t i, std::size_t j) const;
  Rect domain() const;
  // Throws std::invalid_argument unless both axes are strictly increasing
  // with at least two thresholds.
  void validate() const;
};

// Betti numbers of the doubly constrained subgraphs, one m1 x m2 row-major
// array per homology dimension.
struct MPGFGrid {
  GridSpec2 spec;
  std::array<std::vector<std::size_t>, 2> values;

  std::size_t rows() const noexcept { return spec.rows(); }
  std::size_t cols() const noexcept { return spec.cols(); }
  std::size_t at(int dim, std::size_t i, std::size_t j) const {
    return values.at(static_cast<std::size_t>(dim)).at(i * cols() + j);
  }
};

struct MPGFGridD {
  std::vector<std::vector<double>> axes;
  std::vector<std::size_t> shape;
  // Row-major, last axis fastest.
  std::array<std::vector<std::size_t>, 2> values;

  std::size_t flat_index(std::span<const std::size_t> index) const;
  std::size_t at(int dim, std::span<const std::size_t> index) const {
    return values.at(static_cast<std::size_t>(dim)).at(flat_index(index));
  }
};

// Sublevel grid with thresholds from axis_thresholds. For each row i the
// subgraph {f <= a_i} is swept once as a single-parameter filtration by gfun.
MPGFGrid compute_mpgf2(const Graph& g, const NodeValues& f, const NodeValues& gfun, std::size_t m1,
                       std::size_t m2, ComplexMode mode = ComplexMode::kGraph,
                       CellConvention convention = CellConvention::kUpperEdge);

// Grid over caller-supplied thresholds; direction comes from the spec. Used
// for dataset-wide thresholds.
MPGFGrid compute_mpgf2(const Graph& g, const NodeValues& f, const NodeValues& gfun,
                       const GridSpec2& spec, ComplexMode mode = ComplexMode::kGraph);

// Cells hold Betti numbers of {f >= a_i and gfun >= b_j}.
MPGFGrid superlevel_mpgf2(const Graph& g, const NodeValues& f, const NodeValues& gfun,
                          std::size_t m1, std::size_t m2, ComplexMode mode = ComplexMode::kGraph);

// d-parameter sublevel grid, recursing on the last axis and sweeping the
// first. Throws std::invalid_argument when `functions` is empty.
MPGFGridD compute_mpgf_d(const Graph& g, std::span<const NodeValues> functions,
                         std::span<const std::size_t> sizes, ComplexMode mode = ComplexMode::kGraph);
MPGFGridD compute_mpgf_d(const Graph& g, std::span<const NodeValues> functions,
                         std::vector<std::vector<double>> axes,
                         ComplexMode mode = ComplexMode::kGraph);

// Integral of |a - b| over the plane for homology dimension `dim`, with each
// grid taken as zero outside its domain.
double grid_l1_distance(const MPGFGrid& a, const MPGFGrid& b, int dim);

// B0 block then B1 block, each row-major.
std::vector<double> flatten(const MPGFGrid& grid);
std::vector<double> flatten(const MPGFGridD& grid);

// One header row naming cells (b<k>_<i>_<j>) and one value row.
void write_grid_csv(std::ostream& out, const MPGFGrid& grid);
// Both threshold vectors, direction, convention and the two value matrices.
std::string grid_to_json(const MPGFGrid& grid);

}  // namespace sawgrid
