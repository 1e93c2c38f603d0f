#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "sawgrid/filtrations.hpp"
#include "sawgrid/persistence.hpp"
#include "sawgrid/tudataset.hpp"

namespace sawgrid {

enum class SummaryKind { kSaw, kMpgf };
enum class ThresholdScope { kPerGraph, kPerDataset };

// An invalid combination of run options.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::filesystem::path dataset_dir;
  std::string name;
  SummaryKind summary = SummaryKind::kSaw;
  std::vector<FiltrationKind> filtrations;
  std::size_t signature_length = 100;
  // Threshold count of the single-parameter filtration behind a saw signature.
  std::size_t saw_thresholds = 10;
  // One entry per mpgf filtration, or a single entry applied to every axis.
  std::vector<std::size_t> grid = {10, 10};
  ComplexMode mode = ComplexMode::kGraph;
  Direction direction = Direction::kSublevel;
  ThresholdScope scope = ThresholdScope::kPerGraph;
  std::filesystem::path out;
  std::size_t workers = 1;

  // Throws UsageError.
  void validate() const;
  std::vector<std::size_t> grid_sizes() const;
  // Number of feature columns per row.
  std::size_t feature_width() const;
};

struct FeatureRow {
  std::size_t graph_id = 0;
  int label = 0;
  std::vector<double> features;
  bool ok = true;
  bool lacks_b1 = false;  // no 1-dimensional features anywhere
  std::string error;
};

struct PhaseTimes {
  std::chrono::duration<double> filtration{0};
  std::chrono::duration<double> persistence{0};
  std::chrono::duration<double> summary{0};
};

struct FeatureTable {
  std::size_t width = 0;
  std::vector<FeatureRow> rows;  // in graph order, failed rows included
  PhaseTimes times;

  std::size_t failures() const;
};

FeatureTable extract_features(const GraphDataset& dataset, const RunConfig& config);

// `graph_id,label,f_0,...,f_{n-1}`; failed rows are omitted.
void write_feature_csv(std::ostream& out, const FeatureTable& table);
// `graph_id,status,detail` for every row that lacks B1 features or failed.
void write_feature_report(std::ostream& out, const FeatureTable& table);

// Dataset summary in the column order graphs, classes, mean nodes, mean edges.
void print_info(std::ostream& out, const GraphDataset& dataset);

struct DiagramRequest {
  std::size_t graph_id = 0;
  FiltrationKind filtration = FiltrationKind::kDegree;
  std::size_t thresholds = 10;
  ComplexMode mode = ComplexMode::kGraph;
  Direction direction = Direction::kSublevel;
};

// Both diagrams as `dim birth death essential` lines, then per-threshold Betti
// numbers and tensions. Throws std::out_of_range for a bad graph id.
void print_diagram(std::ostream& out, const GraphDataset& dataset, const DiagramRequest& request);

}  // namespace sawgrid
