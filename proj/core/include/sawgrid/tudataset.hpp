#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "sawgrid/graph.hpp"

namespace sawgrid {

// A required dataset file is missing or unreadable.
class IngestionError : public std::runtime_error {
 public:
  IngestionError(const std::filesystem::path& file, const std::string& what)
      : std::runtime_error(file.string() + ": " + what), file_(file) {}
  const std::filesystem::path& file() const noexcept { return file_; }

 private:
  std::filesystem::path file_;
};

// Malformed token or out-of-range id. line() is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::filesystem::path& file, std::size_t line, const std::string& what)
      : std::runtime_error(file.string() + ":" + std::to_string(line) + ": " + what),
        file_(file),
        line_(line) {}
  const std::filesystem::path& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::filesystem::path file_;
  std::size_t line_;
};

// Files parse individually but disagree with each other (e.g. an edge whose
// endpoints belong to different graphs).
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GraphDataset {
  std::string name;
  std::vector<Graph> graphs;
  std::vector<int> labels;               // internal labels, 0..num_classes()-1
  std::vector<long long> label_values;   // internal label -> original label
  std::size_t dropped_self_loops = 0;

  std::size_t size() const noexcept { return graphs.size(); }
  std::size_t num_classes() const noexcept { return label_values.size(); }
  long long original_label(std::size_t graph) const { return label_values.at(labels.at(graph)); }
};

// Reads <name>_A.txt, <name>_graph_indicator.txt and <name>_graph_labels.txt
// from `directory`. Other files in the directory (node/edge attributes) are
// ignored.
GraphDataset load_tudataset(const std::filesystem::path& directory, const std::string& name);

// Writes the three files back in the same format using original labels.
// Each undirected edge is emitted in both directions, as the benchmark
// files do.
void write_tudataset(const GraphDataset& dataset, const std::filesystem::path& directory);

struct DatasetStats {
  std::size_t num_graphs = 0;
  std::size_t num_classes = 0;
  double mean_nodes = 0.0;
  double mean_edges = 0.0;
};

DatasetStats dataset_stats(const GraphDataset& dataset);

}  // namespace sawgrid
