#include "sawgrid/tudataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <string_view>
#include <utility>

namespace sawgrid {

namespace fs = std::filesystem;

namespace {

struct Line {
  std::size_t number;
  std::string text;
};

std::vector<Line> read_lines(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw IngestionError(file, "cannot open file");
  std::vector<Line> lines;
  std::string text;
  std::size_t number = 0;
  while (std::getline(in, text)) {
    ++number;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.find_first_not_of(" \t") == std::string::npos) continue;
    lines.push_back({number, std::move(text)});
  }
  return lines;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

long long parse_integer(std::string_view token, const fs::path& file, std::size_t line) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  long long value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || ec != std::errc{} || ptr != end) {
    throw ParseError(file, line, "expected an integer, got '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

GraphDataset load_tudataset(const fs::path& directory, const std::string& name) {
  const fs::path edge_file = directory / (name + "_A.txt");
  const fs::path indicator_file = directory / (name + "_graph_indicator.txt");
  const fs::path label_file = directory / (name + "_graph_labels.txt");
  for (const auto& f : {edge_file, indicator_file, label_file}) {
    if (!fs::is_regular_file(f)) throw IngestionError(f, "required dataset file is missing");
  }

  GraphDataset ds;
  ds.name = name;

  std::vector<long long> raw_labels;
  for (const Line& l : read_lines(label_file)) {
    raw_labels.push_back(parse_integer(l.text, label_file, l.number));
  }
  const std::size_t num_graphs = raw_labels.size();

  // graph_of[i] is the 0-based graph of global node i (0-based).
  std::vector<std::size_t> graph_of;
  std::vector<NodeId> local_id;
  std::vector<std::size_t> node_count(num_graphs, 0);
  for (const Line& l : read_lines(indicator_file)) {
    const long long gid = parse_integer(l.text, indicator_file, l.number);
    if (gid < 1 || static_cast<std::size_t>(gid) > num_graphs) {
      throw ParseError(indicator_file, l.number,
                       "graph id " + std::to_string(gid) + " outside [1, " +
                           std::to_string(num_graphs) + "]");
    }
    const auto g = static_cast<std::size_t>(gid - 1);
    graph_of.push_back(g);
    local_id.push_back(static_cast<NodeId>(node_count[g]++));
  }
  const std::size_t num_nodes = graph_of.size();

  std::vector<std::vector<std::pair<NodeId, NodeId>>> pairs(num_graphs);
  for (const Line& l : read_lines(edge_file)) {
    const auto comma = l.text.find(',');
    if (comma == std::string::npos) {
      throw ParseError(edge_file, l.number, "expected 'i, j'");
    }
    const std::string_view text(l.text);
    const long long a = parse_integer(text.substr(0, comma), edge_file, l.number);
    const long long b = parse_integer(text.substr(comma + 1), edge_file, l.number);
    for (long long id : {a, b}) {
      if (id < 1 || static_cast<std::size_t>(id) > num_nodes) {
        throw ParseError(edge_file, l.number,
                         "node id " + std::to_string(id) + " outside [1, " +
                             std::to_string(num_nodes) + "]");
      }
    }
    const auto ia = static_cast<std::size_t>(a - 1);
    const auto ib = static_cast<std::size_t>(b - 1);
    if (graph_of[ia] != graph_of[ib]) {
      throw ConsistencyError(edge_file.string() + ":" + std::to_string(l.number) + ": edge (" +
                             std::to_string(a) + "," + std::to_string(b) +
                             ") joins graphs " + std::to_string(graph_of[ia] + 1) + " and " +
                             std::to_string(graph_of[ib] + 1));
    }
    pairs[graph_of[ia]].emplace_back(local_id[ia], local_id[ib]);
  }

  ds.graphs.reserve(num_graphs);
  for (std::size_t g = 0; g < num_graphs; ++g) {
    std::size_t loops = 0;
    ds.graphs.push_back(Graph::from_edge_list(node_count[g], pairs[g], &loops));
    ds.dropped_self_loops += loops;
  }

  ds.label_values = raw_labels;
  std::sort(ds.label_values.begin(), ds.label_values.end());
  ds.label_values.erase(std::unique(ds.label_values.begin(), ds.label_values.end()),
                        ds.label_values.end());
  ds.labels.reserve(num_graphs);
  for (long long raw : raw_labels) {
    const auto it = std::lower_bound(ds.label_values.begin(), ds.label_values.end(), raw);
    ds.labels.push_back(static_cast<int>(it - ds.label_values.begin()));
  }
  return ds;
}

void write_tudataset(const GraphDataset& dataset, const fs::path& directory) {
  fs::create_directories(directory);
  const auto open = [&](const std::string& suffix) {
    const fs::path p = directory / (dataset.name + suffix);
    std::ofstream out(p);
    if (!out) throw IngestionError(p, "cannot open file for writing");
    return out;
  };
  auto edges = open("_A.txt");
  auto indicator = open("_graph_indicator.txt");
  auto labels = open("_graph_labels.txt");

  std::size_t offset = 1;
  for (std::size_t g = 0; g < dataset.size(); ++g) {
    const Graph& graph = dataset.graphs[g];
    for (std::size_t v = 0; v < graph.num_nodes(); ++v) indicator << g + 1 << '\n';
    for (const Edge& e : graph.edges()) {
      edges << offset + e.u << ", " << offset + e.v << '\n';
      edges << offset + e.v << ", " << offset + e.u << '\n';
    }
    labels << dataset.original_label(g) << '\n';
    offset += graph.num_nodes();
  }
}

DatasetStats dataset_stats(const GraphDataset& dataset) {
  DatasetStats s;
  s.num_graphs = dataset.size();
  s.num_classes = dataset.num_classes();
  if (s.num_graphs == 0) return s;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  for (const Graph& g : dataset.graphs) {
    nodes += g.num_nodes();
    edges += g.num_edges();
  }
  s.mean_nodes = static_cast<double>(nodes) / static_cast<double>(s.num_graphs);
  s.mean_edges = static_cast<double>(edges) / static_cast<double>(s.num_graphs);
  return s;
}

}  // namespace sawgrid
