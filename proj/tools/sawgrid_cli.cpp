// sawgrid: topological summaries of graph datasets.
//
//   sawgrid info     --dataset-dir DIR --name NAME
//   sawgrid diagram  --dataset-dir DIR --name NAME --graph-id ID --filtration KIND
//   sawgrid features --dataset-dir DIR --name NAME --summary saw|mpgf --filtration KIND ... --out FILE

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "sawgrid/pipeline.hpp"

namespace {

using sawgrid::ComplexMode;
using sawgrid::Direction;
using sawgrid::FiltrationKind;

constexpr int kExitUsage = 64;
constexpr int kExitIngestion = 65;
constexpr int kExitPartial = 3;

std::vector<std::size_t> parse_grid(const std::string& text) {
  std::vector<std::size_t> sizes;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, 'x')) {
    std::size_t used = 0;
    const unsigned long value = std::stoul(part, &used);
    if (used != part.size()) throw sawgrid::UsageError("bad --grid value '" + text + "'");
    sizes.push_back(value);
  }
  if (sizes.empty()) throw sawgrid::UsageError("bad --grid value '" + text + "'");
  return sizes;
}

std::vector<FiltrationKind> parse_kinds(const std::vector<std::string>& names) {
  std::vector<FiltrationKind> kinds;
  for (const auto& n : names) {
    const auto kind = sawgrid::parse_filtration_kind(n);
    if (!kind) throw sawgrid::UsageError("unknown filtration '" + n + "'");
    kinds.push_back(*kind);
  }
  return kinds;
}

void log_times(const sawgrid::PhaseTimes& t) {
  std::cerr << "timing: filtration=" << t.filtration.count() << "s persistence=" << t.persistence.count()
            << "s summary=" << t.summary.count() << "s\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Saw signatures and multi-persistence grid features for graph datasets"};
  app.require_subcommand(1);

  std::string dataset_dir;
  std::string name;
  const auto add_dataset_options = [&](CLI::App* cmd) {
    cmd->add_option("--dataset-dir", dataset_dir, "Directory holding <name>_A.txt etc.")->required();
    cmd->add_option("--name", name, "Dataset name prefix")->required();
  };

  const std::map<std::string, ComplexMode> modes{{"graph", ComplexMode::kGraph},
                                                 {"clique2", ComplexMode::kClique2}};
  const std::map<std::string, Direction> directions{{"sublevel", Direction::kSublevel},
                                                    {"superlevel", Direction::kSuperlevel}};
  const std::map<std::string, sawgrid::SummaryKind> summaries{{"saw", sawgrid::SummaryKind::kSaw},
                                                              {"mpgf", sawgrid::SummaryKind::kMpgf}};
  const std::map<std::string, sawgrid::ThresholdScope> scopes{
      {"per-graph", sawgrid::ThresholdScope::kPerGraph},
      {"per-dataset", sawgrid::ThresholdScope::kPerDataset}};

  auto* info = app.add_subcommand("info", "Print dataset statistics");
  add_dataset_options(info);

  sawgrid::DiagramRequest request;
  std::string diagram_kind;
  auto* diagram = app.add_subcommand("diagram", "Print persistence diagrams, Betti curves and tension");
  add_dataset_options(diagram);
  diagram->add_option("--graph-id", request.graph_id, "0-based graph index")->required();
  diagram->add_option("--filtration", diagram_kind, "Node function")->required();
  diagram->add_option("--thresholds", request.thresholds, "Threshold count")->capture_default_str();
  std::string diagram_mode = "graph";
  std::string diagram_direction = "sublevel";
  diagram->add_option("--mode", diagram_mode, "graph | clique2")->check(CLI::IsMember(modes));
  diagram->add_option("--direction", diagram_direction, "sublevel | superlevel")
      ->check(CLI::IsMember(directions));

  sawgrid::RunConfig config;
  std::vector<std::string> feature_kinds;
  std::string grid_text = "10x10";
  std::string out_path;
  auto* features = app.add_subcommand("features", "Write one feature row per graph as CSV");
  add_dataset_options(features);
  std::string summary;
  std::string mode = "graph";
  std::string direction = "sublevel";
  std::string scope = "per-graph";
  features->add_option("--summary", summary, "saw | mpgf")->required()->check(CLI::IsMember(summaries));
  features->add_option("--filtration", feature_kinds, "Node function; repeat for mpgf axes")->required();
  features->add_option("--length", config.signature_length, "Saw signature length")->capture_default_str();
  features->add_option("--thresholds", config.saw_thresholds, "Saw filtration threshold count")
      ->capture_default_str();
  features->add_option("--grid", grid_text, "Grid sizes, e.g. 10x10 or 10")->capture_default_str();
  features->add_option("--mode", mode, "graph | clique2")->check(CLI::IsMember(modes));
  features->add_option("--direction", direction, "sublevel | superlevel")->check(CLI::IsMember(directions));
  features->add_option("--scope", scope, "per-graph | per-dataset")->check(CLI::IsMember(scopes));
  features->add_option("--out", out_path, "Output CSV path")->required();
  features->add_option("--workers", config.workers, "Worker threads")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (diagram->parsed()) {
      const auto kinds = parse_kinds({diagram_kind});
      request.filtration = kinds.front();
      request.mode = modes.at(diagram_mode);
      request.direction = directions.at(diagram_direction);
    }
    if (features->parsed()) {
      config.summary = summaries.at(summary);
      config.mode = modes.at(mode);
      config.direction = directions.at(direction);
      config.scope = scopes.at(scope);
      config.filtrations = parse_kinds(feature_kinds);
      config.grid = parse_grid(grid_text);
      config.dataset_dir = dataset_dir;
      config.name = name;
      config.out = out_path;
      config.validate();
    }
  } catch (const std::exception& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  sawgrid::GraphDataset dataset;
  try {
    dataset = sawgrid::load_tudataset(dataset_dir, name);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIngestion;
  }
  if (dataset.dropped_self_loops > 0) {
    std::cerr << "note: dropped " << dataset.dropped_self_loops << " self-loops\n";
  }

  try {
    if (info->parsed()) {
      sawgrid::print_info(std::cout, dataset);
      return EXIT_SUCCESS;
    }
    if (diagram->parsed()) {
      sawgrid::print_diagram(std::cout, dataset, request);
      return EXIT_SUCCESS;
    }

    const sawgrid::FeatureTable table = sawgrid::extract_features(dataset, config);
    std::ofstream csv(config.out, std::ios::binary);
    if (!csv) {
      std::cerr << "error: cannot write " << config.out << '\n';
      return EXIT_FAILURE;
    }
    sawgrid::write_feature_csv(csv, table);
    const std::string report_path = config.out.string() + ".report.csv";
    std::ofstream report(report_path, std::ios::binary);
    sawgrid::write_feature_report(report, table);
    log_times(table.times);
    for (const auto& row : table.rows) {
      if (!row.ok) std::cerr << "graph " << row.graph_id << " skipped: " << row.error << '\n';
    }
    const std::size_t failures = table.failures();
    std::cerr << "wrote " << table.rows.size() - failures << " rows x " << table.width + 2
              << " columns to " << config.out.string() << "; " << failures << " failed\n";
    return failures == 0 ? EXIT_SUCCESS : kExitPartial;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return EXIT_FAILURE;
  }
}
