#include "sawgrid/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <iomanip>
#include <limits>
#include <mutex>
#include <numeric>
#include <ostream>
#include <thread>

#include "sawgrid/format.hpp"
#include "sawgrid/mpgf.hpp"
#include "sawgrid/saw.hpp"

namespace sawgrid {

namespace {

using Clock = std::chrono::steady_clock;

// Runs task(i) for i in [0, n) on up to `workers` threads.
template <typename Task>
void parallel_for(std::size_t n, std::size_t workers, Task&& task) {
  workers = std::max<std::size_t>(1, std::min(workers, n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) task(i);
    });
  }
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
};

// Dataset-wide thresholds; a constant function follows the per-graph rules.
std::vector<double> scoped_thresholds(const Range& r, std::size_t m, bool keep_size, Direction direction) {
  if (r.lo != r.hi) return make_thresholds(r.lo, r.hi, m);
  const double lo = direction == Direction::kSuperlevel ? r.lo - 1.0 : r.lo;
  return make_thresholds(lo, lo + 1.0, keep_size ? m : 2);
}

}  // namespace

void RunConfig::validate() const {
  if (name.empty()) throw UsageError("a dataset name is required");
  if (filtrations.empty()) throw UsageError("at least one --filtration is required");
  if (workers == 0) throw UsageError("--workers must be at least 1");
  if (summary == SummaryKind::kSaw) {
    if (filtrations.size() != 1) throw UsageError("saw summaries take exactly one filtration");
    if (signature_length < 2) throw UsageError("--length must be at least 2");
    if (saw_thresholds < 2) throw UsageError("--thresholds must be at least 2");
    return;
  }
  if (filtrations.size() < 2) throw UsageError("mpgf summaries need at least two filtrations");
  if (grid.size() != 1 && grid.size() != filtrations.size()) {
    throw UsageError("--grid needs one size per filtration");
  }
  for (std::size_t m : grid) {
    if (m < 2) throw UsageError("grid sizes must be at least 2");
  }
  if (filtrations.size() > 2 && direction == Direction::kSuperlevel) {
    throw UsageError("superlevel grids are only defined for two filtrations");
  }
}

std::vector<std::size_t> RunConfig::grid_sizes() const {
  if (grid.size() == 1) return std::vector<std::size_t>(filtrations.size(), grid.front());
  return grid;
}

std::size_t RunConfig::feature_width() const {
  if (summary == SummaryKind::kSaw) return 2 * signature_length;
  const auto sizes = grid_sizes();
  return 2 * std::accumulate(sizes.begin(), sizes.end(), std::size_t{1}, std::multiplies<>());
}

std::size_t FeatureTable::failures() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const FeatureRow& r) { return !r.ok; }));
}

FeatureTable extract_features(const GraphDataset& dataset, const RunConfig& config) {
  config.validate();
  const std::size_t n = dataset.size();
  const std::size_t kinds = config.filtrations.size();

  FeatureTable table;
  table.width = config.feature_width();
  table.rows.resize(n);
  std::vector<std::vector<NodeValues>> values(n);
  std::vector<PhaseTimes> times(n);

  parallel_for(n, config.workers, [&](std::size_t i) {
    FeatureRow& row = table.rows[i];
    row.graph_id = i;
    row.label = dataset.labels[i];
    const auto start = Clock::now();
    try {
      for (FiltrationKind kind : config.filtrations) {
        values[i].push_back(compute_filtration(dataset.graphs[i], kind));
      }
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
    times[i].filtration = Clock::now() - start;
  });

  std::vector<Range> ranges(kinds);
  if (config.scope == ThresholdScope::kPerDataset) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!table.rows[i].ok) continue;
      for (std::size_t k = 0; k < kinds; ++k) {
        ranges[k].lo = std::min(ranges[k].lo, values[i][k].min());
        ranges[k].hi = std::max(ranges[k].hi, values[i][k].max());
      }
    }
  }
  const bool per_dataset = config.scope == ThresholdScope::kPerDataset;
  const auto sizes = config.grid_sizes();

  parallel_for(n, config.workers, [&](std::size_t i) {
    FeatureRow& row = table.rows[i];
    if (!row.ok) return;
    const Graph& g = dataset.graphs[i];
    try {
      if (config.summary == SummaryKind::kSaw) {
        const NodeValues& f = values[i][0];
        auto thresholds = per_dataset ? scoped_thresholds(ranges[0], config.saw_thresholds, false, config.direction)
                                      : make_thresholds(f, config.saw_thresholds, config.direction);
        const FiltrationSpec spec(f, std::move(thresholds), config.direction, config.mode);
        auto start = Clock::now();
        const PersistenceDiagram pd0 = persistence_dim0(g, spec);
        const PersistenceDiagram pd1 = persistence_dim1(g, spec);
        times[i].persistence = Clock::now() - start;
        start = Clock::now();
        row.features.reserve(table.width);
        for (const auto* pd : {&pd0, &pd1}) {
          const SawSignature sig = signature(SawFunction::from_diagram(*pd), config.signature_length);
          row.features.insert(row.features.end(), sig.samples.begin(), sig.samples.end());
        }
        row.lacks_b1 = pd1.empty();
        times[i].summary = Clock::now() - start;
        return;
      }

      std::vector<std::vector<double>> axes;
      for (std::size_t k = 0; k < kinds; ++k) {
        axes.push_back(per_dataset ? scoped_thresholds(ranges[k], sizes[k], true, config.direction)
                                   : axis_thresholds(values[i][k], sizes[k], config.direction));
      }
      auto start = Clock::now();
      std::array<std::vector<std::size_t>, 2> cells;
      if (kinds == 2) {
        const GridSpec2 spec{axes[0], axes[1], config.direction, CellConvention::kUpperEdge};
        MPGFGrid grid = compute_mpgf2(g, values[i][0], values[i][1], spec, config.mode);
        times[i].persistence = Clock::now() - start;
        start = Clock::now();
        row.features = flatten(grid);
        cells = std::move(grid.values);
      } else {
        MPGFGridD grid = compute_mpgf_d(g, values[i], std::move(axes), config.mode);
        times[i].persistence = Clock::now() - start;
        start = Clock::now();
        row.features = flatten(grid);
        cells = std::move(grid.values);
      }
      row.lacks_b1 = std::all_of(cells[1].begin(), cells[1].end(), [](std::size_t v) { return v == 0; });
      times[i].summary = Clock::now() - start;
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
      row.features.clear();
    }
  });

  for (const PhaseTimes& t : times) {
    table.times.filtration += t.filtration;
    table.times.persistence += t.persistence;
    table.times.summary += t.summary;
  }
  return table;
}

void write_feature_csv(std::ostream& out, const FeatureTable& table) {
  out << "graph_id,label";
  for (std::size_t k = 0; k < table.width; ++k) out << ",f_" << k;
  out << '\n';
  for (const FeatureRow& row : table.rows) {
    if (!row.ok) continue;
    out << row.graph_id << ',' << row.label;
    for (double v : row.features) out << ',' << format_number(v);
    out << '\n';
  }
}

void write_feature_report(std::ostream& out, const FeatureTable& table) {
  out << "graph_id,status,detail\n";
  for (const FeatureRow& row : table.rows) {
    if (!row.ok) {
      std::string detail = row.error;
      std::replace(detail.begin(), detail.end(), ',', ';');
      std::replace(detail.begin(), detail.end(), '\n', ' ');
      out << row.graph_id << ",failed," << detail << '\n';
    } else if (row.lacks_b1) {
      out << row.graph_id << ",no_b1,all B1 features are zero\n";
    }
  }
}

void print_info(std::ostream& out, const GraphDataset& dataset) {
  const DatasetStats s = dataset_stats(dataset);
  out << "dataset,num_graphs,num_classes,avg_num_nodes,avg_num_edges\n";
  out << dataset.name << ',' << s.num_graphs << ',' << s.num_classes << ',' << std::fixed
      << std::setprecision(4) << s.mean_nodes << ',' << s.mean_edges << '\n';
  out << std::defaultfloat;
}

void print_diagram(std::ostream& out, const GraphDataset& dataset, const DiagramRequest& request) {
  if (request.graph_id >= dataset.size()) {
    throw std::out_of_range("graph id " + std::to_string(request.graph_id) + " is outside [0, " +
                            std::to_string(dataset.size()) + ")");
  }
  const Graph& g = dataset.graphs[request.graph_id];
  NodeValues f = compute_filtration(g, request.filtration);
  auto thresholds = make_thresholds(f, request.thresholds, request.direction);
  const FiltrationSpec spec(std::move(f), std::move(thresholds), request.direction, request.mode);
  const PersistenceDiagram pd0 = persistence_dim0(g, spec);
  const PersistenceDiagram pd1 = persistence_dim1(g, spec);
  const BettiCurves curves = betti_curves(g, spec);
  const BirthDeathCounts c0 = birth_death_counts(pd0);
  const BirthDeathCounts c1 = birth_death_counts(pd1);

  out << "# graph " << request.graph_id << " filtration " << to_string(request.filtration)
      << " direction " << to_string(request.direction) << " mode " << to_string(request.mode)
      << '\n';
  out << "# dim birth death essential\n";
  out << "[pd0]\n";
  write_diagram(out, PersistenceDiagram{0, pd0.sorted_pairs(), pd0.thresholds, pd0.essential_cap});
  out << "[pd1]\n";
  write_diagram(out, PersistenceDiagram{1, pd1.sorted_pairs(), pd1.thresholds, pd1.essential_cap});
  out << "[curves]\n";
  out << "threshold,b0,b1,tension0,tension1\n";
  for (std::size_t i = 0; i < curves.b0.thresholds.size(); ++i) {
    out << format_number(curves.b0.thresholds[i]) << ',' << curves.b0.values[i] << ','
        << curves.b1.values[i] << ',' << tension(c0, i) << ',' << tension(c1, i) << '\n';
  }
}

}  // namespace sawgrid
