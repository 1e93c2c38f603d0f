#include "sawgrid/saw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sawgrid/assignment.hpp"

namespace sawgrid {

namespace {

constexpr double kLagClampSlack = 1e-9;

std::vector<double> merged_breakpoints(const SawFunction& a, const SawFunction& b) {
  std::vector<double> xs = a.breakpoints();
  const std::vector<double> more = b.breakpoints();
  xs.insert(xs.end(), more.begin(), more.end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

// Integral of |h| over [0, width] for h linear from h0 to h1.
double abs_linear_integral(double h0, double h1, double width) {
  if ((h0 >= 0.0 && h1 >= 0.0) || (h0 <= 0.0 && h1 <= 0.0)) {
    return 0.5 * (std::abs(h0) + std::abs(h1)) * width;
  }
  // Sign change: two triangles meeting at the root.
  return 0.5 * width * (h0 * h0 + h1 * h1) / (std::abs(h0) + std::abs(h1));
}

std::size_t threshold_index(std::span<const double> thresholds, double x) {
  const auto it = std::lower_bound(thresholds.begin(), thresholds.end(), x);
  if (it == thresholds.end() || *it != x) return thresholds.size();
  return static_cast<std::size_t>(it - thresholds.begin());
}

}  // namespace

double default_lag(std::span<const double> thresholds) {
  if (thresholds.size() < 2) throw std::invalid_argument("at least two thresholds are required");
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < thresholds.size(); ++i) {
    const double gap = thresholds[i] - thresholds[i - 1];
    if (!(gap > 0.0)) throw std::invalid_argument("thresholds must be strictly increasing");
    min_gap = std::min(min_gap, gap);
  }
  const double mean_gap =
      (thresholds.back() - thresholds.front()) / static_cast<double>(thresholds.size() - 1);
  return std::min(0.25 * mean_gap, 0.5 * min_gap * (1.0 - kLagClampSlack));
}

double generator_value(double birth, double death, double lag, double t) {
  if (t <= birth || t >= death) return 0.0;
  return std::min(1.0, std::min(t - birth, death - t) / lag);
}

SawFunction::SawFunction(std::vector<Bar> bars, double lag, Interval domain)
    : bars_(std::move(bars)), lag_(lag), domain_(domain) {
  if (!(lag_ > 0.0) || !std::isfinite(lag_)) throw std::invalid_argument("lag must be positive");
  if (!(domain_.lo <= domain_.hi)) throw std::invalid_argument("empty saw function domain");
  for (const Bar& b : bars_) {
    if (!(b.birth < b.death)) throw std::invalid_argument("bar with birth >= death");
  }
}

SawFunction SawFunction::from_diagram(const PersistenceDiagram& pd) {
  return from_diagram(pd, default_lag(pd.thresholds));
}

SawFunction SawFunction::from_diagram(const PersistenceDiagram& pd, double lag) {
  std::vector<Bar> bars;
  bars.reserve(pd.pairs.size());
  for (const auto& p : pd.pairs) bars.push_back({p.birth, p.death});
  const Interval domain{pd.thresholds.empty() ? 0.0 : pd.thresholds.front(), pd.essential_cap};
  return SawFunction(std::move(bars), lag, domain);
}

double SawFunction::evaluate(double t) const {
  double sum = 0.0;
  for (const Bar& b : bars_) sum += generator_value(b.birth, b.death, lag_, t);
  return sum;
}

std::vector<double> SawFunction::breakpoints() const {
  std::vector<double> xs;
  xs.reserve(bars_.size() * 4);
  for (const Bar& b : bars_) {
    xs.push_back(b.birth);
    xs.push_back(b.death);
    if (b.death - b.birth >= 2.0 * lag_) {
      xs.push_back(b.birth + lag_);
      xs.push_back(b.death - lag_);
    } else {
      xs.push_back(0.5 * (b.birth + b.death));
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

double SawFunction::integral() const {
  const std::vector<double> xs = breakpoints();
  double area = 0.0;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    area += 0.5 * (evaluate(xs[i - 1]) + evaluate(xs[i])) * (xs[i] - xs[i - 1]);
  }
  return area;
}

SawSignature signature(const SawFunction& s, std::size_t length) {
  if (length < 2) throw std::invalid_argument("signature length must be at least 2");
  SawSignature out;
  out.samples.resize(length);
  out.sample_points.resize(length);
  const auto [lo, hi] = s.domain();
  const double steps = static_cast<double>(length - 1);
  for (std::size_t k = 0; k < length; ++k) {
    const double t = k + 1 == length ? hi : lo + (hi - lo) * static_cast<double>(k) / steps;
    out.sample_points[k] = t;
    out.samples[k] = s.evaluate(t);
  }
  return out;
}

BirthDeathCounts birth_death_counts(const PersistenceDiagram& pd) {
  BirthDeathCounts c;
  c.thresholds = pd.thresholds;
  c.births.assign(pd.thresholds.size(), 0);
  c.deaths.assign(pd.thresholds.size(), 0);
  for (const auto& p : pd.pairs) {
    const std::size_t b = threshold_index(pd.thresholds, p.birth);
    if (b == pd.thresholds.size()) {
      throw std::invalid_argument("birth " + std::to_string(p.birth) + " is not a threshold");
    }
    ++c.births[b];
    if (p.essential || p.death == pd.essential_cap) continue;
    const std::size_t d = threshold_index(pd.thresholds, p.death);
    if (d == pd.thresholds.size()) {
      throw std::invalid_argument("death " + std::to_string(p.death) + " is not a threshold");
    }
    ++c.deaths[d];
  }
  return c;
}

BirthDeathCounts recover_counts(const SawFunction& s, std::span<const double> thresholds) {
  const std::size_t n = thresholds.size();
  if (n == 0) throw std::invalid_argument("no thresholds");
  BirthDeathCounts c;
  c.thresholds.assign(thresholds.begin(), thresholds.end());
  c.births.resize(n);
  c.deaths.resize(n);
  double previous_plateau = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double next = i + 1 < n ? thresholds[i + 1] : s.domain().hi;
    const double plateau = s.evaluate(0.5 * (thresholds[i] + next));
    const double at = s.evaluate(thresholds[i]);
    c.births[i] = std::llround(plateau - at);
    c.deaths[i] = std::llround(previous_plateau - at);
    previous_plateau = plateau;
  }
  return c;
}

long long tension(const BirthDeathCounts& counts, std::size_t i) {
  return counts.births.at(i) + counts.deaths.at(i);
}

double l1_distance(const SawFunction& a, const SawFunction& b) {
  const std::vector<double> xs = merged_breakpoints(a, b);
  double total = 0.0;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double h0 = a.evaluate(xs[i - 1]) - b.evaluate(xs[i - 1]);
    const double h1 = a.evaluate(xs[i]) - b.evaluate(xs[i]);
    total += abs_linear_integral(h0, h1, xs[i] - xs[i - 1]);
  }
  return total;
}

double l2_sobolev_distance(const SawFunction& a, const SawFunction& b) {
  const std::vector<double> xs = merged_breakpoints(a, b);
  double total = 0.0;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double h0 = a.evaluate(xs[i - 1]) - b.evaluate(xs[i - 1]);
    const double h1 = a.evaluate(xs[i]) - b.evaluate(xs[i]);
    // The difference is linear on the piece, so |slope| * width = |h1 - h0|.
    total += abs_linear_integral(h0, h1, xs[i] - xs[i - 1]) + std::abs(h1 - h0);
  }
  return total;
}

double sup_distance(const SawFunction& a, const SawFunction& b) {
  double best = 0.0;
  for (double x : merged_breakpoints(a, b)) best = std::max(best, std::abs(a.evaluate(x) - b.evaluate(x)));
  return best;
}

double wasserstein(std::span<const PersistencePair> a, std::span<const PersistencePair> b,
                   WassersteinOrder order) {
  if (a.size() > kMaxWassersteinPairs || b.size() > kMaxWassersteinPairs) {
    throw DiagramTooLarge("wasserstein: diagrams above " + std::to_string(kMaxWassersteinPairs) +
                          " pairs are not supported; subsample the diagrams first");
  }
  const std::size_t n = a.size() + b.size();
  if (n == 0) return 0.0;

  const auto to_diagonal = [](const PersistencePair& p) { return 0.5 * (p.death - p.birth); };
  // Rows: points of a, then diagonal slots for b. Columns: points of b, then
  // diagonal slots for a.
  std::vector<double> cost(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double c = 0.0;
      if (i < a.size() && j < b.size()) {
        c = std::max(std::abs(a[i].birth - b[j].birth), std::abs(a[i].death - b[j].death));
      } else if (i < a.size()) {
        c = to_diagonal(a[i]);
      } else if (j < b.size()) {
        c = to_diagonal(b[j]);
      }
      cost[i * n + j] = c;
    }
  }

  if (order == WassersteinOrder::kOne) return solve_assignment(cost, n).cost;

  // Bottleneck: smallest matrix entry admitting a perfect matching.
  std::vector<double> levels(cost.begin(), cost.end());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  std::size_t lo = 0;
  std::size_t hi = levels.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    const double cap = levels[mid];
    if (has_perfect_matching(n, [&](std::size_t i, std::size_t j) { return cost[i * n + j] <= cap; })) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return levels[lo];
}

}  // namespace sawgrid
