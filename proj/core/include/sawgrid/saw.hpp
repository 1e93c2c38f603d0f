#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "sawgrid/persistence.hpp"

namespace sawgrid {

// Ramp half-width: a quarter of the mean threshold gap, clamped below half the
// smallest gap so neighbouring ramps never overlap.
double default_lag(std::span<const double> thresholds);

// Ramped indicator of [birth, death]: rises linearly over [birth, birth+lag],
// stays at 1, falls linearly over [death-lag, death]. Bars shorter than
// 2*lag become a symmetric tent of height (death-birth)/(2*lag).
double generator_value(double birth, double death, double lag, double t);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Sum of ramped generators over the bars of one diagram. Zero outside the
// union of its bars.
class SawFunction {
 public:
  struct Bar {
    double birth;
    double death;
  };

  SawFunction(std::vector<Bar> bars, double lag, Interval domain);

  // Lag from default_lag(pd.thresholds), domain [first threshold, essential cap].
  static SawFunction from_diagram(const PersistenceDiagram& pd);
  static SawFunction from_diagram(const PersistenceDiagram& pd, double lag);

  double operator()(double t) const { return evaluate(t); }
  double evaluate(double t) const;

  const std::vector<Bar>& bars() const noexcept { return bars_; }
  double lag() const noexcept { return lag_; }
  Interval domain() const noexcept { return domain_; }

  // Sorted, de-duplicated abscissae where the slope may change.
  std::vector<double> breakpoints() const;

  // Exact integral over the real line.
  double integral() const;

 private:
  std::vector<Bar> bars_;
  double lag_;
  Interval domain_;
};

struct SawSignature {
  std::vector<double> samples;
  std::vector<double> sample_points;
};

// Evaluates S at L evenly spaced points spanning its domain, endpoints included.
SawSignature signature(const SawFunction& s, std::size_t length);

struct BirthDeathCounts {
  std::vector<double> thresholds;
  std::vector<long long> births;
  std::vector<long long> deaths;
};

// Births and deaths landing on each threshold. Deaths at the essential cap are
// not counted. Throws std::invalid_argument for a coordinate that is neither a
// threshold nor the cap.
BirthDeathCounts birth_death_counts(const PersistenceDiagram& pd);

// Reads births and deaths back off the zigzags of S alone: at each threshold,
// the drop from the next plateau gives the births and the drop from the
// previous plateau gives the deaths. Requires 2*lag below every gap.
BirthDeathCounts recover_counts(const SawFunction& s, std::span<const double> thresholds);

// births + deaths at threshold i.
long long tension(const BirthDeathCounts& counts, std::size_t i);

double l1_distance(const SawFunction& a, const SawFunction& b);
// Integral of |a - b| + |a' - b'|.
double l2_sobolev_distance(const SawFunction& a, const SawFunction& b);
double sup_distance(const SawFunction& a, const SawFunction& b);

enum class WassersteinOrder { kOne, kInfinity };

inline constexpr std::size_t kMaxWassersteinPairs = 64;

class DiagramTooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Exact W_1 or bottleneck distance with the sup-norm ground metric and
// diagonal projections. Essential pairs are treated as finite points at the
// cap. Throws DiagramTooLarge above kMaxWassersteinPairs per side.
double wasserstein(std::span<const PersistencePair> a, std::span<const PersistencePair> b,
                   WassersteinOrder order);

}  // namespace sawgrid
