#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace sgini {

enum class CiMethod { el, jel, boot_t, bcel };

std::string to_string(CiMethod method);

struct IntervalDiagnostics {
  double center = std::numeric_limits<double>::quiet_NaN();     // estimate the interval is anchored at
  double threshold = std::numeric_limits<double>::quiet_NaN();  // log-ratio or quantile cutoff used
  bool degenerate = false;        // constant sample, interval collapsed to [0, 0]
  bool lower_at_hull = false;     // endpoint clamped at the feasibility hull edge
  bool upper_at_hull = false;
  int degenerate_replicates = 0;  // bootstrap: all-equal resamples
  int dropped_replicates = 0;     // boot_t: replicates with zero inner standard error
};

struct IntervalResult {
  double lower;
  double upper;
  CiMethod method;
  double level;
  IntervalDiagnostics diagnostics;

  double length() const { return upper - lower; }
  bool contains(double r) const { return lower <= r && r <= upper; }
};

namespace detail {

/// Sweeps a nonnegative profile statistic outward from its minimizer and
/// returns {r : stat(r) <= threshold} as an interval. The statistic must be
/// +infinity outside the open hull (hull_lo, hull_hi). Bracket expansion
/// starts at init_step and doubles; endpoints are bisected to within tol.
IntervalResult profile_ratio_interval(double center, double threshold,
                                      const std::function<double(double)>& stat, double hull_lo,
                                      double hull_hi, CiMethod method, double level,
                                      double tol = 1e-6, double init_step = 0.05);

/// q-quantile of a finite batch: element at 1-based index ceil(q * B) of the
/// sorted values (shared convention for every bootstrap quantile here).
double quantile_ceil(std::vector<double> values, double q);

}  // namespace detail
}  // namespace sgini
