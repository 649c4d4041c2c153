#include "sgini/intervals.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "sgini/errors.hpp"

namespace sgini {

std::string to_string(CiMethod method) {
  switch (method) {
    case CiMethod::el: return "el";
    case CiMethod::jel: return "jel";
    case CiMethod::boot_t: return "boot_t";
    case CiMethod::bcel: return "bcel";
  }
  return "unknown";
}

namespace detail {
namespace {

// One-sided endpoint search. direction = +1 for the upper endpoint, -1 for
// the lower one; hull_edge is the open feasibility bound on that side.
double search_endpoint(double center, double threshold, const std::function<double(double)>& stat,
                       double hull_edge, int direction, double tol, double init_step,
                       bool* at_hull) {
  *at_hull = false;
  const double span = direction * (hull_edge - center);
  if (!(span > tol)) {
    *at_hull = true;
    return hull_edge;
  }

  // Expand until the statistic crosses the threshold or the hull is reached.
  double inside = center;
  double outside = std::numeric_limits<double>::quiet_NaN();
  double step = init_step;
  for (;;) {
    double cand = center + direction * step;
    bool clipped = false;
    if (direction * (hull_edge - cand) <= 0.0) {
      cand = hull_edge - direction * std::max(0.5 * tol, 1e-12 * std::abs(hull_edge));
      clipped = true;
      if (direction * (cand - inside) <= 0.0) {
        *at_hull = true;
        return hull_edge;
      }
    }
    if (stat(cand) > threshold) {
      outside = cand;
      break;
    }
    inside = cand;
    if (clipped) {
      // Feasible all the way to the hull: the hull edge is the endpoint.
      *at_hull = true;
      return hull_edge;
    }
    step *= 2.0;
  }

  while (std::abs(outside - inside) > tol) {
    const double mid = 0.5 * (inside + outside);
    if (stat(mid) > threshold) {
      outside = mid;
    } else {
      inside = mid;
    }
  }
  return 0.5 * (inside + outside);
}

}  // namespace

IntervalResult profile_ratio_interval(double center, double threshold,
                                      const std::function<double(double)>& stat, double hull_lo,
                                      double hull_hi, CiMethod method, double level, double tol,
                                      double init_step) {
  IntervalResult result{center, center, method, level, {}};
  result.diagnostics.center = center;
  result.diagnostics.threshold = threshold;

  if (std::isinf(threshold)) {
    result.lower = hull_lo;
    result.upper = hull_hi;
    result.diagnostics.lower_at_hull = true;
    result.diagnostics.upper_at_hull = true;
    return result;
  }

  result.upper = search_endpoint(center, threshold, stat, hull_hi, +1, tol, init_step,
                                 &result.diagnostics.upper_at_hull);
  result.lower = search_endpoint(center, threshold, stat, hull_lo, -1, tol, init_step,
                                 &result.diagnostics.lower_at_hull);
  return result;
}

double quantile_ceil(std::vector<double> values, double q) {
  if (values.empty()) throw DomainError("quantile_ceil: empty batch");
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError("quantile_ceil: q outside [0, 1]");
  std::sort(values.begin(), values.end());
  const double b = static_cast<double>(values.size());
  // Small downward nudge so binary representation of q never bumps an exact
  // integer product (e.g. 0.95 * 500) up to the next index.
  auto idx = static_cast<long>(std::ceil(q * b - 1e-9));
  idx = std::max(1L, std::min(static_cast<long>(values.size()), idx));
  return values[static_cast<std::size_t>(idx - 1)];
}

}  // namespace detail
}  // namespace sgini
