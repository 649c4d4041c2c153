#pragma once

#include <Eigen/Dense>
#include <utility>

#include "sgini/intervals.hpp"
#include "sgini/sample.hpp"

namespace sgini {

/// Jackknife pseudo-value machinery for the ratio estimating equation.
/// The estimating function is affine in R, so the leave-one-out pieces are
/// collapsed once into w_k = n S_hat - (n-1) S_loo_k and every candidate R
/// costs O(n): V_k(R) = R X_k - w_k.
struct PseudoValueProfile {
  Eigen::ArrayXd xs;  // observations, original order
  Eigen::ArrayXd w;   // w_k = n S_hat - (n-1) S_loo_k
  double s_hat;       // full-sample U-statistic
  double r_hat;       // S_hat / mean
  int nu;

  Eigen::ArrayXd pseudo_values(double candidate) const { return candidate * xs - w; }

  /// J(candidate) = 2 sum log(1 + lambda1 V_k); +infinity off the hull.
  double log_ratio(double candidate) const;

  /// Open range of candidates with 0 inside the pseudo-value hull.
  std::pair<double, double> feasible_range() const;
};

struct JELTestResult {
  double statistic;  // J(r0), nonnegative
  double p_value;    // chi-squared(1) survival function at the statistic
  bool reject;
  double r0;
  double level;
};

/// Leave-one-out U-statistics S_loo_k, original observation order.
/// Requires integer nu >= 2 and n >= nu + 1.
Eigen::ArrayXd loo_ustats(const Sample& sample, SGiniOrder order);

PseudoValueProfile jel_profile(const Sample& sample, SGiniOrder order);

Eigen::ArrayXd pseudo_values(const Sample& sample, SGiniOrder order, double candidate);

double jel_log_ratio(const Sample& sample, SGiniOrder order, double candidate);

/// {R : J(R) <= chi2_level(1)}; always contains r_hat. Constant samples
/// yield the degenerate interval [0, 0].
IntervalResult jel_interval(const Sample& sample, SGiniOrder order, double level);

/// Test of R_nu = r0: reject when J(r0) exceeds the chi-squared(1) quantile.
JELTestResult jel_test(const Sample& sample, SGiniOrder order, double r0, double level);

}  // namespace sgini
