#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <utility>

#include "sgini/sample.hpp"

namespace sgini {

enum class EstimatorPath { plug_in, u_statistic };

struct EstimateResult {
  double absolute;  // income units
  double relative;  // absolute / sample mean
  EstimatorPath estimator;
};

/// L-statistic weights ((n-i+1)^nu - (n-i)^nu) / n^nu for sorted position
/// i = 1..n, computed from normalized powers so large n stays in range.
Eigen::ArrayXd plug_in_order_weights(Eigen::Index n, double nu);

/// U-statistic weights C(n-i, nu-1) / C(n, nu) for sorted position i = 1..n,
/// via the incremental ratio recurrence (no big-integer arithmetic).
Eigen::ArrayXd ustat_order_weights(Eigen::Index n, int nu);

/// Absolute S-Gini, plug-in form: mean - sum of weighted order statistics.
double plug_in_absolute(const Sample& sample, SGiniOrder order);

/// Relative S-Gini, plug-in form; equals plug_in_absolute / mean.
double plug_in_relative(const Sample& sample, SGiniOrder order);

/// Absolute S-Gini, unbiased U-statistic with kernel
/// (x_1 + ... + x_nu - nu * min) / nu, evaluated by its order-statistic
/// closed form. Requires integer nu >= 2 and n >= nu.
double ustat_absolute(const Sample& sample, SGiniOrder order);

/// Relative S-Gini: ustat_absolute / mean.
double ustat_relative(const Sample& sample, SGiniOrder order);

/// Testing oracle: enumerates all C(n, nu) subsets and averages the kernel.
/// Refuses to enumerate more than subset_cap subsets.
double ustat_brute_force(const Sample& sample, SGiniOrder order,
                         std::size_t subset_cap = 2'000'000);

/// (Gini mean difference, Gini index). GMD is the average absolute pair
/// difference; Gini = GMD / (2 * mean) and matches ustat_relative at nu = 2
/// bit for bit.
std::pair<double, double> gmd_and_gini(const Sample& sample);

EstimateResult plug_in_estimate(const Sample& sample, SGiniOrder order);
EstimateResult ustat_estimate(const Sample& sample, SGiniOrder order);

}  // namespace sgini
