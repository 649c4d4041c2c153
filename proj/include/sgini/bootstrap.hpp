#pragma once

#include <cstdint>

#include "sgini/intervals.hpp"
#include "sgini/sample.hpp"

namespace sgini {

struct BootstrapConfig {
  int outer_b = 1000;
  int inner_b = 50;  // second-level resamples per replicate (boot_t only)
  std::uint64_t seed = 0;
  int threads = 1;  // replicate-level parallelism; derived streams keep results schedule-free
};

/// Bootstrap-calibrated EL interval: the chi-squared cutoff is replaced by
/// the upper-alpha sample quantile of the EL log-ratios of `outer_b`
/// resamples, each evaluated at the full-sample plug-in estimate.
IntervalResult bcel_interval(const Sample& sample, SGiniOrder order, double level,
                             const BootstrapConfig& config);

/// Studentized bootstrap interval for the U-statistic relative index; each
/// replicate's standard error comes from `inner_b` second-level resamples.
IntervalResult boot_t_interval(const Sample& sample, SGiniOrder order, double level,
                               const BootstrapConfig& config);

}  // namespace sgini
