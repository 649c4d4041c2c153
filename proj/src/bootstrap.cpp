#include "sgini/bootstrap.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "sgini/empirical_likelihood.hpp"
#include "sgini/errors.hpp"
#include "sgini/estimators.hpp"
#include "sgini/parallel.hpp"
#include "sgini/rng.hpp"

namespace sgini {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Stream-derivation salts keeping outer draws, inner draws and any other
// consumers of one master seed disjoint.
constexpr std::uint64_t kSaltOuter = 0x626f6f745f6f7574ull;
constexpr std::uint64_t kSaltInner = 0x626f6f745f696e6eull;

Eigen::ArrayXd resample_values(const Eigen::ArrayXd& from, RngStream& stream) {
  const Eigen::Index n = from.size();
  Eigen::ArrayXd out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out[i] = from[static_cast<Eigen::Index>(stream.next_index(static_cast<std::uint64_t>(n)))];
  }
  return out;
}

void validate(const BootstrapConfig& config, bool needs_inner) {
  if (config.outer_b < 2) throw DomainError("bootstrap: outer_b must be at least 2");
  if (needs_inner && config.inner_b < 2) throw DomainError("bootstrap: inner_b must be at least 2");
}

double sample_sd(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / (n - 1.0));
}

}  // namespace

IntervalResult bcel_interval(const Sample& sample, SGiniOrder order, double level,
                             const BootstrapConfig& config) {
  if (!(level > 0.0 && level < 1.0)) throw DomainError("bcel_interval: level outside (0, 1)");
  validate(config, false);

  if (sample.is_constant()) {
    IntervalResult result{0.0, 0.0, CiMethod::bcel, level, {}};
    result.diagnostics.degenerate = true;
    result.diagnostics.center = 0.0;
    return result;
  }

  const double r_tilde = plug_in_relative(sample, order);
  const int b_total = config.outer_b;

  std::vector<double> ratios(static_cast<std::size_t>(b_total));
  std::vector<char> degenerate(static_cast<std::size_t>(b_total), 0);
  detail::parallel_for(b_total, config.threads, [&](int b) {
    RngStream stream = derive_stream(config.seed, kSaltOuter, static_cast<std::uint64_t>(b + 1));
    const Sample resample{resample_values(sample.values(), stream)};
    if (resample.is_constant()) {
      degenerate[static_cast<std::size_t>(b)] = 1;
      ratios[static_cast<std::size_t>(b)] = kInf;
      return;
    }
    ratios[static_cast<std::size_t>(b)] = el_log_ratio(resample, order, r_tilde);
  });

  int degenerate_count = 0;
  for (char d : degenerate) degenerate_count += d;
  if (10 * degenerate_count > b_total) {
    throw CalibrationError("bcel_interval: more than 10% of bootstrap replicates are degenerate");
  }

  const double cutoff = detail::quantile_ceil(ratios, level);

  const ElProfile profile(sample, order);
  const auto [hull_lo, hull_hi] = profile.feasible_range();
  IntervalResult result = detail::profile_ratio_interval(
      profile.point_estimate(), cutoff, [&profile](double r) { return profile.log_ratio(r); },
      hull_lo, hull_hi, CiMethod::bcel, level);
  result.diagnostics.degenerate_replicates = degenerate_count;
  return result;
}

IntervalResult boot_t_interval(const Sample& sample, SGiniOrder order, double level,
                               const BootstrapConfig& config) {
  if (!(level > 0.0 && level < 1.0)) throw DomainError("boot_t_interval: level outside (0, 1)");
  validate(config, true);
  const int nu = order.integer_order();
  if (sample.size() < nu + 1) throw InsufficientSampleError("boot_t_interval: need n >= nu + 1");

  const double r_hat = ustat_relative(sample, order);
  const int b_total = config.outer_b;

  std::vector<double> estimates(static_cast<std::size_t>(b_total));
  std::vector<double> t_values(static_cast<std::size_t>(b_total));
  std::vector<char> dropped(static_cast<std::size_t>(b_total), 0);
  detail::parallel_for(b_total, config.threads, [&](int b) {
    RngStream outer = derive_stream(config.seed, kSaltOuter, static_cast<std::uint64_t>(b + 1));
    const Sample resample{resample_values(sample.values(), outer)};
    const double r_b = resample.is_constant() ? 0.0 : ustat_relative(resample, order);
    estimates[static_cast<std::size_t>(b)] = r_b;

    std::vector<double> inner(static_cast<std::size_t>(config.inner_b));
    for (int j = 0; j < config.inner_b; ++j) {
      RngStream stream = derive_stream(
          combine_seed(config.seed, static_cast<std::uint64_t>(b + 1)), kSaltInner,
          static_cast<std::uint64_t>(j + 1));
      const Sample second{resample_values(resample.values(), stream)};
      inner[static_cast<std::size_t>(j)] = second.is_constant() ? 0.0 : ustat_relative(second, order);
    }
    const double se_b = sample_sd(inner);
    if (se_b > 0.0) {
      t_values[static_cast<std::size_t>(b)] = (r_b - r_hat) / se_b;
    } else {
      dropped[static_cast<std::size_t>(b)] = 1;
    }
  });

  int dropped_count = 0;
  std::vector<double> kept;
  kept.reserve(static_cast<std::size_t>(b_total));
  for (int b = 0; b < b_total; ++b) {
    if (dropped[static_cast<std::size_t>(b)]) {
      ++dropped_count;
    } else {
      kept.push_back(t_values[static_cast<std::size_t>(b)]);
    }
  }
  if (10 * dropped_count > b_total) {
    throw CalibrationError(
        "boot_t_interval: more than 10% of replicates had degenerate inner resamples");
  }

  const double se = sample_sd(estimates);
  const double alpha = 1.0 - level;
  const double t_hi = detail::quantile_ceil(kept, 1.0 - 0.5 * alpha);
  const double t_lo = detail::quantile_ceil(kept, 0.5 * alpha);

  IntervalResult result{r_hat - t_hi * se, r_hat - t_lo * se, CiMethod::boot_t, level, {}};
  result.diagnostics.center = r_hat;
  result.diagnostics.dropped_replicates = dropped_count;
  return result;
}

}  // namespace sgini
