#include "sgini/jackknife_el.hpp"

#include <cmath>
#include <limits>

#include "sgini/empirical_likelihood.hpp"
#include "sgini/errors.hpp"
#include "sgini/estimators.hpp"
#include "sgini/special_functions.hpp"

namespace sgini {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double PseudoValueProfile::log_ratio(double candidate) const {
  const Eigen::ArrayXd v = pseudo_values(candidate);
  const LagrangeSolution sol = solve_lambda(v);
  if (!sol.feasible) return kInf;
  return 2.0 * (1.0 + sol.lambda * v).log().sum();
}

std::pair<double, double> PseudoValueProfile::feasible_range() const {
  const Eigen::ArrayXd roots = w / xs;  // V_k crosses zero at R = w_k / X_k
  return {roots.minCoeff(), roots.maxCoeff()};
}

Eigen::ArrayXd loo_ustats(const Sample& sample, SGiniOrder order) {
  const int nu = order.integer_order();
  const Eigen::Index n = sample.size();
  if (n <= nu) throw InsufficientSampleError("loo_ustats: need n >= nu + 1");

  const Eigen::ArrayXd& sorted = sample.sorted();
  const Eigen::ArrayXi& perm = sample.sort_permutation();
  const Eigen::ArrayXd w = ustat_order_weights(n - 1, nu);
  const double total = sorted.sum();

  Eigen::ArrayXd loo(n);
  for (Eigen::Index d = 0; d < n; ++d) {
    double weighted = 0.0;
    Eigen::Index pos = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == d) continue;
      weighted += w[pos++] * sorted[j];
    }
    loo[perm[d]] = (total - sorted[d]) / static_cast<double>(n - 1) - weighted;
  }
  return loo;
}

PseudoValueProfile jel_profile(const Sample& sample, SGiniOrder order) {
  const int nu = order.integer_order();
  const double n = static_cast<double>(sample.size());
  const double s_hat = ustat_absolute(sample, order);
  const Eigen::ArrayXd loo = loo_ustats(sample, order);

  PseudoValueProfile profile;
  profile.xs = sample.values();
  profile.w = n * s_hat - (n - 1.0) * loo;
  profile.s_hat = s_hat;
  profile.r_hat = s_hat / sample.mean();
  profile.nu = nu;
  return profile;
}

Eigen::ArrayXd pseudo_values(const Sample& sample, SGiniOrder order, double candidate) {
  return jel_profile(sample, order).pseudo_values(candidate);
}

double jel_log_ratio(const Sample& sample, SGiniOrder order, double candidate) {
  return jel_profile(sample, order).log_ratio(candidate);
}

IntervalResult jel_interval(const Sample& sample, SGiniOrder order, double level) {
  if (!(level > 0.0 && level < 1.0)) throw DomainError("jel_interval: level outside (0, 1)");

  if (sample.is_constant()) {
    IntervalResult result{0.0, 0.0, CiMethod::jel, level, {}};
    result.diagnostics.degenerate = true;
    result.diagnostics.center = 0.0;
    return result;
  }

  const PseudoValueProfile profile = jel_profile(sample, order);
  const double threshold = chi_squared_quantile(level, 1.0);
  const auto [hull_lo, hull_hi] = profile.feasible_range();
  return detail::profile_ratio_interval(
      profile.r_hat, threshold, [&profile](double r) { return profile.log_ratio(r); }, hull_lo,
      hull_hi, CiMethod::jel, level);
}

JELTestResult jel_test(const Sample& sample, SGiniOrder order, double r0, double level) {
  if (!(level > 0.0 && level < 1.0)) throw DomainError("jel_test: level outside (0, 1)");
  if (!(r0 >= 0.0 && r0 <= 1.0)) throw DomainError("jel_test: r0 outside [0, 1]");

  // level is the significance level: reject iff J(r0) > chi2_{1-level}(1),
  // equivalently iff the p-value falls below level.
  const PseudoValueProfile profile = jel_profile(sample, order);
  const double statistic = profile.log_ratio(r0);
  const double p_value = std::isinf(statistic) ? 0.0 : chi_squared_sf(statistic, 1.0);
  const bool reject = statistic > chi_squared_quantile(1.0 - level, 1.0);
  return {statistic, p_value, reject, r0, level};
}

}  // namespace sgini
