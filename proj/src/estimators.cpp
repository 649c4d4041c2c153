#include "sgini/estimators.hpp"

#include <cmath>
#include <vector>

#include "sgini/errors.hpp"

namespace sgini {

Eigen::ArrayXd plug_in_order_weights(Eigen::Index n, double nu) {
  Eigen::ArrayXd w(n);
  double prev = 1.0;  // ((n - 0) / n)^nu
  for (Eigen::Index i = 0; i < n; ++i) {
    const double next =
        i + 1 < n ? std::pow(static_cast<double>(n - i - 1) / static_cast<double>(n), nu) : 0.0;
    w[i] = prev - next;
    prev = next;
  }
  return w;
}

Eigen::ArrayXd ustat_order_weights(Eigen::Index n, int nu) {
  Eigen::ArrayXd w = Eigen::ArrayXd::Zero(n);
  double cur = static_cast<double>(nu) / static_cast<double>(n);  // C(n-1, nu-1) / C(n, nu)
  for (Eigen::Index i = 0; i < n; ++i) {
    w[i] = cur;
    const double below = static_cast<double>(n - 1 - i);  // order statistics below position i+1
    if (below <= 0.0) break;
    cur *= (below - static_cast<double>(nu - 1)) / below;
    if (cur <= 0.0) break;  // positions with fewer than nu-1 values below get zero weight
  }
  return w;
}

double plug_in_absolute(const Sample& sample, SGiniOrder order) {
  const Eigen::ArrayXd w = plug_in_order_weights(sample.size(), order.nu());
  return sample.mean() - (w * sample.sorted()).sum();
}

double plug_in_relative(const Sample& sample, SGiniOrder order) {
  return plug_in_absolute(sample, order) / sample.mean();
}

double ustat_absolute(const Sample& sample, SGiniOrder order) {
  const int nu = order.integer_order();
  if (sample.size() < nu) {
    throw InsufficientSampleError("ustat_absolute: need n >= nu observations");
  }
  const Eigen::ArrayXd w = ustat_order_weights(sample.size(), nu);
  return sample.mean() - (w * sample.sorted()).sum();
}

double ustat_relative(const Sample& sample, SGiniOrder order) {
  return ustat_absolute(sample, order) / sample.mean();
}

double ustat_brute_force(const Sample& sample, SGiniOrder order, std::size_t subset_cap) {
  const int nu = order.integer_order();
  const Eigen::Index n = sample.size();
  if (n < nu) throw InsufficientSampleError("ustat_brute_force: need n >= nu observations");

  double count = 1.0;  // C(n, nu)
  for (int j = 1; j <= nu; ++j) count *= static_cast<double>(n - nu + j) / j;
  if (count > static_cast<double>(subset_cap)) {
    throw OracleSizeError("ustat_brute_force: C(n, nu) exceeds the enumeration cap");
  }

  const Eigen::ArrayXd& x = sample.sorted();
  std::vector<Eigen::Index> c(static_cast<std::size_t>(nu));
  for (int j = 0; j < nu; ++j) c[j] = j;

  long double total = 0.0L;
  std::size_t subsets = 0;
  for (;;) {
    double s = 0.0;
    for (int j = 0; j < nu; ++j) s += x[c[j]];
    total += (s - nu * x[c[0]]) / nu;  // sorted subset, so c[0] indexes the minimum
    ++subsets;

    int j = nu - 1;
    while (j >= 0 && c[j] == n - nu + j) --j;
    if (j < 0) break;
    ++c[j];
    for (int k = j + 1; k < nu; ++k) c[k] = c[k - 1] + 1;
  }
  return static_cast<double>(total / static_cast<long double>(subsets));
}

std::pair<double, double> gmd_and_gini(const Sample& sample) {
  if (sample.size() < 2) throw InsufficientSampleError("gmd_and_gini: need n >= 2");
  const SGiniOrder two(2.0);
  const double abs2 = ustat_absolute(sample, two);  // average pair kernel |Xi - Xj| / 2
  return {2.0 * abs2, abs2 / sample.mean()};
}

EstimateResult plug_in_estimate(const Sample& sample, SGiniOrder order) {
  const double abs = plug_in_absolute(sample, order);
  return {abs, abs / sample.mean(), EstimatorPath::plug_in};
}

EstimateResult ustat_estimate(const Sample& sample, SGiniOrder order) {
  const double abs = ustat_absolute(sample, order);
  return {abs, abs / sample.mean(), EstimatorPath::u_statistic};
}

}  // namespace sgini
