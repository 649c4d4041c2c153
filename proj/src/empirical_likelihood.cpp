#include "sgini/empirical_likelihood.hpp"

#include <cmath>
#include <limits>

#include "sgini/errors.hpp"
#include "sgini/special_functions.hpp"

namespace sgini {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// (1/n) sum v_i / (1 + lambda v_i); +-infinity when lambda leaves the
// region where every 1 + lambda v_i stays positive.
double lambda_equation(const Eigen::ArrayXd& v, double lambda) {
  const Eigen::Index n = v.size();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = 1.0 + lambda * v[i];
    if (d <= 0.0) return v[i] > 0.0 ? kInf : -kInf;
    sum += v[i] / d;
  }
  return sum / static_cast<double>(n);
}

}  // namespace

LagrangeSolution solve_lambda(const Eigen::ArrayXd& values) {
  const Eigen::Index n = values.size();
  if (n < 1) throw DomainError("solve_lambda: empty constraint vector");
  if (!values.isFinite().all()) throw DomainError("solve_lambda: non-finite constraint value");

  const double vmin = values.minCoeff();
  const double vmax = values.maxCoeff();

  LagrangeSolution sol;
  if (vmin == 0.0 && vmax == 0.0) {
    sol.lambda = 0.0;
    sol.feasible = true;
    sol.weights = Eigen::ArrayXd::Constant(n, 1.0 / static_cast<double>(n));
    return sol;
  }
  if (vmin >= 0.0 || vmax <= 0.0) return sol;  // zero outside the convex hull

  // g is strictly decreasing on (-1/vmax, -1/vmin) and spans (+inf, -inf).
  double lo = -1.0 / vmax;
  double hi = -1.0 / vmin;
  const double scale = std::max(std::abs(vmin), vmax);
  double lambda = 0.0;
  for (int it = 0; it < 200; ++it) {
    lambda = 0.5 * (lo + hi);
    if (!(lambda > lo && lambda < hi)) break;  // interval exhausted at double resolution
    const double g = lambda_equation(values, lambda);
    if (std::abs(g) <= 1e-13 * scale) break;
    if (g > 0.0) {
      lo = lambda;
    } else {
      hi = lambda;
    }
  }

  sol.lambda = lambda;
  sol.feasible = true;
  sol.weights = 1.0 / (static_cast<double>(n) * (1.0 + lambda * values));
  return sol;
}

ElProfile::ElProfile(const Sample& sample, SGiniOrder order) : x_(sample.values()) {
  const double nu = order.nu();
  // pow(0, 0) == 1 per C99, which is the convention needed at nu == 2 when
  // the maximum observation has survival rank zero.
  rho_ = 1.0 - nu * sample.survival_ranks().pow(nu - 1.0);
  a_ = rho_ * x_;
  r_star_ = a_.sum() / x_.sum();
}

double ElProfile::log_ratio(double candidate) const {
  const Eigen::ArrayXd v = a_ - candidate * x_;
  const LagrangeSolution sol = solve_lambda(v);
  if (!sol.feasible) return kInf;
  return 2.0 * (1.0 + sol.lambda * v).log().sum();
}

std::pair<double, double> ElProfile::feasible_range() const {
  return {rho_.minCoeff(), rho_.maxCoeff()};
}

ConstraintVector constraint_values(const Sample& sample, SGiniOrder order, double candidate) {
  const ElProfile profile(sample, order);
  return {profile.constraint_values(candidate), candidate};
}

double el_log_ratio(const Sample& sample, SGiniOrder order, double candidate) {
  return ElProfile(sample, order).log_ratio(candidate);
}

double el_point_estimate(const Sample& sample, SGiniOrder order) {
  return ElProfile(sample, order).point_estimate();
}

namespace {

// h1_hat(x) = x Fbar_n^(nu-1)(x) + (nu-1) (1/n) sum_{j : X_j <= x} X_j Fbar_n^(nu-2)(X_j),
// accumulated over the sorted sample so ties share one prefix value.
Eigen::ArrayXd h1_plugin(const Sample& sample, double nu) {
  const Eigen::Index n = sample.size();
  const Eigen::ArrayXd& sorted = sample.sorted();
  const Eigen::ArrayXi& perm = sample.sort_permutation();
  const Eigen::ArrayXd& ranks = sample.survival_ranks();

  Eigen::ArrayXd sorted_ranks(n);
  for (Eigen::Index i = 0; i < n; ++i) sorted_ranks[i] = ranks[perm[i]];

  Eigen::ArrayXd h1(n);
  double prefix = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index j = i;
    double run = 0.0;
    while (j < n && sorted[j] == sorted[i]) {
      run += sorted[j] * std::pow(sorted_ranks[j], nu - 2.0);
      ++j;
    }
    prefix += run;
    const double value = sorted[i] * std::pow(sorted_ranks[i], nu - 1.0) +
                         (nu - 1.0) * prefix / static_cast<double>(n);
    for (Eigen::Index k = i; k < j; ++k) h1[perm[k]] = value;
    i = j - 1;
  }
  return h1;
}

}  // namespace

VarianceEstimates variance_estimates(const Sample& sample, SGiniOrder order, double candidate) {
  const Eigen::Index n = sample.size();
  if (n < 2) throw InsufficientSampleError("variance_estimates: need n >= 2");
  const double nu = order.nu();

  const ElProfile profile(sample, order);
  const double sigma1 = profile.constraint_values(candidate).square().mean();

  const Eigen::ArrayXd h1 = h1_plugin(sample, nu);
  const Eigen::ArrayXd z = (1.0 - 2.0 * h1 - candidate) * sample.values();
  const double sigma2 = (z - z.mean()).square().mean();
  return {sigma1, sigma2};
}

VarianceEstimates projection_variance_estimates(const Sample& sample, SGiniOrder order,
                                                double candidate) {
  const Eigen::Index n = sample.size();
  if (n < 2) throw InsufficientSampleError("projection_variance_estimates: need n >= 2");
  const double nu = order.nu();

  const ElProfile profile(sample, order);
  const double sigma1 = profile.constraint_values(candidate).square().mean();

  const Eigen::ArrayXd h1 = h1_plugin(sample, nu);
  const Eigen::ArrayXd z = (1.0 - candidate) * sample.values() - nu * h1;
  const double sigma2 = (z - z.mean()).square().mean();
  return {sigma1, sigma2};
}

IntervalResult el_interval(const Sample& sample, SGiniOrder order, double level) {
  if (!(level > 0.0 && level < 1.0)) throw DomainError("el_interval: level outside (0, 1)");

  if (sample.is_constant() || sample.size() < 2) {
    IntervalResult result{0.0, 0.0, CiMethod::el, level, {}};
    result.diagnostics.degenerate = true;
    result.diagnostics.center = 0.0;
    return result;
  }

  const ElProfile profile(sample, order);
  const double r_star = profile.point_estimate();
  const VarianceEstimates var = variance_estimates(sample, order, r_star);

  double threshold = kInf;
  IntervalDiagnostics extra;
  if (var.sigma1_sq > 0.0 && std::isfinite(var.sigma2_sq)) {
    threshold = (var.sigma2_sq / var.sigma1_sq) * chi_squared_quantile(level, 1.0);
  } else {
    extra.degenerate = true;  // no usable scale; report the hull rather than guess
  }

  const auto [hull_lo, hull_hi] = profile.feasible_range();
  IntervalResult result = detail::profile_ratio_interval(
      r_star, threshold, [&profile](double r) { return profile.log_ratio(r); }, hull_lo, hull_hi,
      CiMethod::el, level);
  result.diagnostics.degenerate = extra.degenerate;
  return result;
}

}  // namespace sgini
