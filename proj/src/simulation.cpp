#include "sgini/simulation.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

#include "sgini/empirical_likelihood.hpp"
#include "sgini/errors.hpp"
#include "sgini/jackknife_el.hpp"
#include "sgini/parallel.hpp"

namespace sgini {
namespace {

constexpr std::uint64_t kSaltDraw = 0x73696d5f64726177ull;
constexpr std::uint64_t kSaltBoot = 0x73696d5f626f6f74ull;

// Adaptive Simpson on [a, b] with per-interval error control.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate_01(const std::function<double(double)>& f, double tol) {
  const double fa = f(0.0);
  const double fm = f(0.5);
  const double fb = f(1.0);
  const double whole = (fa + 4.0 * fm + fb) / 6.0;
  return adaptive_simpson(f, 0.0, 1.0, fa, fm, fb, whole, tol, 60);
}

// int_0^inf Fbar(x)^power dx via the substitution x = t / (1 - t).
double survival_power_integral(const DistributionSpec& dist, double power, double tol) {
  auto integrand = [&dist, power](double t) {
    if (t >= 1.0) return 0.0;
    const double x = t / (1.0 - t);
    const double s = dist.survival(x);
    if (s <= 0.0) return 0.0;
    return std::pow(s, power) / ((1.0 - t) * (1.0 - t));
  };
  return integrate_01(integrand, tol);
}

void check_moments(const DistributionSpec& dist, int nu) {
  switch (dist.family) {
    case Family::exponential:
      if (!(dist.p1 > 0.0)) throw DomainError("exponential: rate must be positive");
      break;
    case Family::pareto:
      if (!(dist.p1 > 0.0)) throw DomainError("pareto: scale must be positive");
      if (!(dist.p2 > 1.0) || !(nu * dist.p2 > 1.0)) {
        throw DomainError("pareto: need alpha > 1 and nu * alpha > 1 for finite moments");
      }
      break;
    case Family::lognormal:
      if (!(dist.p2 > 0.0)) throw DomainError("lognormal: sigma^2 must be positive");
      break;
  }
}

std::string format_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

DistributionSpec DistributionSpec::exponential(double rate) {
  if (!(rate > 0.0)) throw DomainError("exponential: rate must be positive");
  return {Family::exponential, rate, 0.0};
}

DistributionSpec DistributionSpec::pareto(double scale, double shape) {
  if (!(scale > 0.0)) throw DomainError("pareto: scale must be positive");
  if (!(shape > 0.0)) throw DomainError("pareto: shape must be positive");
  return {Family::pareto, scale, shape};
}

DistributionSpec DistributionSpec::lognormal(double mu, double sigma_sq) {
  if (!(sigma_sq > 0.0)) throw DomainError("lognormal: sigma^2 must be positive");
  return {Family::lognormal, mu, sigma_sq};
}

double DistributionSpec::survival(double x) const {
  switch (family) {
    case Family::exponential:
      return x <= 0.0 ? 1.0 : std::exp(-p1 * x);
    case Family::pareto:
      return x <= p1 ? 1.0 : std::pow(p1 / x, p2);
    case Family::lognormal: {
      if (x <= 0.0) return 1.0;
      const double z = (std::log(x) - p1) / std::sqrt(2.0 * p2);
      return 0.5 * std::erfc(z);
    }
  }
  return 0.0;
}

std::string DistributionSpec::family_name() const {
  switch (family) {
    case Family::exponential: return "exponential";
    case Family::pareto: return "pareto";
    case Family::lognormal: return "lognormal";
  }
  return "unknown";
}

std::string DistributionSpec::params_string() const {
  char buf[64];
  if (family == Family::exponential) {
    std::snprintf(buf, sizeof(buf), "%g", p1);
  } else {
    std::snprintf(buf, sizeof(buf), "%g;%g", p1, p2);
  }
  return buf;
}

double true_r_nu(const DistributionSpec& dist, SGiniOrder order) {
  const int nu = order.integer_order();
  check_moments(dist, nu);
  switch (dist.family) {
    case Family::exponential:
      return 1.0 - 1.0 / static_cast<double>(nu);
    case Family::pareto: {
      const double alpha = dist.p2;
      return 1.0 - static_cast<double>(nu) * (alpha - 1.0) / (static_cast<double>(nu) * alpha - 1.0);
    }
    case Family::lognormal:
      return true_r_nu_quadrature(dist, order);
  }
  throw DomainError("true_r_nu: unknown family");
}

double true_r_nu_quadrature(const DistributionSpec& dist, SGiniOrder order, double tol) {
  const int nu = order.integer_order();
  check_moments(dist, nu);
  const double quad_tol = 0.01 * tol;
  const double mean = survival_power_integral(dist, 1.0, quad_tol);
  const double min_mean = survival_power_integral(dist, static_cast<double>(nu), quad_tol);
  return 1.0 - min_mean / mean;
}

Sample sample_distribution(const DistributionSpec& dist, int n, RngStream& stream) {
  if (n < 1) throw DomainError("sample_distribution: need n >= 1");
  Eigen::ArrayXd values(n);
  switch (dist.family) {
    case Family::exponential:
      for (int i = 0; i < n; ++i) values[i] = -std::log(stream.next_open01()) / dist.p1;
      break;
    case Family::pareto:
      for (int i = 0; i < n; ++i) values[i] = dist.p1 * std::pow(stream.next_open01(), -1.0 / dist.p2);
      break;
    case Family::lognormal: {
      const double sigma = std::sqrt(dist.p2);
      for (int i = 0; i < n; ++i) values[i] = std::exp(dist.p1 + sigma * stream.next_normal());
      break;
    }
  }
  return Sample(std::move(values));
}

std::string SimReport::csv_header() {
  return "method,family,params,nu,n,level,coverage,avg_length,rejection_rate,replicates,seed";
}

std::string SimReport::csv_row() const {
  std::string row = method + "," + family + "," + params;
  row += "," + std::to_string(nu) + "," + std::to_string(n);
  row += "," + format_double(level);
  row += "," + (std::isnan(coverage) ? std::string() : format_double(coverage));
  row += "," + (std::isnan(avg_length) ? std::string() : format_double(avg_length));
  row += "," + (std::isnan(rejection_rate) ? std::string() : format_double(rejection_rate));
  row += "," + std::to_string(replicates) + "," + std::to_string(seed);
  return row;
}

SimReport coverage_study(const DistributionSpec& dist, SGiniOrder order, int n, double level,
                         CiMethod method, const StudyConfig& config) {
  if (config.replicates < 1) throw DomainError("coverage_study: need at least one replicate");
  const double truth = true_r_nu(dist, order);
  const int reps = config.replicates;

  std::vector<char> covered(static_cast<std::size_t>(reps), 0);
  std::vector<double> lengths(static_cast<std::size_t>(reps), 0.0);
  std::vector<char> failed(static_cast<std::size_t>(reps), 0);

  detail::parallel_for(reps, config.threads, [&](int i) {
    RngStream stream = derive_stream(config.seed, kSaltDraw, static_cast<std::uint64_t>(i + 1));
    const Sample sample = sample_distribution(dist, n, stream);
    try {
      IntervalResult ci{0.0, 0.0, method, level, {}};
      switch (method) {
        case CiMethod::el:
          ci = el_interval(sample, order, level);
          break;
        case CiMethod::jel:
          ci = jel_interval(sample, order, level);
          break;
        case CiMethod::boot_t:
        case CiMethod::bcel: {
          BootstrapConfig bcfg = config.bootstrap;
          bcfg.seed = combine_seed(combine_seed(config.seed, kSaltBoot),
                                   static_cast<std::uint64_t>(i + 1));
          bcfg.threads = 1;
          ci = method == CiMethod::boot_t ? boot_t_interval(sample, order, level, bcfg)
                                          : bcel_interval(sample, order, level, bcfg);
          break;
        }
      }
      covered[static_cast<std::size_t>(i)] = ci.contains(truth) ? 1 : 0;
      lengths[static_cast<std::size_t>(i)] = ci.length();
    } catch (const Error&) {
      failed[static_cast<std::size_t>(i)] = 1;
    }
  });

  int completed = 0;
  int hits = 0;
  double total_length = 0.0;
  int failures = 0;
  for (int i = 0; i < reps; ++i) {
    if (failed[static_cast<std::size_t>(i)]) {
      ++failures;
      continue;
    }
    ++completed;
    hits += covered[static_cast<std::size_t>(i)];
    total_length += lengths[static_cast<std::size_t>(i)];
  }

  SimReport report;
  report.method = to_string(method);
  report.family = dist.family_name();
  report.params = dist.params_string();
  report.nu = order.integer_order();
  report.n = n;
  report.level = level;
  report.replicates = reps;
  report.seed = config.seed;
  report.failures = failures;
  report.flagged = 20 * failures > reps;
  if (completed > 0) {
    report.coverage = static_cast<double>(hits) / completed;
    report.avg_length = total_length / completed;
  }
  return report;
}

SimReport type1_power_study(const DistributionSpec& dist, SGiniOrder order, int n, double r0,
                            double level, const StudyConfig& config) {
  if (config.replicates < 1) throw DomainError("type1_power_study: need at least one replicate");
  const int reps = config.replicates;

  std::vector<char> rejected(static_cast<std::size_t>(reps), 0);
  std::vector<char> failed(static_cast<std::size_t>(reps), 0);

  detail::parallel_for(reps, config.threads, [&](int i) {
    RngStream stream = derive_stream(config.seed, kSaltDraw, static_cast<std::uint64_t>(i + 1));
    const Sample sample = sample_distribution(dist, n, stream);
    try {
      rejected[static_cast<std::size_t>(i)] = jel_test(sample, order, r0, level).reject ? 1 : 0;
    } catch (const Error&) {
      failed[static_cast<std::size_t>(i)] = 1;
    }
  });

  int completed = 0;
  int hits = 0;
  int failures = 0;
  for (int i = 0; i < reps; ++i) {
    if (failed[static_cast<std::size_t>(i)]) {
      ++failures;
      continue;
    }
    ++completed;
    hits += rejected[static_cast<std::size_t>(i)];
  }

  SimReport report;
  report.method = "jel_test";
  report.family = dist.family_name();
  report.params = dist.params_string();
  report.nu = order.integer_order();
  report.n = n;
  report.level = level;
  report.replicates = reps;
  report.seed = config.seed;
  report.failures = failures;
  report.flagged = 20 * failures > reps;
  if (completed > 0) report.rejection_rate = static_cast<double>(hits) / completed;
  return report;
}

}  // namespace sgini
