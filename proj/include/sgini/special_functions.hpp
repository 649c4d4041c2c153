#pragma once

namespace sgini {

/// Regularized lower incomplete gamma P(a, x), for a > 0, x >= 0.
double regularized_gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double regularized_gamma_q(double a, double x);

double chi_squared_cdf(double x, double dof);
double chi_squared_sf(double x, double dof);

/// p-th quantile of the chi-squared distribution, p in [0, 1).
double chi_squared_quantile(double p, double dof);

/// Standard normal quantile (Wichura's PPND16 rational approximation),
/// p in (0, 1), relative error below 1e-15.
double normal_quantile(double p);

}  // namespace sgini
