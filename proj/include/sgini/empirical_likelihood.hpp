#pragma once

#include <Eigen/Dense>
#include <utility>

#include "sgini/intervals.hpp"
#include "sgini/sample.hpp"

namespace sgini {

/// Estimating-equation values C_hat(X_i, R) = [1 - nu * Fbar_n^(nu-1)(X_i)] X_i - R X_i,
/// in original observation order.
struct ConstraintVector {
  Eigen::ArrayXd values;
  double candidate;
};

struct LagrangeSolution {
  double lambda = 0.0;
  bool feasible = false;
  Eigen::ArrayXd weights;  // p_i = 1 / (n (1 + lambda v_i)); empty when infeasible
};

/// sigma1_sq = (1/n) sum C_hat(X_i, R)^2;
/// sigma2_sq = (1/n) sum (Z_i - Zbar)^2 with Z_i = (1 - 2 h1_hat(X_i) - R) X_i.
struct VarianceEstimates {
  double sigma1_sq;
  double sigma2_sq;
};

/// Precomputed pieces of the profile log-ratio L(R) for one sample and order.
/// The constraint is affine in R: v_i(R) = a_i - R x_i.
class ElProfile {
public:
  ElProfile(const Sample& sample, SGiniOrder order);

  double log_ratio(double candidate) const;

  /// R* where the constraints sum to zero and L vanishes.
  double point_estimate() const { return r_star_; }

  /// Open range of candidates for which 0 lies inside the constraint hull.
  std::pair<double, double> feasible_range() const;

  Eigen::ArrayXd constraint_values(double candidate) const { return a_ - candidate * x_; }

private:
  Eigen::ArrayXd x_;
  Eigen::ArrayXd a_;    // (1 - nu * Fbar_n^(nu-1)(X_i)) X_i
  Eigen::ArrayXd rho_;  // a_i / x_i
  double r_star_;
};

ConstraintVector constraint_values(const Sample& sample, SGiniOrder order, double candidate);

/// Solves (1/n) sum v_i / (1 + lambda v_i) = 0 on the open interval
/// (-1/max v, -1/min v) by bisection. Requires min v < 0 < max v, otherwise
/// returns an infeasible solution (callers map that to an infinite log-ratio).
LagrangeSolution solve_lambda(const Eigen::ArrayXd& values);

/// Empirical log-likelihood ratio L(R) = 2 sum log(1 + lambda C_hat_i);
/// +infinity when the candidate is infeasible. L(R*) = 0.
double el_log_ratio(const Sample& sample, SGiniOrder order, double candidate);

/// The self-consistent root R* = sum (1 - nu Fbar_n^(nu-1)(X_i)) X_i / sum X_i.
double el_point_estimate(const Sample& sample, SGiniOrder order);

VarianceEstimates variance_estimates(const Sample& sample, SGiniOrder order, double candidate);

/// Alternative sigma2 calibration: the influence-function variance of the
/// plugged-in constraint sum, Var[(1 - R) X - nu * h1_hat(X)] with the same
/// (1/n) convention. Unlike the sigma2_sq of variance_estimates it is
/// invariant under rescaling the data, so the ratio sigma2_sq / sigma1_sq
/// stays dimensionless. Kept separate so either calibration can be swapped
/// into interval construction.
VarianceEstimates projection_variance_estimates(const Sample& sample, SGiniOrder order,
                                                double candidate);

/// {R : L(R) <= (sigma2_sq / sigma1_sq) chi2_level(1)} with variances
/// evaluated at R*. A constant sample yields the degenerate interval [0, 0].
IntervalResult el_interval(const Sample& sample, SGiniOrder order, double level);

}  // namespace sgini
