#pragma once

#include <Eigen/Dense>
#include <initializer_list>
#include <mutex>

namespace sgini {

/// Index order nu of an S-Gini index: nu > 0, nu != 1. The U-statistic
/// estimators additionally require an integer nu >= 2.
class SGiniOrder {
public:
  explicit SGiniOrder(double nu);

  double nu() const { return nu_; }
  bool is_integer() const { return integer_ > 0; }

  /// Integer order for the U-statistic path; throws DomainError otherwise.
  int integer_order() const;

private:
  double nu_;
  int integer_ = 0;
};

/// An immutable batch of positive observations with cached sort order and
/// empirical survival ranks. All accessors are safe to call concurrently.
class Sample {
public:
  explicit Sample(Eigen::ArrayXd values);
  Sample(std::initializer_list<double> values);

  // copyable (the lazy rank cache restarts empty); not assignable or movable
  Sample(const Sample& other);
  Sample& operator=(const Sample&) = delete;

  Eigen::Index size() const { return values_.size(); }
  const Eigen::ArrayXd& values() const { return values_; }
  const Eigen::ArrayXd& sorted() const { return sorted_; }

  /// Permutation with sorted()[i] == values()[sort_permutation()[i]]
  /// (stable, so ties keep their original relative order).
  const Eigen::ArrayXi& sort_permutation() const { return perm_; }

  double mean() const { return mean_; }
  double min() const { return sorted_[0]; }
  double max() const { return sorted_[sorted_.size() - 1]; }
  bool is_constant() const { return min() == max(); }

  /// Empirical survival ranks in original observation order, using the
  /// strictly-greater convention: Fbar_n(x) = #{j : X_j > x} / n.
  const Eigen::ArrayXd& survival_ranks() const;

private:
  Eigen::ArrayXd values_;
  Eigen::ArrayXd sorted_;
  Eigen::ArrayXi perm_;
  double mean_ = 0.0;

  mutable std::once_flag ranks_once_;
  mutable Eigen::ArrayXd ranks_;
};

/// Fbar_n(X_i) for each observation in original order; for distinct sorted
/// data the i-th order statistic gets (n - i) / n, ties all share the count
/// of strictly greater values.
const Eigen::ArrayXd& empirical_survival_ranks(const Sample& sample);

}  // namespace sgini
