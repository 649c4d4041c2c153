#include "sgini/sample.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "sgini/errors.hpp"

namespace sgini {

SGiniOrder::SGiniOrder(double nu) : nu_(nu) {
  if (!(nu > 0.0) || nu == 1.0 || !std::isfinite(nu)) {
    throw DomainError("SGiniOrder: nu must be finite, positive and different from 1");
  }
  if (nu >= 2.0 && nu == std::floor(nu)) integer_ = static_cast<int>(nu);
}

int SGiniOrder::integer_order() const {
  if (!is_integer()) {
    throw DomainError("SGiniOrder: operation requires an integer nu >= 2");
  }
  return integer_;
}

Sample::Sample(Eigen::ArrayXd values) : values_(std::move(values)) {
  const Eigen::Index n = values_.size();
  if (n < 1) throw InsufficientSampleError("Sample: need at least one observation");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!std::isfinite(values_[i]) || !(values_[i] > 0.0)) {
      throw DomainError("Sample: all values must be finite and strictly positive");
    }
  }

  std::vector<int> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [this](int a, int b) { return values_[a] < values_[b]; });

  perm_.resize(n);
  sorted_.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    perm_[i] = idx[static_cast<std::size_t>(i)];
    sorted_[i] = values_[perm_[i]];
  }
  mean_ = values_.mean();
}

Sample::Sample(std::initializer_list<double> values)
    : Sample(Eigen::Map<const Eigen::ArrayXd>(values.begin(),
                                              static_cast<Eigen::Index>(values.size()))) {}

Sample::Sample(const Sample& other)
    : values_(other.values_), sorted_(other.sorted_), perm_(other.perm_), mean_(other.mean_) {}

const Eigen::ArrayXd& Sample::survival_ranks() const {
  std::call_once(ranks_once_, [this] {
    const Eigen::Index n = values_.size();
    ranks_.resize(n);
    const double* first = sorted_.data();
    const double* last = first + n;
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto greater = last - std::upper_bound(first, last, values_[i]);
      ranks_[i] = static_cast<double>(greater) / static_cast<double>(n);
    }
  });
  return ranks_;
}

const Eigen::ArrayXd& empirical_survival_ranks(const Sample& sample) {
  return sample.survival_ranks();
}

}  // namespace sgini
