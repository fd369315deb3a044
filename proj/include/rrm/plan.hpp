#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "rrm/point_cloud.hpp"

namespace rrm {

/// A (possibly partial) injective map from source indices to target indices,
/// together with its total cost.
///
/// For geometric plans the cost is the squared-Euclidean sum
/// sum_i |x_i - y_pi(i)|^2 over assigned i, always accumulated in source index
/// order so that equal plans on equal clouds carry bit-identical costs.
class Plan {
 public:
  static constexpr std::size_t kUnassigned = std::numeric_limits<std::size_t>::max();

  Plan() = default;

  static Plan unassigned(std::size_t n);
  /// Validates injectivity and range, then prices the plan on (x, y).
  static Plan from_targets(std::vector<std::size_t> targets, const PointCloud& x, const PointCloud& y);
  /// Validates injectivity and range; `cost` is taken as given (matrix plans).
  static Plan from_targets(std::vector<std::size_t> targets, double cost);

  std::size_t size() const noexcept { return targets_.size(); }
  std::size_t operator[](std::size_t i) const noexcept { return targets_[i]; }
  std::span<const std::size_t> targets() const noexcept { return targets_; }

  double squared_cost_sum() const noexcept { return cost_; }
  /// sqrt(squared_cost_sum / n); the RRM-style reported value.
  double rms() const noexcept;

  bool is_complete() const noexcept { return assigned_ == targets_.size(); }
  std::size_t assigned_count() const noexcept { return assigned_; }

  /// Target -> source map of a complete plan.
  std::vector<std::size_t> inverse() const;

  friend bool operator==(const Plan&, const Plan&) = default;

 private:
  std::vector<std::size_t> targets_;
  double cost_ = 0.0;
  std::size_t assigned_ = 0;
};

/// sum_i |x_i - y_targets[i]|^2 over assigned i, in index order.
double plan_cost(std::span<const std::size_t> targets, const PointCloud& x, const PointCloud& y);

/// Throws DataError unless `plan` is a complete permutation of size n.
void require_complete(const Plan& plan, std::size_t n);

}  // namespace rrm
