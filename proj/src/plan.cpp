#include "rrm/plan.hpp"

#include <cmath>
#include <string>

#include "rrm/error.hpp"

namespace rrm {
namespace {

std::size_t validate(std::span<const std::size_t> targets) {
  std::vector<bool> used(targets.size(), false);
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const std::size_t j = targets[i];
    if (j == Plan::kUnassigned) continue;
    if (j >= targets.size()) {
      throw DataError("plan entry " + std::to_string(i) + " maps to out-of-range target " + std::to_string(j));
    }
    if (used[j]) throw DataError("plan is not injective: target " + std::to_string(j) + " used twice");
    used[j] = true;
    ++assigned;
  }
  return assigned;
}

}  // namespace

Plan Plan::unassigned(std::size_t n) {
  Plan p;
  p.targets_.assign(n, kUnassigned);
  return p;
}

Plan Plan::from_targets(std::vector<std::size_t> targets, const PointCloud& x, const PointCloud& y) {
  if (x.size() != targets.size() || y.size() != targets.size()) {
    throw DataError("plan size does not match the clouds");
  }
  Plan p;
  p.assigned_ = validate(targets);
  p.cost_ = plan_cost(targets, x, y);
  p.targets_ = std::move(targets);
  return p;
}

Plan Plan::from_targets(std::vector<std::size_t> targets, double cost) {
  Plan p;
  p.assigned_ = validate(targets);
  p.cost_ = cost;
  p.targets_ = std::move(targets);
  return p;
}

double Plan::rms() const noexcept {
  if (targets_.empty()) return 0.0;
  return std::sqrt(cost_ / static_cast<double>(targets_.size()));
}

std::vector<std::size_t> Plan::inverse() const {
  if (!is_complete()) throw DataError("inverse of an incomplete plan");
  std::vector<std::size_t> inv(targets_.size());
  for (std::size_t i = 0; i < targets_.size(); ++i) inv[targets_[i]] = i;
  return inv;
}

double plan_cost(std::span<const std::size_t> targets, const PointCloud& x, const PointCloud& y) {
  double total = 0.0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] == Plan::kUnassigned) continue;
    total += squared_distance(x.point(i), y.point(targets[i]));
  }
  return total;
}

void require_complete(const Plan& plan, std::size_t n) {
  if (plan.size() != n) {
    throw DataError("plan has size " + std::to_string(plan.size()) + ", expected " + std::to_string(n));
  }
  if (!plan.is_complete()) {
    throw DataError("plan is incomplete: " + std::to_string(n - plan.assigned_count()) + " unassigned entries");
  }
}

}  // namespace rrm
