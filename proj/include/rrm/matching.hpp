#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rrm/kernels.hpp"
#include "rrm/partition.hpp"
#include "rrm/plan.hpp"
#include "rrm/point_cloud.hpp"
#include "rrm/random.hpp"

namespace rrm {

/// One partitioning scheme for a single RRM run: an orthogonal rotation
/// applied to both clouds and the axis schedule of the tree.
struct RunVariant {
  std::size_t dim = 1;
  std::vector<double> rotation;  // row-major dim x dim; empty = identity
  AxisSchedule schedule = AxisSchedule::cycling(1);
  RngSeed seed{};

  /// No rotation, cycling from axis 0: the canonical RRM run.
  static RunVariant identity(std::size_t dim);
  /// Haar-random rotation and uniformly random start axis drawn from `seed`.
  static RunVariant random(std::size_t dim, RngSeed seed);

  bool is_identity() const noexcept { return rotation.empty(); }
};

/// Variant `index` of the multi-run sequence: 0 is the identity, the rest are
/// random with seeds derived from (seed, index).
RunVariant run_variant(std::size_t dim, RngSeed seed, std::size_t index);

/// Rows of `cloud` multiplied by the variant's rotation.
PointCloud rotate(const PointCloud& cloud, const RunVariant& variant);

/// Pairs the k-th point of X with the k-th point of Y along their tree-curve
/// orders in the rotated frame. The cost is evaluated in the given coordinates.
Plan rrm_plan(const PointCloud& x, const PointCloud& y, const RunVariant& variant);
Plan rrm_plan(const PointCloud& x, const PointCloud& y);

double rrm_distance(const PointCloud& x, const PointCloud& y);
double rrm_distance(const PointCloud& x, const PointCloud& y, const RunVariant& variant);

/// Cycle-wise better-of-two: on every cycle of p^-1 o q, keep whichever plan
/// is cheaper on that cycle's sources. Never costlier than either input.
Plan merge_pair(const Plan& p, const Plan& q, const PointCloud& x, const PointCloud& y);

/// K runs (variants 0..K-1), folded left with merge_pair.
Plan merged_rrm(const PointCloud& x, const PointCloud& y, std::size_t runs, RngSeed seed,
                kernels::Execution exec = kernels::Execution::parallel);

/// Minimum-cost perfect assignment on a row-major n x n matrix. The plan's
/// cost is the sum of the chosen entries.
Plan hungarian(std::span<const double> cost, std::size_t n);

inline constexpr std::size_t kDefaultExactCap = 1024;

/// Optimal permutation for squared Euclidean cost.
Plan exact_plan(const PointCloud& x, const PointCloud& y, std::size_t cap = kDefaultExactCap);
/// Exact empirical 2-Wasserstein distance; CapExceededError above `cap`.
double exact_w2(const PointCloud& x, const PointCloud& y, std::size_t cap = kDefaultExactCap);

namespace detail {
/// Shortest-augmenting-path assignment over an implicit cost(i, j); returns
/// the column assigned to each row.
template <class Cost>
std::vector<std::size_t> solve_assignment(std::size_t n, Cost&& cost);
}  // namespace detail

}  // namespace rrm

#include "rrm/detail/assignment.hpp"
