#pragma once

#include <cstddef>
#include <vector>

#include "rrm/kernels.hpp"
#include "rrm/plan.hpp"
#include "rrm/point_cloud.hpp"

namespace rrm {

/// Constants of the geometry-calibrated depth
/// l(x, y) = min(H, ceil(d * log_{1/rho}(C / |x - y|))).
struct LastMileParams {
  std::size_t depth = 1;    // H
  std::size_t dim = 1;      // d
  double rho = 0.5;         // contraction factor in (0, 1)
  double diameter = 1.0;    // C > 0

  /// H = max(1, ceil(log2 n)), rho = 1/2, C = sqrt(d).
  static LastMileParams defaults(std::size_t n, std::size_t dim);
};

/// min(H, ceil(d * log(C / dist) / log(1 / rho))), clamped below at 0; H when
/// dist == 0. Values within 1e-9 of an integer are taken as that integer so
/// exact powers do not round up.
std::size_t calibrated_depth(double dist, const LastMileParams& p);

/// Distance from each x_i to its nearest neighbor in Y.
std::vector<double> nn_baseline(const PointCloud& x, const PointCloud& y,
                                kernels::Execution exec = kernels::Execution::parallel);

struct PrematureSet {
  std::vector<std::size_t> indices;       // I+, ascending
  double alpha = 0.0;                     // |I+| / n
  std::vector<std::size_t> nn;            // NN partner of each x_i in centered coordinates
  std::vector<std::size_t> shared_depth;  // s_H(x_i, y_nn(i))
  std::vector<std::size_t> calibrated;    // l_{H,rho}(x_i, y_nn(i))
};

/// Indices whose NN partner leaves the common cell before the calibrated
/// depth. Both clouds are centered at their own barycenters, one depth-H tree
/// is built on the union, and every point is addressed by threshold descent.
PrematureSet premature_set(const PointCloud& x, const PointCloud& y, const LastMileParams& p);

struct LastMileReport {
  std::vector<double> delta;  // NN distances in the given coordinates
  double nn_term = 0.0;       // mean of delta^2
  std::vector<std::size_t> bad_set;
  double alpha_h = 0.0;
  double gamma_bar = 0.0;     // mean NN-excess over bad_set, 0 when empty
  double lower_bound = 0.0;   // nn_term + alpha_h * gamma_bar
  double rrm_sq = 0.0;        // plan cost / n

  double slack() const noexcept { return rrm_sq - nn_term - alpha_h * gamma_bar; }
};

/// Proportion-severity split of a complete plan's squared rms.
LastMileReport plateau_decomposition(const PointCloud& x, const PointCloud& y, const Plan& plan,
                                     const LastMileParams& p);

}  // namespace rrm
