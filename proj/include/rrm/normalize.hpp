#pragma once

#include <vector>

#include "rrm/point_cloud.hpp"

namespace rrm {

enum class NormalizeMode { joint, per_cloud };

/// x' = (x - offset) / scale per axis; scale == 0 marks a degenerate axis
/// which maps to 0.5.
struct AxisMap {
  double offset = 0.0;
  double scale = 1.0;
};

struct UnitBoxTransform {
  NormalizeMode mode = NormalizeMode::joint;
  std::vector<AxisMap> x_axes;
  std::vector<AxisMap> y_axes;

  PointCloud inverse_x(const PointCloud& normalized) const;
  PointCloud inverse_y(const PointCloud& normalized) const;
};

struct NormalizedPair {
  PointCloud x;
  PointCloud y;
  UnitBoxTransform transform;
};

/// Axis-aligned affine rescale into [0,1]^d. Joint mode applies one shared
/// per-axis map (the bounding box of X and Y together); per-cloud mode maps
/// each cloud by its own box.
NormalizedPair normalize_unit_box(const PointCloud& x, const PointCloud& y,
                                  NormalizeMode mode = NormalizeMode::joint);

}  // namespace rrm
