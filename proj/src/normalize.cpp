#include "rrm/normalize.hpp"

#include <algorithm>

#include "rrm/error.hpp"

namespace rrm {
namespace {

struct Bounds {
  std::vector<double> lo;
  std::vector<double> hi;
};

Bounds bounds_of(const PointCloud& c) {
  Bounds b{std::vector<double>(c.point(0).begin(), c.point(0).end()),
           std::vector<double>(c.point(0).begin(), c.point(0).end())};
  for (std::size_t i = 1; i < c.size(); ++i) {
    for (std::size_t j = 0; j < c.dim(); ++j) {
      b.lo[j] = std::min(b.lo[j], c(i, j));
      b.hi[j] = std::max(b.hi[j], c(i, j));
    }
  }
  return b;
}

std::vector<AxisMap> maps_of(const Bounds& b) {
  std::vector<AxisMap> maps(b.lo.size());
  for (std::size_t j = 0; j < maps.size(); ++j) maps[j] = {b.lo[j], b.hi[j] - b.lo[j]};
  return maps;
}

PointCloud apply_maps(const PointCloud& c, const std::vector<AxisMap>& maps) {
  std::vector<double> out(c.coords().begin(), c.coords().end());
  const std::size_t d = c.dim();
  for (std::size_t k = 0; k < out.size(); ++k) {
    const AxisMap& m = maps[k % d];
    out[k] = m.scale > 0.0 ? (out[k] - m.offset) / m.scale : 0.5;
  }
  return PointCloud(d, std::move(out));
}

PointCloud invert(const PointCloud& c, const std::vector<AxisMap>& maps) {
  std::vector<double> out(c.coords().begin(), c.coords().end());
  const std::size_t d = c.dim();
  for (std::size_t k = 0; k < out.size(); ++k) {
    const AxisMap& m = maps[k % d];
    out[k] = m.scale > 0.0 ? m.offset + out[k] * m.scale : m.offset;
  }
  return PointCloud(d, std::move(out));
}

}  // namespace

PointCloud UnitBoxTransform::inverse_x(const PointCloud& normalized) const { return invert(normalized, x_axes); }
PointCloud UnitBoxTransform::inverse_y(const PointCloud& normalized) const { return invert(normalized, y_axes); }

NormalizedPair normalize_unit_box(const PointCloud& x, const PointCloud& y, NormalizeMode mode) {
  if (x.empty() || y.empty()) throw DataError("empty cloud");
  if (x.dim() != y.dim()) throw DataError("cloud dimensions differ");

  const Bounds bx = bounds_of(x);
  const Bounds by = bounds_of(y);
  UnitBoxTransform t{mode, {}, {}};
  if (mode == NormalizeMode::joint) {
    Bounds joint = bx;
    for (std::size_t j = 0; j < x.dim(); ++j) {
      joint.lo[j] = std::min(bx.lo[j], by.lo[j]);
      joint.hi[j] = std::max(bx.hi[j], by.hi[j]);
    }
    t.x_axes = maps_of(joint);
    t.y_axes = t.x_axes;
  } else {
    t.x_axes = maps_of(bx);
    t.y_axes = maps_of(by);
  }
  PointCloud nx = apply_maps(x, t.x_axes);
  PointCloud ny = apply_maps(y, t.y_axes);
  return {std::move(nx), std::move(ny), std::move(t)};
}

}  // namespace rrm
