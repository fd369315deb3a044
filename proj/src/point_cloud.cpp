#include "rrm/point_cloud.hpp"

#include <cmath>
#include <string>

#include "rrm/error.hpp"

namespace rrm {

PointCloud::PointCloud(std::size_t dim, std::vector<double> coords) : d_(dim), coords_(std::move(coords)) {
  if (dim == 0) throw DataError("point cloud dimension must be at least 1");
  if (coords_.size() % dim != 0) {
    throw DataError("coordinate count " + std::to_string(coords_.size()) + " is not a multiple of dimension " +
                    std::to_string(dim));
  }
  n_ = coords_.size() / dim;
  for (std::size_t k = 0; k < coords_.size(); ++k) {
    if (!std::isfinite(coords_[k])) {
      throw DataError("non-finite coordinate at point " + std::to_string(k / dim) + ", axis " +
                      std::to_string(k % dim));
    }
  }
}

PointCloud PointCloud::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  if (rows.size() == 0) throw DataError("empty cloud");
  const std::size_t d = rows.begin()->size();
  std::vector<double> coords;
  coords.reserve(rows.size() * d);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != d) throw DataError("ragged row " + std::to_string(i));
    coords.insert(coords.end(), row.begin(), row.end());
    ++i;
  }
  return PointCloud(d, std::move(coords));
}

PointCloud concat(const PointCloud& a, const PointCloud& b) {
  if (a.dim() != b.dim()) throw DataError("cannot concatenate clouds of different dimension");
  std::vector<double> coords(a.coords().begin(), a.coords().end());
  coords.insert(coords.end(), b.coords().begin(), b.coords().end());
  return PointCloud(a.dim(), std::move(coords));
}

PointCloud subset(const PointCloud& cloud, std::span<const std::size_t> indices) {
  std::vector<double> coords;
  coords.reserve(indices.size() * cloud.dim());
  for (std::size_t i : indices) {
    const auto p = cloud.point(i);
    coords.insert(coords.end(), p.begin(), p.end());
  }
  return PointCloud(cloud.dim(), std::move(coords));
}

void require_matched_pair(const PointCloud& x, const PointCloud& y) {
  if (x.empty() || y.empty()) throw DataError("empty cloud");
  if (x.size() != y.size()) {
    throw DataError("cloud sizes differ: " + std::to_string(x.size()) + " vs " + std::to_string(y.size()));
  }
  if (x.dim() != y.dim()) {
    throw DataError("cloud dimensions differ: " + std::to_string(x.dim()) + " vs " + std::to_string(y.dim()));
  }
}

}  // namespace rrm
