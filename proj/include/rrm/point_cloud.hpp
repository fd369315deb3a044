#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace rrm {

/// n points in d dimensions stored row-major; each point carries weight 1/n.
///
/// Coordinates are validated finite on construction. An empty cloud (n = 0)
/// is representable so that anchor sets with k = 0 have a value, but every
/// algorithm entry point rejects empty input.
class PointCloud {
 public:
  PointCloud() = default;
  PointCloud(std::size_t dim, std::vector<double> coords);

  static PointCloud from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t size() const noexcept { return n_; }
  std::size_t dim() const noexcept { return d_; }
  bool empty() const noexcept { return n_ == 0; }

  std::span<const double> point(std::size_t i) const noexcept {
    return {coords_.data() + i * d_, d_};
  }
  double operator()(std::size_t i, std::size_t j) const noexcept { return coords_[i * d_ + j]; }
  std::span<const double> coords() const noexcept { return coords_; }

  friend bool operator==(const PointCloud&, const PointCloud&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t d_ = 1;
  std::vector<double> coords_;
};

inline double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double diff = a[j] - b[j];
    s += diff * diff;
  }
  return s;
}

/// Rows of `a` followed by rows of `b`.
PointCloud concat(const PointCloud& a, const PointCloud& b);

/// Rows `indices` of `cloud`, in the given order.
PointCloud subset(const PointCloud& cloud, std::span<const std::size_t> indices);

/// Throws DataError unless both clouds are nonempty with equal size and dimension.
void require_matched_pair(const PointCloud& x, const PointCloud& y);

}  // namespace rrm
