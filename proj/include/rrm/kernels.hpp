#pragma once

#include <cstddef>
#include <vector>

#include "rrm/point_cloud.hpp"

// Brute-force geometric kernels in two builds: a serial reference and an
// OpenMP version. Both evaluate every row with the same arithmetic in the same
// order, so their outputs are bitwise equal.
namespace rrm::kernels {

enum class Execution { serial, parallel };

struct NearestNeighbors {
  std::vector<std::size_t> index;  // argmin over references, smallest index on ties
  std::vector<double> squared;     // the minimal squared distance
};

namespace serial {
/// With `exclude_self`, query i never matches reference i (within-set NN).
NearestNeighbors nearest_neighbors(const PointCloud& queries, const PointCloud& refs, bool exclude_self = false);
/// Row-major |x| x |y| matrix of squared distances.
std::vector<double> squared_distance_matrix(const PointCloud& x, const PointCloud& y);
}  // namespace serial

namespace parallel {
NearestNeighbors nearest_neighbors(const PointCloud& queries, const PointCloud& refs, bool exclude_self = false);
std::vector<double> squared_distance_matrix(const PointCloud& x, const PointCloud& y);
}  // namespace parallel

NearestNeighbors nearest_neighbors(const PointCloud& queries, const PointCloud& refs, bool exclude_self = false,
                                   Execution exec = Execution::parallel);
std::vector<double> squared_distance_matrix(const PointCloud& x, const PointCloud& y,
                                            Execution exec = Execution::parallel);

}  // namespace rrm::kernels
