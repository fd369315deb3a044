#include "rrm/kernels.hpp"

#include <limits>
#include <stdexcept>

namespace rrm::kernels {
namespace {

void check_dims(const PointCloud& a, const PointCloud& b, bool exclude_self) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  if (b.empty() || (exclude_self && b.size() < 2)) throw std::invalid_argument("not enough reference points");
  if (exclude_self && a.size() != b.size()) throw std::invalid_argument("self-exclusion needs one cloud");
}

inline void nn_row(const PointCloud& q, const PointCloud& r, bool exclude_self, std::size_t i,
                   NearestNeighbors& out) {
  const auto qi = q.point(i);
  double best = std::numeric_limits<double>::infinity();
  std::size_t arg = 0;
  for (std::size_t j = 0; j < r.size(); ++j) {
    if (exclude_self && j == i) continue;
    const double s = squared_distance(qi, r.point(j));
    if (s < best) {
      best = s;
      arg = j;
    }
  }
  out.index[i] = arg;
  out.squared[i] = best;
}

inline void matrix_row(const PointCloud& x, const PointCloud& y, std::size_t i, std::vector<double>& out) {
  const auto xi = x.point(i);
  double* row = out.data() + i * y.size();
  for (std::size_t j = 0; j < y.size(); ++j) row[j] = squared_distance(xi, y.point(j));
}

}  // namespace

namespace serial {

NearestNeighbors nearest_neighbors(const PointCloud& queries, const PointCloud& refs, bool exclude_self) {
  check_dims(queries, refs, exclude_self);
  NearestNeighbors out{std::vector<std::size_t>(queries.size()), std::vector<double>(queries.size())};
  for (std::size_t i = 0; i < queries.size(); ++i) nn_row(queries, refs, exclude_self, i, out);
  return out;
}

std::vector<double> squared_distance_matrix(const PointCloud& x, const PointCloud& y) {
  if (x.dim() != y.dim()) throw std::invalid_argument("dimension mismatch");
  std::vector<double> out(x.size() * y.size());
  for (std::size_t i = 0; i < x.size(); ++i) matrix_row(x, y, i, out);
  return out;
}

}  // namespace serial

namespace parallel {

NearestNeighbors nearest_neighbors(const PointCloud& queries, const PointCloud& refs, bool exclude_self) {
  check_dims(queries, refs, exclude_self);
  NearestNeighbors out{std::vector<std::size_t>(queries.size()), std::vector<double>(queries.size())};
  const auto n = static_cast<std::ptrdiff_t>(queries.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) nn_row(queries, refs, exclude_self, static_cast<std::size_t>(i), out);
  return out;
}

std::vector<double> squared_distance_matrix(const PointCloud& x, const PointCloud& y) {
  if (x.dim() != y.dim()) throw std::invalid_argument("dimension mismatch");
  std::vector<double> out(x.size() * y.size());
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) matrix_row(x, y, static_cast<std::size_t>(i), out);
  return out;
}

}  // namespace parallel

NearestNeighbors nearest_neighbors(const PointCloud& queries, const PointCloud& refs, bool exclude_self,
                                   Execution exec) {
  return exec == Execution::serial ? serial::nearest_neighbors(queries, refs, exclude_self)
                                   : parallel::nearest_neighbors(queries, refs, exclude_self);
}

std::vector<double> squared_distance_matrix(const PointCloud& x, const PointCloud& y, Execution exec) {
  return exec == Execution::serial ? serial::squared_distance_matrix(x, y) : parallel::squared_distance_matrix(x, y);
}

}  // namespace rrm::kernels
