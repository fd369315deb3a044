#include "rrm/last_mile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rrm/error.hpp"
#include "rrm/partition.hpp"

namespace rrm {
namespace {

PointCloud centered(const PointCloud& c) {
  const std::size_t d = c.dim();
  std::vector<double> mean(d, 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = 0; j < d; ++j) mean[j] += c(i, j);
  }
  for (double& m : mean) m /= static_cast<double>(c.size());
  std::vector<double> out(c.coords().begin(), c.coords().end());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] -= mean[k % d];
  return PointCloud(d, std::move(out));
}

}  // namespace

LastMileParams LastMileParams::defaults(std::size_t n, std::size_t dim) {
  LastMileParams p;
  p.depth = std::max<std::size_t>(1, full_depth(n));
  p.dim = dim;
  p.rho = 0.5;
  p.diameter = std::sqrt(static_cast<double>(dim));
  return p;
}

std::size_t calibrated_depth(double dist, const LastMileParams& p) {
  if (!(dist >= 0.0)) throw std::invalid_argument("distance must be nonnegative");
  if (!(p.rho > 0.0 && p.rho < 1.0)) throw std::invalid_argument("rho must lie in (0, 1)");
  if (!(p.diameter > 0.0)) throw std::invalid_argument("diameter constant must be positive");
  if (dist == 0.0) return p.depth;
  double v = static_cast<double>(p.dim) * std::log(p.diameter / dist) / std::log(1.0 / p.rho);
  const double r = std::round(v);
  if (std::abs(v - r) <= 1e-9 * std::max(1.0, std::abs(r))) v = r;
  if (v <= 0.0) return 0;
  const double c = std::ceil(v);
  return c >= static_cast<double>(p.depth) ? p.depth : static_cast<std::size_t>(c);
}

std::vector<double> nn_baseline(const PointCloud& x, const PointCloud& y, kernels::Execution exec) {
  kernels::NearestNeighbors nn = kernels::nearest_neighbors(x, y, false, exec);
  for (double& s : nn.squared) s = std::sqrt(s);
  return std::move(nn.squared);
}

PrematureSet premature_set(const PointCloud& x, const PointCloud& y, const LastMileParams& p) {
  require_matched_pair(x, y);
  if (p.dim != x.dim()) throw std::invalid_argument("last-mile parameters have the wrong dimension");
  const std::size_t n = x.size();
  const PointCloud xc = centered(x);
  const PointCloud yc = centered(y);
  const BuiltTree built = build_tree(concat(xc, yc), p.depth, AxisSchedule::cycling(x.dim()));
  const kernels::NearestNeighbors nn = kernels::nearest_neighbors(xc, yc);

  PrematureSet out;
  out.nn = nn.index;
  out.shared_depth.resize(n);
  out.calibrated.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Address ax = built.tree.address_of(xc.point(i));
    const Address ay = built.tree.address_of(yc.point(nn.index[i]));
    out.shared_depth[i] = common_prefix_depth(ax, ay, p.depth);
    out.calibrated[i] = calibrated_depth(std::sqrt(nn.squared[i]), p);
    if (out.shared_depth[i] < out.calibrated[i]) out.indices.push_back(i);
  }
  out.alpha = static_cast<double>(out.indices.size()) / static_cast<double>(n);
  return out;
}

LastMileReport plateau_decomposition(const PointCloud& x, const PointCloud& y, const Plan& plan,
                                     const LastMileParams& p) {
  require_matched_pair(x, y);
  const std::size_t n = x.size();
  require_complete(plan, n);
  const kernels::NearestNeighbors nn = kernels::nearest_neighbors(x, y);

  LastMileReport r;
  r.delta.resize(n);
  double nn_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    r.delta[i] = std::sqrt(nn.squared[i]);
    nn_sum += nn.squared[i];
  }
  const double nd = static_cast<double>(n);
  r.nn_term = nn_sum / nd;

  const PrematureSet bad = premature_set(x, y, p);
  r.bad_set = bad.indices;
  r.alpha_h = bad.alpha;
  double excess = 0.0;
  for (std::size_t i : r.bad_set) {
    const double c = squared_distance(x.point(i), y.point(plan[i]));
    excess += std::max(0.0, c - nn.squared[i]);
  }
  r.gamma_bar = r.bad_set.empty() ? 0.0 : excess / static_cast<double>(r.bad_set.size());
  r.lower_bound = r.nn_term + r.alpha_h * r.gamma_bar;
  r.rrm_sq = plan.squared_cost_sum() / nd;
  return r;
}

}  // namespace rrm
