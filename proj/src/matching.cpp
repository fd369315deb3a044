#include "rrm/matching.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

#include "rrm/error.hpp"

namespace rrm {

RunVariant RunVariant::identity(std::size_t dim) {
  return {dim, {}, AxisSchedule::cycling(dim), RngSeed{}};
}

RunVariant RunVariant::random(std::size_t dim, RngSeed seed) {
  Rng rng(seed);
  Eigen::MatrixXd g(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) g(i, j) = rng.normal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (std::size_t j = 0; j < dim; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  RunVariant v;
  v.dim = dim;
  v.rotation.resize(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) v.rotation[i * dim + j] = q(i, j);
  }
  v.schedule = AxisSchedule::cycling(dim, rng.below(dim));
  v.seed = seed;
  return v;
}

RunVariant run_variant(std::size_t dim, RngSeed seed, std::size_t index) {
  if (index == 0) return RunVariant::identity(dim);
  return RunVariant::random(dim, derive_seed(seed, index));
}

PointCloud rotate(const PointCloud& cloud, const RunVariant& variant) {
  if (variant.is_identity()) return cloud;
  const std::size_t d = cloud.dim();
  if (variant.dim != d) throw std::invalid_argument("run variant dimension mismatch");
  std::vector<double> out(cloud.size() * d, 0.0);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto p = cloud.point(i);
    for (std::size_t a = 0; a < d; ++a) {
      double s = 0.0;
      for (std::size_t b = 0; b < d; ++b) s += variant.rotation[a * d + b] * p[b];
      out[i * d + a] = s;
    }
  }
  return PointCloud(d, std::move(out));
}

namespace {

// A complete plan with its per-row squared costs, so merging never has to
// revisit the clouds.
struct CostedPlan {
  std::vector<std::size_t> targets;
  std::vector<double> row;
  double total = 0.0;

  Plan to_plan() && { return Plan::from_targets(std::move(targets), total); }
};

double sum_in_order(const std::vector<double>& row) {
  double s = 0.0;
  for (double v : row) s += v;
  return s;
}

CostedPlan costed(std::vector<std::size_t> targets, const PointCloud& x, const PointCloud& y) {
  CostedPlan c;
  c.row.resize(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) c.row[i] = squared_distance(x.point(i), y.point(targets[i]));
  c.total = sum_in_order(c.row);
  c.targets = std::move(targets);
  return c;
}

CostedPlan costed(const Plan& p, const PointCloud& x, const PointCloud& y) {
  return costed(std::vector<std::size_t>(p.targets().begin(), p.targets().end()), x, y);
}

CostedPlan run_plan(const PointCloud& x, const PointCloud& y, const RunVariant& variant) {
  if (variant.schedule.dim() != x.dim()) throw std::invalid_argument("run variant dimension mismatch");
  std::vector<std::size_t> ox, oy;
  if (variant.is_identity()) {
    ox = tree_curve_order(x, variant.schedule);
    oy = tree_curve_order(y, variant.schedule);
  } else {
    ox = tree_curve_order(rotate(x, variant), variant.schedule);
    oy = tree_curve_order(rotate(y, variant), variant.schedule);
  }
  std::vector<std::size_t> targets(x.size());
  for (std::size_t k = 0; k < ox.size(); ++k) targets[ox[k]] = oy[k];
  return costed(std::move(targets), x, y);
}

// On every cycle of p^-1 q the two plans cover the same targets; keep the
// cheaper side (p on ties).
CostedPlan merge_costed(const CostedPlan& p, const CostedPlan& q) {
  const std::size_t n = p.targets.size();
  std::vector<std::size_t> p_inv(n);
  for (std::size_t i = 0; i < n; ++i) p_inv[p.targets[i]] = i;
  CostedPlan out;
  out.targets.resize(n);
  out.row.resize(n);
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> cycle;
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    cycle.clear();
    double cost_p = 0.0, cost_q = 0.0;
    for (std::size_t i = start; !seen[i]; i = p_inv[q.targets[i]]) {
      seen[i] = 1;
      cycle.push_back(i);
      cost_p += p.row[i];
      cost_q += q.row[i];
    }
    const CostedPlan& winner = cost_p <= cost_q ? p : q;
    for (std::size_t i : cycle) {
      out.targets[i] = winner.targets[i];
      out.row[i] = winner.row[i];
    }
  }
  out.total = sum_in_order(out.row);
  // Per-cycle sums and the whole-plan sum round differently; never hand back
  // something that reads costlier than an input.
  const CostedPlan& best = p.total <= q.total ? p : q;
  return out.total <= best.total ? out : best;
}

}  // namespace

Plan rrm_plan(const PointCloud& x, const PointCloud& y, const RunVariant& variant) {
  require_matched_pair(x, y);
  return run_plan(x, y, variant).to_plan();
}

Plan rrm_plan(const PointCloud& x, const PointCloud& y) { return rrm_plan(x, y, RunVariant::identity(x.dim())); }

double rrm_distance(const PointCloud& x, const PointCloud& y) { return rrm_plan(x, y).rms(); }

double rrm_distance(const PointCloud& x, const PointCloud& y, const RunVariant& variant) {
  return rrm_plan(x, y, variant).rms();
}

Plan merge_pair(const Plan& p, const Plan& q, const PointCloud& x, const PointCloud& y) {
  require_matched_pair(x, y);
  const std::size_t n = x.size();
  require_complete(p, n);
  require_complete(q, n);
  return merge_costed(costed(p, x, y), costed(q, x, y)).to_plan();
}

Plan merged_rrm(const PointCloud& x, const PointCloud& y, std::size_t runs, RngSeed seed, kernels::Execution exec) {
  if (runs == 0) throw std::invalid_argument("merged RRM needs at least one run");
  require_matched_pair(x, y);
  std::vector<CostedPlan> plans(runs);
  const auto k = static_cast<std::ptrdiff_t>(runs);
  if (exec == kernels::Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t r = 0; r < k; ++r) {
      plans[static_cast<std::size_t>(r)] = run_plan(x, y, run_variant(x.dim(), seed, static_cast<std::size_t>(r)));
    }
  } else {
    for (std::size_t r = 0; r < runs; ++r) plans[r] = run_plan(x, y, run_variant(x.dim(), seed, r));
  }
  CostedPlan acc = std::move(plans[0]);
  for (std::size_t r = 1; r < runs; ++r) acc = merge_costed(acc, plans[r]);
  return std::move(acc).to_plan();
}

Plan hungarian(std::span<const double> cost, std::size_t n) {
  if (n == 0) throw std::invalid_argument("empty assignment problem");
  if (cost.size() != n * n) throw std::invalid_argument("cost matrix is not n x n");
  for (std::size_t i = 0; i < cost.size(); ++i) {
    if (!std::isfinite(cost[i])) {
      throw std::invalid_argument("non-finite cost at row " + std::to_string(i / n) + ", column " +
                                  std::to_string(i % n));
    }
  }
  std::vector<std::size_t> cols = detail::solve_assignment(n, [&](std::size_t i, std::size_t j) {
    return cost[i * n + j];
  });
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += cost[i * n + cols[i]];
  return Plan::from_targets(std::move(cols), total);
}

Plan exact_plan(const PointCloud& x, const PointCloud& y, std::size_t cap) {
  require_matched_pair(x, y);
  if (x.size() > cap) {
    throw CapExceededError(x.size(), cap,
                           "exact assignment on " + std::to_string(x.size()) + " points exceeds the cap of " +
                               std::to_string(cap) + "; use rrm, merged or srrm instead");
  }
  std::vector<std::size_t> cols = detail::solve_assignment(
      x.size(), [&](std::size_t i, std::size_t j) { return squared_distance(x.point(i), y.point(j)); });
  return Plan::from_targets(std::move(cols), x, y);
}

double exact_w2(const PointCloud& x, const PointCloud& y, std::size_t cap) { return exact_plan(x, y, cap).rms(); }

}  // namespace rrm
