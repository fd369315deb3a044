#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "rrm/kernels.hpp"
#include "rrm/plan.hpp"
#include "rrm/point_cloud.hpp"
#include "rrm/random.hpp"

namespace rrm {

/// Produces k anchors per point of P. Must be a pure function of its inputs.
using AnchorSampler = std::function<PointCloud(const PointCloud& p, std::size_t k, RngSeed seed)>;

struct SrrmConfig {
  std::size_t rounds = 10;   // R
  std::size_t anchors = 5;   // k per point
  std::size_t runs = 10;     // K for every merged RRM
  std::size_t hungarian_cap = 4096;
  RngSeed seed{};
  bool guard = true;
  AnchorSampler sampler;  // empty: sample_near
  kernels::Execution exec = kernels::Execution::parallel;
};

struct ScreeningState {
  Plan pi;                      // committed pairs; unresolved rows unassigned
  std::vector<std::size_t> cx;  // unresolved X indices
  std::vector<std::size_t> cy;  // unresolved Y indices
  std::size_t round = 0;        // rounds actually run
  std::vector<std::size_t> history;  // |C_X| after each round
};

struct SrrmResult {
  Plan plan;
  double distance = 0.0;  // rms of plan
  ScreeningState state;
  std::size_t residual = 0;  // points handed to the exact finalize
  bool guard_used = false;   // the plain merged RRM plan was cheaper and returned
};

/// k anchors around each point: p_i + sigma_i * g with g standard normal and
/// sigma_i the distance from p_i to its nearest other point of P (0.01 when
/// P has one point), clamped to the unit box. Anchors of point i are
/// contiguous, points in input order.
PointCloud sample_near(const PointCloud& p, std::size_t k, RngSeed seed);

struct Selection {
  std::vector<std::pair<std::size_t, std::size_t>> good;  // real-to-real pairs (i, T(i))
  std::vector<std::size_t> cx;  // i < m matched to an anchor
  std::vector<std::size_t> cy;  // j < m whose preimage is an anchor
};

/// Splits a complete plan on [X_s; Z] -> [Y_s; Z] (reals first, m of them).
Selection select_pairs(const Plan& t, std::size_t m);

/// Completes `partial` with the exact assignment between its unassigned rows
/// and unused columns. CapExceededError when that residual exceeds `cap`.
Plan finalize_hungarian(const PointCloud& x, const PointCloud& y, const Plan& partial, std::size_t cap);

SrrmResult srrm_match(const PointCloud& x, const PointCloud& y, const SrrmConfig& cfg);

}  // namespace rrm
