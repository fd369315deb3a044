#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "rrm/matcher.hpp"
#include "rrm/plan.hpp"
#include "rrm/point_cloud.hpp"

namespace rrm {

struct FlowConfig {
  double step = 0.15;  // in (0, 1]
  std::size_t iterations = 100;
  MatcherConfig matcher;
  std::size_t snapshot_every = 10;  // >= 1
  std::size_t exact_every = 10;     // 0 disables the exact metric
};

struct FlowRecord {
  std::size_t iteration = 0;
  double distance = 0.0;         // rms of the plan used for this step
  std::optional<double> exact;   // exact W2 of the current X, when computed
};

struct FlowResult {
  std::vector<FlowRecord> log;
  PointCloud final_x;
  std::optional<double> final_exact;  // exact W2 of final_x, when within the cap
};

/// x_i <- (1 - step) x_i + step y_plan(i).
PointCloud displacement_step(const PointCloud& x, const PointCloud& y, const Plan& plan, double step);

/// Match-then-step for cfg.iterations rounds. Iteration k uses the matcher
/// seed derived from (cfg.matcher.seed, k). `snapshot(k, X)` runs for k = 0,
/// every snapshot_every iterations, and after the last one. The exact metric
/// is skipped silently once X exceeds the exact cap.
FlowResult run_flow(const PointCloud& x, const PointCloud& y, const FlowConfig& cfg,
                    const std::function<void(std::size_t, const PointCloud&)>& snapshot = {});

}  // namespace rrm
