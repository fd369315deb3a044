#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "rrm/plan.hpp"
#include "rrm/point_cloud.hpp"
#include "rrm/srrm.hpp"

namespace rrm {

enum class Method { rrm, merged, srrm, exact };

Method parse_method(std::string_view name);
std::string_view to_string(Method method) noexcept;

/// One matcher choice with every knob any method reads.
struct MatcherConfig {
  Method method = Method::rrm;
  std::size_t runs = 10;         // K (merged, srrm)
  std::size_t rounds = 10;       // R (srrm)
  std::size_t anchors = 5;       // k (srrm)
  std::size_t exact_cap = 1024;  // exact
  std::size_t hungarian_cap = 4096;  // srrm residual
  bool guard = true;
  RngSeed seed{};
};

SrrmConfig srrm_config(const MatcherConfig& cfg);

/// Complete plan from the configured method; merged and srrm share cfg.seed
/// so srrm's guard compares against the same merged plan.
Plan match(const PointCloud& x, const PointCloud& y, const MatcherConfig& cfg);

}  // namespace rrm
