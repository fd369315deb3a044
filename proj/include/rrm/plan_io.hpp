#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "rrm/plan.hpp"

namespace rrm {

/// "# i,pi_i" header, then one "i,pi_i" row per source index. Unassigned
/// entries are written as -1.
std::string format_plan_csv(const Plan& plan);

/// Targets in row order; rows must list i = 0..n-1 in order. Injectivity is
/// left to Plan::from_targets.
std::vector<std::size_t> parse_plan_csv(std::string_view text);

std::vector<std::size_t> load_plan_csv(const std::filesystem::path& path);

}  // namespace rrm
