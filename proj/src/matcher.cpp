#include "rrm/matcher.hpp"

#include <stdexcept>
#include <string>

#include "rrm/matching.hpp"

namespace rrm {

Method parse_method(std::string_view name) {
  if (name == "rrm") return Method::rrm;
  if (name == "merged") return Method::merged;
  if (name == "srrm") return Method::srrm;
  if (name == "exact") return Method::exact;
  throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::rrm: return "rrm";
    case Method::merged: return "merged";
    case Method::srrm: return "srrm";
    case Method::exact: return "exact";
  }
  return "unknown";
}

SrrmConfig srrm_config(const MatcherConfig& cfg) {
  SrrmConfig s;
  s.rounds = cfg.rounds;
  s.anchors = cfg.anchors;
  s.runs = cfg.runs;
  s.hungarian_cap = cfg.hungarian_cap;
  s.seed = cfg.seed;
  s.guard = cfg.guard;
  return s;
}

Plan match(const PointCloud& x, const PointCloud& y, const MatcherConfig& cfg) {
  switch (cfg.method) {
    case Method::rrm: return rrm_plan(x, y);
    case Method::merged: return merged_rrm(x, y, cfg.runs, cfg.seed);
    case Method::srrm: return srrm_match(x, y, srrm_config(cfg)).plan;
    case Method::exact: return exact_plan(x, y, cfg.exact_cap);
  }
  throw std::invalid_argument("unknown method");
}

}  // namespace rrm
