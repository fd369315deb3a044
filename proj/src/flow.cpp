#include "rrm/flow.hpp"

#include <stdexcept>

#include "rrm/matching.hpp"

namespace rrm {

PointCloud displacement_step(const PointCloud& x, const PointCloud& y, const Plan& plan, double step) {
  require_matched_pair(x, y);
  require_complete(plan, x.size());
  const std::size_t d = x.dim();
  std::vector<double> out(x.coords().begin(), x.coords().end());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto yi = y.point(plan[i]);
    for (std::size_t j = 0; j < d; ++j) {
      double& v = out[i * d + j];
      v = step == 1.0 ? yi[j] : v + step * (yi[j] - v);  // exact at fixed points and at full step
    }
  }
  return PointCloud(d, std::move(out));
}

FlowResult run_flow(const PointCloud& x0, const PointCloud& y, const FlowConfig& cfg,
                    const std::function<void(std::size_t, const PointCloud&)>& snapshot) {
  require_matched_pair(x0, y);
  if (!(cfg.step > 0.0 && cfg.step <= 1.0)) throw std::invalid_argument("step must lie in (0, 1]");
  if (cfg.snapshot_every == 0) throw std::invalid_argument("snapshot interval must be at least 1");
  const bool exact_ok = x0.size() <= cfg.matcher.exact_cap;

  FlowResult res;
  PointCloud x = x0;
  if (snapshot) snapshot(0, x);
  for (std::size_t k = 0; k < cfg.iterations; ++k) {
    MatcherConfig mc = cfg.matcher;
    mc.seed = derive_seed(cfg.matcher.seed, k);
    const Plan plan = match(x, y, mc);
    FlowRecord rec{k, plan.rms(), std::nullopt};
    if (exact_ok && cfg.exact_every > 0 && (k % cfg.exact_every == 0 || k + 1 == cfg.iterations)) {
      rec.exact = mc.method == Method::exact ? plan.rms() : exact_w2(x, y, cfg.matcher.exact_cap);
    }
    res.log.push_back(rec);
    x = displacement_step(x, y, plan, cfg.step);
    const std::size_t done = k + 1;
    if (snapshot && (done % cfg.snapshot_every == 0 || done == cfg.iterations)) snapshot(done, x);
  }
  if (exact_ok && cfg.exact_every > 0) res.final_exact = exact_w2(x, y, cfg.matcher.exact_cap);
  res.final_x = std::move(x);
  return res;
}

}  // namespace rrm
