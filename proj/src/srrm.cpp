#include "rrm/srrm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "rrm/error.hpp"
#include "rrm/matching.hpp"

namespace rrm {
namespace {

// Stream ids for per-round seeds; disjoint from the run indices of merged_rrm.
constexpr std::uint64_t kAnchorStreamX = 1u << 20;
constexpr std::uint64_t kAnchorStreamY = 2u << 20;
constexpr std::uint64_t kMergeStream = 3u << 20;

}  // namespace

PointCloud sample_near(const PointCloud& p, std::size_t k, RngSeed seed) {
  if (p.empty()) throw DataError("empty cloud");
  const std::size_t n = p.size();
  const std::size_t d = p.dim();
  if (k > std::numeric_limits<std::size_t>::max() / (n * d)) throw std::invalid_argument("anchor count overflows");
  if (k == 0) return PointCloud(d, {});

  std::vector<double> sigma(n, 0.01);
  if (n > 1) {
    const kernels::NearestNeighbors nn = kernels::nearest_neighbors(p, p, true);
    for (std::size_t i = 0; i < n; ++i) sigma[i] = std::sqrt(nn.squared[i]);
  }
  Rng rng(seed);
  std::vector<double> out;
  out.reserve(n * k * d);
  for (std::size_t i = 0; i < n; ++i) {
    const auto pi = p.point(i);
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t j = 0; j < d; ++j) out.push_back(std::clamp(pi[j] + sigma[i] * rng.normal(), 0.0, 1.0));
    }
  }
  return PointCloud(d, std::move(out));
}

Selection select_pairs(const Plan& t, std::size_t m) {
  const std::size_t total = t.size();
  if (m > total) throw DataError("more real points than plan entries");
  require_complete(t, total);
  Selection s;
  std::vector<char> hit(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (t[i] < m) {
      s.good.emplace_back(i, t[i]);
      hit[t[i]] = 1;
    } else {
      s.cx.push_back(i);
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (!hit[j]) s.cy.push_back(j);
  }
  if (s.cx.size() != s.cy.size()) throw DataError("unbalanced selection");
  return s;
}

Plan finalize_hungarian(const PointCloud& x, const PointCloud& y, const Plan& partial, std::size_t cap) {
  require_matched_pair(x, y);
  const std::size_t n = x.size();
  if (partial.size() != n) throw DataError("partial plan size does not match the clouds");
  std::vector<std::size_t> rows, cols;
  std::vector<char> used(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (partial[i] == Plan::kUnassigned) {
      rows.push_back(i);
    } else {
      used[partial[i]] = 1;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!used[j]) cols.push_back(j);
  }
  std::vector<std::size_t> targets(partial.targets().begin(), partial.targets().end());
  const std::size_t u = rows.size();
  if (u > 0) {
    if (u > cap) {
      throw CapExceededError(u, cap,
                             "residual of " + std::to_string(u) + " unmatched points exceeds the Hungarian cap of " +
                                 std::to_string(cap) + "; run more screening rounds or raise the cap");
    }
    const std::vector<std::size_t> assign = detail::solve_assignment(u, [&](std::size_t a, std::size_t b) {
      return squared_distance(x.point(rows[a]), y.point(cols[b]));
    });
    for (std::size_t a = 0; a < u; ++a) targets[rows[a]] = cols[assign[a]];
  }
  return Plan::from_targets(std::move(targets), x, y);
}

SrrmResult srrm_match(const PointCloud& x, const PointCloud& y, const SrrmConfig& cfg) {
  require_matched_pair(x, y);
  if (cfg.runs == 0) throw std::invalid_argument("merge runs K must be at least 1");
  const std::size_t n = x.size();

  SrrmResult res;
  if (cfg.rounds == 0 || cfg.anchors == 0) {
    res.plan = merged_rrm(x, y, cfg.runs, cfg.seed, cfg.exec);
    res.distance = res.plan.rms();
    res.state.pi = res.plan;
    return res;
  }

  const AnchorSampler sampler = cfg.sampler ? cfg.sampler : AnchorSampler(sample_near);
  ScreeningState& st = res.state;
  std::vector<std::size_t> pi(n, Plan::kUnassigned);
  st.cx.resize(n);
  st.cy.resize(n);
  for (std::size_t i = 0; i < n; ++i) st.cx[i] = st.cy[i] = i;

  for (std::size_t r = 0; r < cfg.rounds; ++r) {
    const std::size_t m = st.cx.size();
    if (m == 0) break;
    const PointCloud xs = subset(x, st.cx);
    const PointCloud ys = subset(y, st.cy);
    const PointCloud z = concat(sampler(xs, cfg.anchors, derive_seed(cfg.seed, kAnchorStreamX + r)),
                                sampler(ys, cfg.anchors, derive_seed(cfg.seed, kAnchorStreamY + r)));
    const Plan t = merged_rrm(concat(xs, z), concat(ys, z), cfg.runs, derive_seed(cfg.seed, kMergeStream + r), cfg.exec);
    const Selection sel = select_pairs(t, m);
    for (const auto& [i, j] : sel.good) pi[st.cx[i]] = st.cy[j];
    std::vector<std::size_t> cx, cy;
    cx.reserve(sel.cx.size());
    cy.reserve(sel.cy.size());
    for (std::size_t i : sel.cx) cx.push_back(st.cx[i]);
    for (std::size_t j : sel.cy) cy.push_back(st.cy[j]);
    st.cx = std::move(cx);
    st.cy = std::move(cy);
    st.round = r + 1;
    st.history.push_back(st.cx.size());
  }
  st.pi = Plan::from_targets(pi, x, y);
  res.residual = st.cx.size();
  res.plan = finalize_hungarian(x, y, st.pi, cfg.hungarian_cap);
  if (cfg.guard) {
    Plan fallback = merged_rrm(x, y, cfg.runs, cfg.seed, cfg.exec);
    if (fallback.squared_cost_sum() < res.plan.squared_cost_sum()) {
      res.plan = std::move(fallback);
      res.guard_used = true;
    }
  }
  res.distance = res.plan.rms();
  return res;
}

}  // namespace rrm
