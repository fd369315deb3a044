#include "rrm/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rrm/anchored.hpp"
#include "rrm/partition.hpp"

namespace rrm {

PointCloud uniform_sample(std::size_t n, std::size_t dim, RngSeed seed) {
  Rng rng(seed);
  std::vector<double> coords(n * dim);
  for (double& c : coords) c = rng.uniform();
  return PointCloud(dim, std::move(coords));
}

double theory_exponent(std::size_t dim) {
  return -std::min(1.0 / (2.0 * static_cast<double>(dim)), 0.25);
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of nothing");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

ConvergenceTable convergence_experiment(std::size_t dim, const std::vector<std::size_t>& ns, std::size_t reps,
                                        RngSeed seed, std::size_t eval_depth) {
  if (reps == 0) throw std::invalid_argument("need at least one rep");
  const UniformPopulation pop(dim, eval_depth);
  ConvergenceTable table;
  table.dim = dim;
  table.theory_exponent = theory_exponent(dim);
  for (std::size_t n : ns) {
    if (n == 0) throw std::invalid_argument("sample size must be positive");
    ConvergenceRow row;
    row.n = n;
    row.values.resize(reps);
    const RngSeed base = derive_seed(seed, n);
    const auto r_count = static_cast<std::ptrdiff_t>(reps);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t r = 0; r < r_count; ++r) {
      const PointCloud s = uniform_sample(n, dim, derive_seed(base, static_cast<std::uint64_t>(r)));
      row.values[static_cast<std::size_t>(r)] = anchored_rrm_uniform(s, pop);
    }
    double sum = 0.0;
    for (double v : row.values) sum += v;
    row.mean = sum / static_cast<double>(reps);
    double ss = 0.0;
    for (double v : row.values) ss += (v - row.mean) * (v - row.mean);
    row.sd = reps > 1 ? std::sqrt(ss / static_cast<double>(reps - 1)) : 0.0;
    table.rows.push_back(std::move(row));
  }
  if (table.rows.size() >= 2) {
    double mx = 0.0, my = 0.0;
    for (const auto& r : table.rows) {
      mx += std::log(static_cast<double>(r.n));
      my += std::log(r.mean);
    }
    mx /= static_cast<double>(table.rows.size());
    my /= static_cast<double>(table.rows.size());
    double sxy = 0.0, sxx = 0.0;
    for (const auto& r : table.rows) {
      const double dx = std::log(static_cast<double>(r.n)) - mx;
      sxy += dx * (std::log(r.mean) - my);
      sxx += dx * dx;
    }
    table.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  }
  return table;
}

std::vector<ThresholdRow> threshold_consistency_experiment(std::size_t dim, std::size_t depth,
                                                           const std::vector<std::size_t>& ns, std::size_t reps,
                                                           RngSeed seed) {
  if (reps == 0) throw std::invalid_argument("need at least one rep");
  const UniformPopulation pop(dim, std::max<std::size_t>(depth, 1));
  std::vector<ThresholdRow> rows;
  for (std::size_t n : ns) {
    if (n == 0) throw std::invalid_argument("sample size must be positive");
    ThresholdRow row;
    row.n = n;
    row.values.resize(reps);
    const RngSeed base = derive_seed(seed, n);
    const auto r_count = static_cast<std::ptrdiff_t>(reps);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t r = 0; r < r_count; ++r) {
      const PointCloud s = uniform_sample(n, dim, derive_seed(base, static_cast<std::uint64_t>(r)));
      double worst = 0.0;
      for (const SplitThreshold& t : empirical_threshold_vector(s, depth)) {
        worst = std::max(worst, std::abs(t.value - pop.threshold(t.depth, t.key)));
      }
      row.values[static_cast<std::size_t>(r)] = worst;
    }
    row.median = median(row.values);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace rrm
