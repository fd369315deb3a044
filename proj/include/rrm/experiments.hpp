#pragma once

#include <cstddef>
#include <vector>

#include "rrm/point_cloud.hpp"
#include "rrm/random.hpp"

namespace rrm {

struct ConvergenceRow {
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;              // sample standard deviation over reps (0 for one rep)
  std::vector<double> values;   // one anchored RRM value per rep
};

struct ConvergenceTable {
  std::size_t dim = 1;
  std::vector<ConvergenceRow> rows;
  double slope = 0.0;            // least-squares slope of log(mean) on log(n)
  double theory_exponent = 0.0;  // -min(1/(2d), 1/4)
};

/// Anchored RRM of uniform samples on [0,1]^d for every n and rep. Rep r of
/// size n uses seed derive_seed(derive_seed(seed, n), r).
ConvergenceTable convergence_experiment(std::size_t dim, const std::vector<std::size_t>& ns, std::size_t reps,
                                        RngSeed seed, std::size_t eval_depth = 32);

struct ThresholdRow {
  std::size_t n = 0;
  double median = 0.0;          // median over reps of the max deviation
  std::vector<double> values;   // max_{h,k} |m_n(h,k) - m(h,k)| per rep
};

/// Empirical mass-median thresholds of uniform samples against the dyadic
/// midpoints of the population tree.
std::vector<ThresholdRow> threshold_consistency_experiment(std::size_t dim, std::size_t depth,
                                                           const std::vector<std::size_t>& ns, std::size_t reps,
                                                           RngSeed seed);

/// Uniform sample of [0,1)^d.
PointCloud uniform_sample(std::size_t n, std::size_t dim, RngSeed seed);

/// -min(1/(2d), 1/4): the rate exponent for the uniform population.
double theory_exponent(std::size_t dim);

double median(std::vector<double> values);

}  // namespace rrm
