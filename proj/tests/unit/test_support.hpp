#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "rrm/point_cloud.hpp"
#include "rrm/random.hpp"

namespace rrm::testing {

inline PointCloud random_cloud(std::size_t n, std::size_t d, std::uint64_t seed) {
  Rng rng(RngSeed{seed});
  std::vector<double> c(n * d);
  for (double& v : c) v = rng.uniform();
  return PointCloud(d, std::move(c));
}

/// Minimum of sum_i cost(i, perm[i]) over all permutations.
template <class Cost>
double brute_force_assignment(std::size_t n, Cost cost) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double best = std::numeric_limits<double>::infinity();
  do {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += cost(i, perm[i]);
    best = std::min(best, s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// Squared-cost of the sorted (monotone) coupling of two 1-D clouds.
inline double sorted_matching_cost(const PointCloud& x, const PointCloud& y) {
  std::vector<double> a(x.coords().begin(), x.coords().end());
  std::vector<double> b(y.coords().begin(), y.coords().end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

inline bool is_permutation(std::span<const std::size_t> t) {
  std::vector<char> seen(t.size(), 0);
  for (std::size_t j : t) {
    if (j >= t.size() || seen[j]) return false;
    seen[j] = 1;
  }
  return true;
}

inline std::filesystem::path temp_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("rrm_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace rrm::testing
