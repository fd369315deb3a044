#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rrm/point_cloud.hpp"

namespace rrm {

/// The uniform distribution on [0,1]^d with its analytic mass-median tree
/// under the cycling schedule: every threshold is a dyadic midpoint, so the
/// address of a point interleaves the binary digits of its coordinates
/// (digit h lies on axis (h - 1) mod d) and the tree curve de-interleaves.
class UniformPopulation {
 public:
  static constexpr std::size_t kMaxEvalDepth = 40;

  explicit UniformPopulation(std::size_t dim, std::size_t eval_depth = 32);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t eval_depth() const noexcept { return depth_; }

  /// Address of a point of [0,1]^d truncated to eval_depth digits, as an
  /// integer in [0, 2^eval_depth).
  std::uint64_t address(std::span<const double> point) const;

  /// Tree-curve point for the dyadic parameter code / 2^eval_depth: the lower
  /// corner of the depth-eval_depth cell with that address.
  std::vector<double> curve_point(std::uint64_t code) const;

  /// Split value of node (h, key), where key holds the first h digits.
  double threshold(std::size_t h, std::uint64_t key) const;

  /// Lower corners and widths of the depth-`level` cell with prefix `prefix`.
  void cell_box(std::uint64_t prefix, std::size_t level, std::vector<double>& lower, std::vector<double>& width) const;

 private:
  std::size_t dim_;
  std::size_t depth_;
};

/// Anchored empirical RRM between the uniform population and a sample of it:
/// the L2 distance between T(t) and T(g_n^-1(t)) over t in [0,1), where g_n
/// is the empirical prefix-mass function of the sample addresses. Step
/// breakpoints k/n are placed on the 2^-eval_depth grid and each step is
/// integrated exactly over aligned dyadic blocks.
double anchored_rrm_uniform(const PointCloud& sample, const UniformPopulation& pop);

}  // namespace rrm
