#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rrm/point_cloud.hpp"

namespace rrm {

/// Which coordinate axis is split at each recursion depth.
class AxisSchedule {
 public:
  enum class Kind { cycling, permuted };

  /// axis(h) = (start_axis + h) mod dim. With start 0 this is the usual
  /// j(h) = 1 + (h mod d) in 0-indexed form.
  static AxisSchedule cycling(std::size_t dim, std::size_t start_axis = 0);
  /// axis(h) = order[h mod dim]; `order` must be a permutation of [0, dim).
  static AxisSchedule permuted(std::vector<std::size_t> order);

  std::size_t axis(std::size_t depth) const noexcept { return order_[depth % order_.size()]; }
  std::size_t dim() const noexcept { return order_.size(); }
  Kind kind() const noexcept { return kind_; }

  friend bool operator==(const AxisSchedule&, const AxisSchedule&) = default;

 private:
  Kind kind_ = Kind::cycling;
  std::vector<std::size_t> order_{0};
};

/// Binary path code s_1..s_H of a point, packed most-significant-digit first:
/// digit s_h sits at bit (depth - h), so lexicographic order on codes of equal
/// depth is unsigned integer order.
struct Address {
  std::uint64_t code = 0;
  std::size_t depth = 0;

  /// Digit s_h for 1 <= h <= depth.
  int digit(std::size_t h) const noexcept { return static_cast<int>((code >> (depth - h)) & 1u); }
  /// The dyadic value sum_h s_h 2^-h in [0, 1).
  double value() const noexcept;

  friend auto operator<=>(const Address&, const Address&) = default;
};

/// Largest h <= depth such that the length-h prefixes of a and b agree.
std::size_t common_prefix_depth(const Address& a, const Address& b, std::size_t depth);

/// ceil(log2 n): the depth at which rank splitting leaves only singletons.
std::size_t full_depth(std::size_t n) noexcept;

inline constexpr std::size_t kMaxDepth = 63;

struct TreeNode {
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  std::size_t depth = 0;
  std::uint64_t key = 0;  // path prefix as an integer, 0-based k of node (h, k)
  std::size_t count = 0;
  std::size_t axis = 0;
  double threshold = 0.0;  // coordinate of the last point sent left
  bool split = false;
  std::size_t left = kNone;
  std::size_t right = kNone;
};

struct SplitThreshold {
  std::size_t depth = 0;
  std::uint64_t key = 0;
  double value = 0.0;
  friend bool operator==(const SplitThreshold&, const SplitThreshold&) = default;
};

/// Mass-median partition built by rank splitting. Nodes are stored breadth
/// first, with keys ascending within each depth.
class PartitionTree {
 public:
  PartitionTree(std::size_t depth, AxisSchedule schedule, std::vector<TreeNode> nodes)
      : depth_(depth), schedule_(std::move(schedule)), nodes_(std::move(nodes)) {}

  std::size_t depth() const noexcept { return depth_; }
  const AxisSchedule& schedule() const noexcept { return schedule_; }
  std::span<const TreeNode> nodes() const noexcept { return nodes_; }

  /// Address of an arbitrary point by threshold descent: go left when the
  /// coordinate is <= the node threshold. Digits below an unsplit node are 0.
  Address address_of(std::span<const double> point) const;

  /// Thresholds of all split nodes in (depth, key) order.
  std::vector<SplitThreshold> thresholds() const;

 private:
  std::size_t depth_;
  AxisSchedule schedule_;
  std::vector<TreeNode> nodes_;
};

struct BuiltTree {
  PartitionTree tree;
  std::vector<Address> addresses;  // per input point, from its rank-split path
  std::vector<std::size_t> order;  // tree-curve order; ties inside a leaf by input index
};

/// Recursive rank split: at node (h, k) the points are ordered by coordinate
/// schedule.axis(h), ties by input index; the first ceil(|S|/2) go left
/// (digit 0), the rest right. Recursion stops at `depth` or at singletons;
/// the remaining digits of a singleton are 0.
BuiltTree build_tree(const PointCloud& cloud, std::size_t depth, const AxisSchedule& schedule);

/// Permutation listing the points in lexicographic path-code order of the
/// full-depth tree (every leaf a singleton).
std::vector<std::size_t> tree_curve_order(const PointCloud& cloud, const AxisSchedule& schedule);

/// Flattened empirical split thresholds of the depth-`depth` tree under the
/// cycling schedule from axis 0.
std::vector<SplitThreshold> empirical_threshold_vector(const PointCloud& cloud, std::size_t depth);

}  // namespace rrm
