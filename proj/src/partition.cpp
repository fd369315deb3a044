#include "rrm/partition.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "rrm/error.hpp"

namespace rrm {
namespace {

struct RankLess {
  const PointCloud* cloud;
  std::size_t axis;
  bool operator()(std::size_t a, std::size_t b) const noexcept {
    const double va = (*cloud)(a, axis);
    const double vb = (*cloud)(b, axis);
    return va < vb || (va == vb && a < b);
  }
};

// Tree-curve workspace: the coordinates are kept physically permuted along
// with the index array so each split reads and writes contiguous memory.
struct CurveWorkspace {
  std::size_t dim;
  std::vector<double> coords;
  std::vector<std::size_t> index;
  struct Rec {
    double key;
    std::uint32_t index;
    std::uint32_t pos;
  };
  std::vector<Rec> recs;
  std::vector<double> tmp;
};

void split_to_singletons(CurveWorkspace& w, std::size_t lo, std::size_t hi, std::size_t h,
                         const AxisSchedule& schedule) {
  const std::size_t d = w.dim;
  while (hi - lo >= 2) {
    const std::size_t count = hi - lo;
    const std::size_t left = (count + 1) / 2;
    const std::size_t axis = schedule.axis(h);
    for (std::size_t r = 0; r < count; ++r) w.recs[r] = {w.coords[(lo + r) * d + axis], static_cast<std::uint32_t>(w.index[lo + r]),
                                   static_cast<std::uint32_t>(r)};
    std::nth_element(w.recs.begin(), w.recs.begin() + static_cast<std::ptrdiff_t>(left - 1),
                     w.recs.begin() + static_cast<std::ptrdiff_t>(count),
                     [](const CurveWorkspace::Rec& a, const CurveWorkspace::Rec& b) {
                       return a.key < b.key || (a.key == b.key && a.index < b.index);
                     });
    const double* src = w.coords.data() + lo * d;
    for (std::size_t r = 0; r < count; ++r) {
      std::copy_n(src + w.recs[r].pos * d, d, w.tmp.data() + r * d);
      w.index[lo + r] = w.recs[r].index;
    }
    std::copy_n(w.tmp.data(), count * d, w.coords.data() + lo * d);
    split_to_singletons(w, lo, lo + left, h + 1, schedule);
    lo += left;
    ++h;
  }
}

}  // namespace

AxisSchedule AxisSchedule::cycling(std::size_t dim, std::size_t start_axis) {
  if (dim == 0) throw std::invalid_argument("axis schedule needs dim >= 1");
  if (start_axis >= dim) throw std::invalid_argument("start axis out of range");
  AxisSchedule s;
  s.kind_ = Kind::cycling;
  s.order_.resize(dim);
  for (std::size_t h = 0; h < dim; ++h) s.order_[h] = (start_axis + h) % dim;
  return s;
}

AxisSchedule AxisSchedule::permuted(std::vector<std::size_t> order) {
  if (order.empty()) throw std::invalid_argument("axis schedule needs dim >= 1");
  std::vector<bool> seen(order.size(), false);
  for (std::size_t a : order) {
    if (a >= order.size() || seen[a]) throw std::invalid_argument("axis order is not a permutation");
    seen[a] = true;
  }
  AxisSchedule s;
  s.kind_ = Kind::permuted;
  s.order_ = std::move(order);
  return s;
}

double Address::value() const noexcept { return std::ldexp(static_cast<double>(code), -static_cast<int>(depth)); }

std::size_t common_prefix_depth(const Address& a, const Address& b, std::size_t depth) {
  const std::uint64_t diff = a.code ^ b.code;
  if (diff == 0) return depth;
  return depth - static_cast<std::size_t>(std::bit_width(diff));
}

std::size_t full_depth(std::size_t n) noexcept {
  return n <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(n - 1));
}

Address PartitionTree::address_of(std::span<const double> point) const {
  Address a{0, depth_};
  std::size_t node = 0;
  for (std::size_t h = 0; h < depth_; ++h) {
    const TreeNode& nd = nodes_[node];
    if (!nd.split) break;
    if (point[nd.axis] > nd.threshold) {
      a.code |= std::uint64_t{1} << (depth_ - 1 - h);
      node = nd.right;
    } else {
      node = nd.left;
    }
  }
  return a;
}

std::vector<SplitThreshold> PartitionTree::thresholds() const {
  std::vector<SplitThreshold> out;
  for (const TreeNode& nd : nodes_) {
    if (nd.split) out.push_back({nd.depth, nd.key, nd.threshold});
  }
  return out;
}

BuiltTree build_tree(const PointCloud& cloud, std::size_t depth, const AxisSchedule& schedule) {
  if (cloud.empty()) throw DataError("empty cloud");
  if (depth < 1) throw std::invalid_argument("tree depth must be at least 1");
  if (depth > kMaxDepth) {
    throw std::invalid_argument("tree depth " + std::to_string(depth) + " exceeds the 63-digit address bound");
  }
  if (schedule.dim() != cloud.dim()) throw std::invalid_argument("axis schedule dimension mismatch");

  const std::size_t n = cloud.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<std::uint64_t> codes(n, 0);
  std::vector<TreeNode> nodes;
  nodes.push_back({0, 0, n, schedule.axis(0)});

  struct Segment {
    std::size_t lo, hi, node;
  };
  std::vector<Segment> level{{0, n, 0}};
  for (std::size_t h = 0; h < depth; ++h) {
    std::vector<Segment> next;
    const std::size_t axis = schedule.axis(h);
    for (const Segment& seg : level) {
      const std::size_t count = seg.hi - seg.lo;
      if (count < 2) continue;
      const std::size_t left = (count + 1) / 2;
      const auto first = order.begin() + static_cast<std::ptrdiff_t>(seg.lo);
      std::nth_element(first, first + static_cast<std::ptrdiff_t>(left - 1),
                       order.begin() + static_cast<std::ptrdiff_t>(seg.hi), RankLess{&cloud, axis});
      const std::size_t mid = seg.lo + left;
      for (std::size_t i = mid; i < seg.hi; ++i) codes[order[i]] |= std::uint64_t{1} << (depth - 1 - h);

      const std::uint64_t key = nodes[seg.node].key;
      const std::size_t li = nodes.size();
      nodes.push_back({h + 1, key << 1, left, schedule.axis(h + 1)});
      nodes.push_back({h + 1, (key << 1) | 1u, count - left, schedule.axis(h + 1)});
      TreeNode& parent = nodes[seg.node];
      parent.split = true;
      parent.threshold = cloud(order[mid - 1], axis);
      parent.left = li;
      parent.right = li + 1;
      next.push_back({seg.lo, mid, li});
      next.push_back({mid, seg.hi, li + 1});
    }
    level = std::move(next);
  }
  for (const Segment& seg : level) {
    std::sort(order.begin() + static_cast<std::ptrdiff_t>(seg.lo), order.begin() + static_cast<std::ptrdiff_t>(seg.hi));
  }

  std::vector<Address> addresses(n);
  for (std::size_t i = 0; i < n; ++i) addresses[i] = {codes[i], depth};
  return {PartitionTree(depth, schedule, std::move(nodes)), std::move(addresses), std::move(order)};
}

std::vector<std::size_t> tree_curve_order(const PointCloud& cloud, const AxisSchedule& schedule) {
  if (schedule.dim() != cloud.dim()) throw std::invalid_argument("axis schedule dimension mismatch");
  const std::size_t n = cloud.size();
  if (n > std::numeric_limits<std::uint32_t>::max()) throw std::invalid_argument("cloud too large for a tree-curve order");
  CurveWorkspace w{cloud.dim(), {cloud.coords().begin(), cloud.coords().end()}, std::vector<std::size_t>(n),
                   std::vector<CurveWorkspace::Rec>(n), std::vector<double>(cloud.coords().size())};
  std::iota(w.index.begin(), w.index.end(), std::size_t{0});
  split_to_singletons(w, 0, n, 0, schedule);
  return std::move(w.index);
}

std::vector<SplitThreshold> empirical_threshold_vector(const PointCloud& cloud, std::size_t depth) {
  return build_tree(cloud, depth, AxisSchedule::cycling(cloud.dim())).tree.thresholds();
}

}  // namespace rrm
