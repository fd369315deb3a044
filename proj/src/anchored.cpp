#include "rrm/anchored.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rrm/error.hpp"

namespace rrm {

UniformPopulation::UniformPopulation(std::size_t dim, std::size_t eval_depth) : dim_(dim), depth_(eval_depth) {
  if (dim == 0) throw std::invalid_argument("dimension must be at least 1");
  if (eval_depth == 0 || eval_depth > kMaxEvalDepth) {
    throw std::invalid_argument("evaluation depth must lie in [1, 40]");
  }
}

std::uint64_t UniformPopulation::address(std::span<const double> point) const {
  std::uint64_t code = 0;
  std::vector<std::uint64_t> digits(dim_);
  for (std::size_t a = 0; a < dim_; ++a) {
    const double v = point[a];
    if (!(v >= 0.0 && v <= 1.0)) throw DataError("point outside the unit box on axis " + std::to_string(a));
    const std::size_t bits = (depth_ + dim_ - 1 - a) / dim_;  // digits that land on axis a
    const std::uint64_t top = std::uint64_t{1} << bits;
    digits[a] = std::min(static_cast<std::uint64_t>(std::ldexp(v, static_cast<int>(bits))), top - 1);
    digits[a] <<= (64 - bits) % 64;
    if (bits == 0) digits[a] = 0;
  }
  for (std::size_t h = 0; h < depth_; ++h) {
    std::uint64_t& d = digits[h % dim_];
    code = (code << 1) | (d >> 63);
    d <<= 1;
  }
  return code;
}

void UniformPopulation::cell_box(std::uint64_t prefix, std::size_t level, std::vector<double>& lower,
                                 std::vector<double>& width) const {
  std::vector<std::uint64_t> cell(dim_, 0);
  std::vector<int> bits(dim_, 0);
  for (std::size_t h = 0; h < level; ++h) {
    const std::size_t a = h % dim_;
    cell[a] = (cell[a] << 1) | ((prefix >> (level - 1 - h)) & 1u);
    ++bits[a];
  }
  lower.resize(dim_);
  width.resize(dim_);
  for (std::size_t a = 0; a < dim_; ++a) {
    width[a] = std::ldexp(1.0, -bits[a]);
    lower[a] = static_cast<double>(cell[a]) * width[a];
  }
}

std::vector<double> UniformPopulation::curve_point(std::uint64_t code) const {
  std::vector<double> lower, width;
  cell_box(code, depth_, lower, width);
  return lower;
}

double UniformPopulation::threshold(std::size_t h, std::uint64_t key) const {
  std::vector<double> lower, width;
  cell_box(key, h, lower, width);
  const std::size_t a = h % dim_;
  return lower[a] + 0.5 * width[a];
}

double anchored_rrm_uniform(const PointCloud& sample, const UniformPopulation& pop) {
  if (sample.empty()) throw DataError("empty cloud");
  if (sample.dim() != pop.dim()) throw DataError("sample dimension does not match the population");
  const std::size_t n = sample.size();
  const std::size_t depth = pop.eval_depth();
  const std::size_t d = pop.dim();

  std::vector<std::uint64_t> codes(n);
  for (std::size_t i = 0; i < n; ++i) codes[i] = pop.address(sample.point(i));
  std::sort(codes.begin(), codes.end());

  const unsigned __int128 grid = static_cast<unsigned __int128>(1) << depth;
  const double grid_len = std::ldexp(1.0, -static_cast<int>(depth));
  std::vector<double> lower, width;
  double total = 0.0;
  std::uint64_t lo = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const auto hi = static_cast<std::uint64_t>(grid * (k + 1) / n);
    const std::vector<double> target = pop.curve_point(codes[k]);
    double step = 0.0;
    while (lo < hi) {
      int b = lo == 0 ? static_cast<int>(depth) : std::countr_zero(lo);
      while ((std::uint64_t{1} << b) > hi - lo) --b;
      const std::size_t level = depth - static_cast<std::size_t>(b);
      pop.cell_box(lo >> b, level, lower, width);
      double s = 0.0;
      for (std::size_t a = 0; a < d; ++a) {
        const double c = lower[a] + 0.5 * width[a] - target[a];
        s += c * c + width[a] * width[a] / 12.0;
      }
      step += std::ldexp(s, b);
      lo += std::uint64_t{1} << b;
    }
    total += step * grid_len;
  }
  return std::sqrt(total);
}

}  // namespace rrm
