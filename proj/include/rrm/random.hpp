#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace rrm {

struct RngSeed {
  std::uint64_t value = 0;
  friend bool operator==(RngSeed, RngSeed) = default;
};

/// Child seed for an independent stream. Pure function of (parent, stream):
/// every randomized component derives its own seed instead of sharing an
/// engine, so results do not depend on evaluation order or thread count.
RngSeed derive_seed(RngSeed parent, std::uint64_t stream) noexcept;

class Rng {
 public:
  explicit Rng(RngSeed seed) : engine_(seed.value) {}

  double uniform() { return uniform_(engine_); }
  double normal() { return normal_(engine_); }
  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_); }

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace rrm
