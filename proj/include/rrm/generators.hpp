#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "rrm/point_cloud.hpp"
#include "rrm/random.hpp"

namespace rrm {

enum class Family { uniform_box, gaussian_pair, line_mixture, opening_angle, perturbed_copy };

Family parse_family(std::string_view name);
std::string_view to_string(Family family) noexcept;

/// Parameters of every family; each family reads only its own fields.
struct GeneratorSpec {
  Family family = Family::uniform_box;
  std::size_t n = 1000;
  std::size_t dim = 2;
  RngSeed seed{};

  // gaussian-pair: means move from (0.8,..) and (0.1,..) to (0.5,..) as t -> 1
  double t = 0.0;
  double sigma = 0.1;
  // line-mixture: X bad points on slope +|bad_slope|, Y bad points on -|bad_slope|
  double frac_bads = 0.0;
  double good_slope = -1.0;
  double bad_slope = 100.0;
  // opening-angle: X and Y lines at atan(-1) +/- delta/2
  double delta = 0.0;
  // perturbed-copy: Y = X + alpha * N(0, I)
  double alpha = 0.0;
};

struct CloudPair {
  PointCloud x;
  PointCloud y;
};

/// Throws std::invalid_argument for parameters outside a family's domain.
void validate(const GeneratorSpec& spec);

/// Deterministic in spec (including the seed).
CloudPair generate(const GeneratorSpec& spec);

/// The segment of the line through (0.5, 0.5) with the given slope that lies
/// in the unit square, sampled uniformly along its length.
void sample_line(Rng& rng, double slope, double* out);

}  // namespace rrm
