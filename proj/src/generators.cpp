#include "rrm/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "rrm/experiments.hpp"

namespace rrm {
namespace {

constexpr std::uint64_t kStreamX = 1;
constexpr std::uint64_t kStreamY = 2;

double clip01(double v) { return std::clamp(v, 0.0, 1.0); }

PointCloud gaussian_cloud(std::size_t n, std::size_t dim, double mean, double sigma, RngSeed seed) {
  Rng rng(seed);
  std::vector<double> c(n * dim);
  for (double& v : c) v = clip01(mean + sigma * rng.normal());
  return PointCloud(dim, std::move(c));
}

// First `bad` points on the bad slope, the rest on the good slope.
PointCloud line_cloud(std::size_t n, std::size_t bad, double bad_slope, double good_slope, RngSeed seed) {
  Rng rng(seed);
  std::vector<double> c(n * 2);
  for (std::size_t i = 0; i < n; ++i) sample_line(rng, i < bad ? bad_slope : good_slope, c.data() + 2 * i);
  return PointCloud(2, std::move(c));
}

}  // namespace

Family parse_family(std::string_view name) {
  if (name == "uniform-box") return Family::uniform_box;
  if (name == "gaussian-pair") return Family::gaussian_pair;
  if (name == "line-mixture") return Family::line_mixture;
  if (name == "opening-angle") return Family::opening_angle;
  if (name == "perturbed-copy") return Family::perturbed_copy;
  throw std::invalid_argument("unknown generator family '" + std::string(name) + "'");
}

std::string_view to_string(Family family) noexcept {
  switch (family) {
    case Family::uniform_box: return "uniform-box";
    case Family::gaussian_pair: return "gaussian-pair";
    case Family::line_mixture: return "line-mixture";
    case Family::opening_angle: return "opening-angle";
    case Family::perturbed_copy: return "perturbed-copy";
  }
  return "unknown";
}

void sample_line(Rng& rng, double slope, double* out) {
  // |slope| <= 1 spans x in [0,1]; steeper lines leave through top and bottom.
  const double half = std::abs(slope) <= 1.0 ? 0.5 : 0.5 / std::abs(slope);
  const double dx = (2.0 * rng.uniform() - 1.0) * half;
  out[0] = clip01(0.5 + dx);
  out[1] = clip01(0.5 + slope * dx);
}

void validate(const GeneratorSpec& s) {
  if (s.n == 0) throw std::invalid_argument("n must be positive");
  if (s.dim == 0) throw std::invalid_argument("dimension must be positive");
  switch (s.family) {
    case Family::gaussian_pair:
      if (!(s.t >= 0.0 && s.t <= 1.0)) throw std::invalid_argument("t must lie in [0, 1]");
      if (!(s.sigma > 0.0 && std::isfinite(s.sigma))) throw std::invalid_argument("sigma must be positive");
      break;
    case Family::line_mixture:
      if (s.dim != 2) throw std::invalid_argument("line-mixture is two-dimensional");
      if (!(s.frac_bads >= 0.0 && s.frac_bads <= 1.0)) throw std::invalid_argument("frac_bads must lie in [0, 1]");
      if (!std::isfinite(s.good_slope) || !std::isfinite(s.bad_slope)) {
        throw std::invalid_argument("slopes must be finite");
      }
      break;
    case Family::opening_angle:
      if (s.dim != 2) throw std::invalid_argument("opening-angle is two-dimensional");
      if (!(s.delta >= 0.0 && s.delta < std::numbers::pi / 2)) {
        throw std::invalid_argument("delta must lie in [0, pi/2)");
      }
      break;
    case Family::perturbed_copy:
      if (!(s.alpha >= 0.0 && std::isfinite(s.alpha))) throw std::invalid_argument("alpha must be nonnegative");
      break;
    case Family::uniform_box:
      break;
  }
}

CloudPair generate(const GeneratorSpec& s) {
  validate(s);
  const RngSeed sx = derive_seed(s.seed, kStreamX);
  const RngSeed sy = derive_seed(s.seed, kStreamY);
  switch (s.family) {
    case Family::uniform_box:
      return {uniform_sample(s.n, s.dim, sx), uniform_sample(s.n, s.dim, sy)};
    case Family::gaussian_pair: {
      const double m1 = (1.0 - s.t) * 0.8 + s.t * 0.5;
      const double m2 = (1.0 - s.t) * 0.1 + s.t * 0.5;
      return {gaussian_cloud(s.n, s.dim, m1, s.sigma, sx), gaussian_cloud(s.n, s.dim, m2, s.sigma, sy)};
    }
    case Family::line_mixture: {
      const auto bad = static_cast<std::size_t>(std::llround(s.frac_bads * static_cast<double>(s.n)));
      const double m = std::abs(s.bad_slope);
      return {line_cloud(s.n, bad, m, s.good_slope, sx), line_cloud(s.n, bad, -m, s.good_slope, sy)};
    }
    case Family::opening_angle: {
      const double base = std::atan(-1.0);
      const double slope_x = std::tan(base + 0.5 * s.delta);
      const double slope_y = std::tan(base - 0.5 * s.delta);
      return {line_cloud(s.n, 0, 0.0, slope_x, sx), line_cloud(s.n, 0, 0.0, slope_y, sy)};
    }
    case Family::perturbed_copy: {
      PointCloud x = uniform_sample(s.n, s.dim, sx);
      Rng rng(sy);
      std::vector<double> c(x.coords().begin(), x.coords().end());
      if (s.alpha > 0.0) {
        for (double& v : c) v += s.alpha * rng.normal();
      }
      PointCloud y(s.dim, std::move(c));
      return {std::move(x), std::move(y)};
    }
  }
  throw std::invalid_argument("unknown generator family");
}

}  // namespace rrm
