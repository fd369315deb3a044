#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <limits>

#include "rrm/error.hpp"
#include "rrm/normalize.hpp"
#include "rrm/plan.hpp"
#include "rrm/pointcloud_io.hpp"
#include "rrm/random.hpp"
#include "test_support.hpp"

namespace rrm {
namespace {

using testing::random_cloud;

TEST(PointCloud, RejectsNonFiniteWithIndex) {
  try {
    PointCloud(2, {0.0, 1.0, std::numeric_limits<double>::quiet_NaN(), 0.0});
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("point 1"), std::string::npos) << e.what();
  }
  EXPECT_THROW(PointCloud(1, {std::numeric_limits<double>::infinity()}), DataError);
}

TEST(PointCloud, RejectsRaggedCoordinateCount) { EXPECT_THROW(PointCloud(3, {1.0, 2.0}), DataError); }

TEST(Normalize, JointMapForcedByMinMax) {
  const auto x = PointCloud::from_rows({{2, 4}, {4, 8}});
  const auto y = PointCloud::from_rows({{3, 6}, {2, 4}});
  const NormalizedPair r = normalize_unit_box(x, y, NormalizeMode::joint);
  EXPECT_EQ(r.x, PointCloud::from_rows({{0, 0}, {1, 1}}));
  EXPECT_EQ(r.y, PointCloud::from_rows({{0.5, 0.5}, {0, 0}}));
}

TEST(Normalize, DegenerateAxisMapsToCenter) {
  const auto x = PointCloud::from_rows({{7}});
  const NormalizedPair r = normalize_unit_box(x, x);
  EXPECT_EQ(r.x(0, 0), 0.5);
  EXPECT_EQ(r.y(0, 0), 0.5);
  EXPECT_EQ(r.transform.inverse_x(r.x), x);
}

TEST(Normalize, UniformBoxHitsBoundsPerAxis) {
  Rng rng(RngSeed{5});
  std::vector<double> cx(200), cy(200);
  for (double& v : cx) v = -5.0 + 10.0 * rng.uniform();
  for (double& v : cy) v = -5.0 + 10.0 * rng.uniform();
  const PointCloud x(2, cx), y(2, cy);
  const NormalizedPair r = normalize_unit_box(x, y);
  for (std::size_t j = 0; j < 2; ++j) {
    double lo = 1e300, hi = -1e300;
    for (const PointCloud* c : {&r.x, &r.y}) {
      for (std::size_t i = 0; i < c->size(); ++i) {
        EXPECT_GE((*c)(i, j), 0.0);
        EXPECT_LE((*c)(i, j), 1.0);
        lo = std::min(lo, (*c)(i, j));
        hi = std::max(hi, (*c)(i, j));
      }
    }
    EXPECT_EQ(lo, 0.0);
    EXPECT_EQ(hi, 1.0);
  }
}

TEST(Normalize, PerCloudUsesEachBox) {
  const auto x = PointCloud::from_rows({{0, 0}, {2, 2}});
  const auto y = PointCloud::from_rows({{10, 10}, {11, 12}});
  const NormalizedPair r = normalize_unit_box(x, y, NormalizeMode::per_cloud);
  EXPECT_EQ(r.x, PointCloud::from_rows({{0, 0}, {1, 1}}));
  EXPECT_EQ(r.y, PointCloud::from_rows({{0, 0}, {1, 1}}));
  EXPECT_EQ(r.transform.inverse_y(r.y), y);
}

TEST(Normalize, IdempotentOnNormalizedData) {
  const PointCloud x = normalize_unit_box(random_cloud(50, 3, 1), random_cloud(50, 3, 2)).x;
  const PointCloud y = normalize_unit_box(random_cloud(50, 3, 1), random_cloud(50, 3, 2)).y;
  const NormalizedPair again = normalize_unit_box(x, y);
  EXPECT_EQ(again.x, x);
  EXPECT_EQ(again.y, y);
}

TEST(Normalize, InverseRoundTrip) {
  const PointCloud x = random_cloud(40, 2, 3);
  const PointCloud y = random_cloud(40, 2, 4);
  const NormalizedPair r = normalize_unit_box(x, y);
  const PointCloud back = r.transform.inverse_x(r.x);
  for (std::size_t k = 0; k < x.coords().size(); ++k) EXPECT_NEAR(back.coords()[k], x.coords()[k], 1e-15);
}

TEST(Normalize, RejectsMismatchedDimensions) {
  EXPECT_THROW(normalize_unit_box(random_cloud(3, 2, 1), random_cloud(3, 3, 1)), DataError);
}

TEST(CsvFormat, ParsesRows) {
  const PointCloud c = parse_csv("0.1,0.2\n0.3,0.4");
  EXPECT_EQ(c.size(), 2u);
  EXPECT_EQ(c.dim(), 2u);
  EXPECT_EQ(c(1, 0), 0.3);
}

TEST(CsvFormat, HeaderAndCrlf) {
  const PointCloud c = parse_csv("# x,y\r\n1,2\r\n3,4\r\n");
  EXPECT_EQ(c, PointCloud::from_rows({{1, 2}, {3, 4}}));
}

TEST(CsvFormat, RaggedRowReportsLine) {
  try {
    parse_csv("1,2\n3\n");
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}

TEST(CsvFormat, NonNumericCellReportsLine) {
  try {
    parse_csv("1,2\n3,abc\n");
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}

TEST(CsvFormat, EmptyInputIsEmptyCloud) { EXPECT_THROW(parse_csv("# only header\n"), DataError); }

TEST(PcfFormat, EmptyCloudRejected) {
  std::string bytes = "PCF1";
  bytes.append(8, '\0');
  try {
    parse_pcf(bytes);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("empty cloud"), std::string::npos);
  }
}

TEST(PcfFormat, BadMagicAndTruncation) {
  std::string good = format_pcf(random_cloud(3, 2, 9));
  std::string bad = good;
  bad[0] = 'X';
  EXPECT_THROW(parse_pcf(bad), DataError);
  EXPECT_THROW(parse_pcf(good.substr(0, good.size() - 1)), DataError);
  EXPECT_THROW(parse_pcf(good + "x"), DataError);
  EXPECT_THROW(parse_pcf("PCF"), DataError);
}

TEST(PcfFormat, LittleEndianLayout) {
  const std::string b = format_pcf(PointCloud::from_rows({{1.0}}));
  ASSERT_EQ(b.size(), 4u + 8u + 8u);
  EXPECT_EQ(b.substr(0, 4), "PCF1");
  EXPECT_EQ(static_cast<unsigned char>(b[4]), 1u);
  EXPECT_EQ(static_cast<unsigned char>(b[8]), 1u);
  EXPECT_EQ(static_cast<unsigned char>(b[19]), 0x3fu);  // top byte of 1.0
}

TEST(CloudIo, RoundTripsBitIdentically) {
  const auto dir = testing::temp_dir("io");
  const PointCloud c = random_cloud(1000, 3, 11);
  for (CloudFormat f : {CloudFormat::csv, CloudFormat::pcf}) {
    const auto path = dir / (std::string("c.") + std::string(to_string(f)));
    save_point_cloud(c, path, f);
    EXPECT_EQ(load_point_cloud(path, f), c);
  }
}

TEST(CloudIo, CsvKeepsSeventeenDigits) {
  const PointCloud c = PointCloud::from_rows({{0.1, 1.0 / 3.0, 2e-300}, {-7.25, 1e17, 3.0}, {0, 0, 0}});
  EXPECT_EQ(parse_csv(format_csv(c)), c);
}

TEST(CloudIo, UnsupportedFormatTag) {
  EXPECT_THROW(parse_cloud_format("xyz"), std::invalid_argument);
  EXPECT_THROW(format_from_path("points.txt"), std::invalid_argument);
  EXPECT_EQ(format_from_path("a/b.pcf"), CloudFormat::pcf);
}

TEST(CloudIo, MissingFileIsDataError) {
  EXPECT_THROW(load_point_cloud("/nonexistent/rrm.csv", CloudFormat::csv), DataError);
}

TEST(Plan, CostMatchesRecomputation) {
  const PointCloud x = random_cloud(30, 2, 1), y = random_cloud(30, 2, 2);
  std::vector<std::size_t> t(30);
  for (std::size_t i = 0; i < 30; ++i) t[i] = (i * 7) % 30;
  const Plan p = Plan::from_targets(t, x, y);
  double s = 0.0;
  for (std::size_t i = 0; i < 30; ++i) {
    for (std::size_t j = 0; j < 2; ++j) s += (x(i, j) - y(t[i], j)) * (x(i, j) - y(t[i], j));
  }
  EXPECT_NEAR(p.squared_cost_sum(), s, 1e-12 * s);
  EXPECT_NEAR(p.rms(), std::sqrt(s / 30.0), 1e-15);
  EXPECT_TRUE(p.is_complete());
  const auto inv = p.inverse();
  for (std::size_t i = 0; i < 30; ++i) EXPECT_EQ(inv[t[i]], i);
}

TEST(Plan, RejectsNonInjectiveAndOutOfRange) {
  EXPECT_THROW(Plan::from_targets({0, 0}, 0.0), DataError);
  EXPECT_THROW(Plan::from_targets({0, 2}, 0.0), DataError);
}

TEST(Plan, PartialPlanCountsAssigned) {
  const Plan p = Plan::from_targets({1, Plan::kUnassigned, 0}, 0.0);
  EXPECT_FALSE(p.is_complete());
  EXPECT_EQ(p.assigned_count(), 2u);
  EXPECT_THROW(p.inverse(), DataError);
  EXPECT_THROW(require_complete(p, 3), DataError);
}

TEST(Random, DerivedSeedsAreStableAndDistinct) {
  const RngSeed s{42};
  EXPECT_EQ(derive_seed(s, 3), derive_seed(s, 3));
  EXPECT_NE(derive_seed(s, 3), derive_seed(s, 4));
  EXPECT_NE(derive_seed(s, 3), derive_seed(RngSeed{43}, 3));
  Rng a(s), b(s);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a.normal(), b.normal());
}

}  // namespace
}  // namespace rrm
