#include <gtest/gtest.h>

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "rrm/cli.hpp"
#include "rrm/experiments.hpp"
#include "rrm/matching.hpp"
#include "rrm/plan_io.hpp"
#include "rrm/pointcloud_io.hpp"
#include "test_support.hpp"

namespace rrm {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;
using testing::is_permutation;
using testing::temp_dir;

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;

  std::vector<json> records() const {
    std::vector<json> r;
    std::istringstream in(out);
    for (std::string line; std::getline(in, line);) {
      if (!line.empty()) r.push_back(json::parse(line));
    }
    return r;
  }
  json last() const { return records().back(); }
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "rrm");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliRun r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

json strip_timing(json j) {
  if (j.is_object()) {
    j.erase("timing");
    for (auto& [k, v] : j.items()) v = strip_timing(v);
  }
  return j;
}

std::string path(const fs::path& p) { return p.string(); }

std::vector<std::string> gen_args(const fs::path& prefix, const std::string& family, std::size_t n,
                                  std::vector<std::string> extra = {}) {
  std::vector<std::string> a{"gen", "--family", family, "--n", std::to_string(n), "--out", path(prefix)};
  a.insert(a.end(), extra.begin(), extra.end());
  return a;
}

// ---- gen -----------------------------------------------------------------------

TEST(CliGen, ZeroNoisePerturbedCopyIsIdentical) {
  const fs::path dir = temp_dir("gen_copy");
  const CliRun r = cli(gen_args(dir / "p", "perturbed-copy", 100, {"--alpha", "0", "--seed", "3"}));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(load_point_cloud(dir / "p_x.csv", CloudFormat::csv), load_point_cloud(dir / "p_y.csv", CloudFormat::csv));
  EXPECT_EQ(r.last()["x"], path(dir / "p_x.csv"));
}

TEST(CliGen, GaussianPairAtOneIsCentered) {
  const fs::path dir = temp_dir("gen_gauss");
  ASSERT_EQ(cli(gen_args(dir / "g", "gaussian-pair", 4000, {"--t", "1", "--format", "pcf"})).code, 0);
  for (const char* side : {"g_x.pcf", "g_y.pcf"}) {
    const PointCloud c = load_point_cloud(dir / side, CloudFormat::pcf);
    for (std::size_t a = 0; a < 2; ++a) {
      double m = 0.0;
      for (std::size_t i = 0; i < c.size(); ++i) m += c(i, a);
      EXPECT_NEAR(m / c.size(), 0.5, 0.01);
    }
  }
}

TEST(CliGen, NoBadPointsLieOnTheGoodLine) {
  const fs::path dir = temp_dir("gen_lines");
  ASSERT_EQ(cli(gen_args(dir / "l", "line-mixture", 500, {"--frac-bads", "0"})).code, 0);
  for (const char* side : {"l_x.csv", "l_y.csv"}) {
    const PointCloud c = load_point_cloud(dir / side, CloudFormat::csv);
    for (std::size_t i = 0; i < c.size(); ++i) EXPECT_NEAR(c(i, 1) - 0.5, -(c(i, 0) - 0.5), 1e-12);
  }
}

TEST(CliGen, BadParametersAreUsageErrors) {
  const fs::path dir = temp_dir("gen_bad");
  EXPECT_EQ(cli(gen_args(dir / "l", "line-mixture", 10, {"--frac-bads", "1.5"})).code, 2);
  EXPECT_EQ(cli(gen_args(dir / "l", "no-such-family", 10)).code, 2);
  EXPECT_EQ(cli({"gen", "--n", "10"}).code, 2);
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

// ---- distance ------------------------------------------------------------------

class CliPair : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = temp_dir(::testing::UnitTest::GetInstance()->current_test_info()->name());
    ASSERT_EQ(cli(gen_args(dir / "c", "gaussian-pair", 300, {"--t", "0.5", "--seed", "4"})).code, 0);
    x = path(dir / "c_x.csv");
    y = path(dir / "c_y.csv");
  }
  fs::path dir;
  std::string x, y;
};

TEST_F(CliPair, SameFileIsZero) {
  for (const char* m : {"rrm", "merged", "srrm", "exact"}) {
    const CliRun r = cli({"distance", x, x, "--method", m});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.last()["value"].get<double>(), 0.0) << m;
  }
}

TEST_F(CliPair, MethodsAreOrdered) {
  auto value = [&](const char* m) { return cli({"distance", x, y, "--method", m, "--seed", "2"}).last()["value"].get<double>(); };
  const double rrm = value("rrm"), merged = value("merged"), srrm = value("srrm"), exact = value("exact");
  EXPECT_LE(merged, rrm);
  EXPECT_LE(srrm, merged);
  EXPECT_LE(exact, srrm + 1e-12);
}

TEST_F(CliPair, RecordShape) {
  const json r = cli({"distance", x, y, "--method", "srrm"}).last();
  for (const char* k : {"command", "method", "n", "d", "seed", "normalize", "params", "value", "history", "residual",
                        "guard_used", "timing"}) {
    EXPECT_TRUE(r.contains(k)) << k;
  }
  EXPECT_TRUE(r["timing"].contains("wall_ms"));
  EXPECT_EQ(r["n"], 300);
}

TEST_F(CliPair, CsvOutput) {
  const fs::path out = dir / "d.csv";
  ASSERT_EQ(cli({"distance", x, y, "--format", "csv", "--out", path(out)}).code, 0);
  std::ifstream in(out);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_NE(header.find("params.K"), std::string::npos);
  EXPECT_NE(header.find("timing.wall_ms"), std::string::npos);
  EXPECT_FALSE(row.empty());
}

TEST_F(CliPair, DataErrors) {
  EXPECT_EQ(cli({"distance", x, path(dir / "missing.csv")}).code, 3);
  const PointCloud small = testing::random_cloud(10, 2, 1);
  save_point_cloud(small, dir / "small.csv", CloudFormat::csv);
  EXPECT_EQ(cli({"distance", x, path(dir / "small.csv")}).code, 3);
  std::ofstream(dir / "junk.csv") << "0.1,abc\n";
  EXPECT_EQ(cli({"distance", path(dir / "junk.csv"), path(dir / "junk.csv")}).code, 3);
}

TEST_F(CliPair, ExactOverCapIsReported) {
  const CliRun r = cli({"distance", x, y, "--method", "exact", "--cap", "100"});
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(r.err.find("srrm"), std::string::npos);
}

TEST_F(CliPair, ReproducibleApartFromTiming) {
  for (const char* m : {"rrm", "merged", "srrm", "exact"}) {
    const std::vector<std::string> args{"distance", x, y, "--method", m, "--seed", "9"};
    EXPECT_EQ(strip_timing(cli(args).last()), strip_timing(cli(args).last())) << m;
  }
}

// ---- match -----------------------------------------------------------------------

TEST_F(CliPair, IdentityPlanForSameFile) {
  const fs::path plan = dir / "plan.csv";
  ASSERT_EQ(cli({"match", x, x, "--out", path(plan)}).code, 0);
  const std::vector<std::size_t> p = load_plan_csv(plan);
  for (std::size_t i = 0; i < p.size(); ++i) EXPECT_EQ(p[i], i);
}

TEST_F(CliPair, PlanReloadsToSidecarCost) {
  for (const char* m : {"rrm", "srrm"}) {
    const fs::path plan = dir / (std::string(m) + ".csv");
    ASSERT_EQ(cli({"match", x, y, "--method", m, "--normalize", "none", "--out", path(plan)}).code, 0);
    const std::vector<std::size_t> p = load_plan_csv(plan);
    ASSERT_TRUE(is_permutation(p));
    json side;
    std::ifstream(path(plan) + ".json") >> side;
    const PointCloud cx = load_point_cloud(x, CloudFormat::csv), cy = load_point_cloud(y, CloudFormat::csv);
    EXPECT_NEAR(plan_cost(p, cx, cy), side["cost"].get<double>(), 1e-12);
    EXPECT_FALSE(side.contains("timing"));
  }
}

TEST(CliMatch, RingInstanceMatchesExact) {
  const fs::path dir = temp_dir("match_ring");
  std::vector<double> xs, ys;
  for (int k = 0; k < 4; ++k) {
    const double a = k * std::numbers::pi / 2, b = a + 0.15;
    xs.insert(xs.end(), {0.5 + 0.3 * std::cos(a), 0.5 + 0.3 * std::sin(a)});
    ys.insert(ys.end(), {0.5 + 0.3 * std::cos(b), 0.5 + 0.3 * std::sin(b)});
  }
  const PointCloud x(2, xs), y(2, ys);
  save_point_cloud(x, dir / "x.pcf", CloudFormat::pcf);
  save_point_cloud(y, dir / "y.pcf", CloudFormat::pcf);
  const CliRun r = cli({"match", path(dir / "x.pcf"), path(dir / "y.pcf"), "--method", "srrm", "--normalize", "none",
                     "--out", path(dir / "plan.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const Plan best = exact_plan(x, y);
  EXPECT_EQ(load_plan_csv(dir / "plan.csv"), std::vector<std::size_t>(best.targets().begin(), best.targets().end()));
}

// ---- flow ------------------------------------------------------------------------

TEST_F(CliPair, FlowOnIdenticalCloudsStaysPut) {
  const fs::path out = dir / "flow";
  const CliRun r = cli({"flow", x, x, "--iterations", "5", "--out", path(out)});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream log(out / "flow.jsonl");
  std::size_t rows = 0;
  for (std::string line; std::getline(log, line); ++rows) {
    const json j = json::parse(line);
    EXPECT_EQ(j["distance"].get<double>(), 0.0);
  }
  EXPECT_EQ(rows, 5u);
  EXPECT_EQ(r.last()["final_exact"].get<double>(), 0.0);
}

TEST_F(CliPair, FullStepLandsOnY) {
  const fs::path out = dir / "flow";
  const CliRun r = cli({"flow", x, y, "--method", "exact", "--step", "1", "--iterations", "1", "--normalize", "none",
                     "--out", path(out)});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.last()["final_exact"].get<double>(), 0.0);
  const PointCloud snap = load_point_cloud(out / "snapshot_00001.pcf", CloudFormat::pcf);
  const PointCloud cy = load_point_cloud(y, CloudFormat::csv);
  std::vector<std::vector<double>> a, b;
  for (std::size_t i = 0; i < cy.size(); ++i) {
    a.emplace_back(snap.point(i).begin(), snap.point(i).end());
    b.emplace_back(cy.point(i).begin(), cy.point(i).end());
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  EXPECT_EQ(a, b);
}

TEST(CliFlow, SrrmFlowClosesMostOfTheGap) {
  const fs::path dir = temp_dir("flow_srrm");
  ASSERT_EQ(cli(gen_args(dir / "g", "gaussian-pair", 512, {"--t", "0", "--seed", "1"})).code, 0);
  const CliRun r = cli({"flow", path(dir / "g_x.csv"), path(dir / "g_y.csv"), "--method", "srrm", "--iterations", "300",
                     "--snapshot-every", "100", "--exact-every", "100", "--out", path(dir / "flow")});
  ASSERT_EQ(r.code, 0) << r.err;
  const json rec = r.last();
  EXPECT_LT(rec["final_exact"].get<double>(), 0.05 * rec["initial_exact"].get<double>());
  EXPECT_EQ(rec["snapshots"], 4);
  EXPECT_TRUE(fs::exists(dir / "flow" / "snapshot_00300.pcf"));
}

// ---- plateau -----------------------------------------------------------------------

TEST(CliPlateau, RrmRisesWithBadFraction) {
  const CliRun r = cli({"plateau", "--grid", "0,0.5,1", "--n", "1024", "--reps", "3", "--methods", "rrm,srrm"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::vector<double> rrm;
  for (const json& j : r.records()) {
    const double v = j["value"].get<double>(), e = j["exact"].get<double>();
    if (j["method"] == "rrm") rrm.push_back(v);
    if (j["method"] == "srrm") {
      EXPECT_LE(v, 1.1 * e) << j["grid"];
    }
    EXPECT_LE(j["lower_bound"].get<double>(), v * v + 1e-12);
  }
  ASSERT_EQ(rrm.size(), 3u);
  EXPECT_LT(rrm[0], rrm[1]);
  EXPECT_LT(rrm[1], rrm[2]);
}

TEST(CliPlateau, OpeningAngleGrowsWithAngle) {
  const CliRun r = cli({"plateau", "--family", "opening-angle", "--grid", "0,0.2,0.8", "--n", "512", "--reps", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto recs = r.records();
  ASSERT_EQ(recs.size(), 3u);
  EXPECT_EQ(recs[0]["param"], "delta");
  EXPECT_LT(recs[0]["value"].get<double>(), recs[1]["value"].get<double>());
  EXPECT_LT(recs[1]["value"].get<double>(), recs[2]["value"].get<double>());
}

TEST(CliPlateau, RejectsOtherFamilies) {
  EXPECT_EQ(cli({"plateau", "--family", "uniform-box"}).code, 2);
  EXPECT_EQ(cli({"plateau", "--methods", "magic"}).code, 2);
}

// ---- converge / bench ----------------------------------------------------------------

TEST(CliConverge, RateTable) {
  const CliRun r = cli({"converge", "--d", "2", "--ns", "64,256,1024", "--reps", "4", "--seed", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto recs = r.records();
  ASSERT_EQ(recs.size(), 4u);
  const ConvergenceTable t = convergence_experiment(2, {64, 256, 1024}, 4, RngSeed{5});
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(recs[i]["mean"].get<double>(), t.rows[i].mean);
  EXPECT_EQ(recs[3]["slope"].get<double>(), t.slope);
  EXPECT_EQ(recs[3]["theory_exponent"].get<double>(), -0.25);
}

TEST(CliConverge, ThresholdTable) {
  const CliRun r = cli({"converge", "--experiment", "thresholds", "--d", "2", "--H", "3", "--ns", "256,4096", "--reps", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto recs = r.records();
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_GT(recs[0]["median_max_deviation"].get<double>(), recs[1]["median_max_deviation"].get<double>());
}

TEST(CliBench, SrrmRecordsHistory) {
  const CliRun r = cli({"bench", "--ns", "256,512", "--methods", "merged,srrm", "--reps", "2", "--family", "gaussian-pair"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto recs = r.records();
  ASSERT_EQ(recs.size(), 4u);
  for (const json& j : recs) {
    EXPECT_EQ(j["timing"]["samples_ms"].size(), 2u);
    EXPECT_EQ(j["method"] == "srrm", j.contains("history"));
  }
  EXPECT_EQ(strip_timing(json::parse(r.out.substr(0, r.out.find('\n')))),
            strip_timing(cli({"bench", "--ns", "256", "--methods", "merged", "--reps", "2", "--family",
                              "gaussian-pair"}).last()));
}

}  // namespace
}  // namespace rrm
