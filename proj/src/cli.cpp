#include "rrm/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "rrm/error.hpp"
#include "rrm/experiments.hpp"
#include "rrm/flow.hpp"
#include "rrm/generators.hpp"
#include "rrm/last_mile.hpp"
#include "rrm/matcher.hpp"
#include "rrm/matching.hpp"
#include "rrm/normalize.hpp"
#include "rrm/plan_io.hpp"
#include "rrm/pointcloud_io.hpp"
#include "rrm/srrm.hpp"

namespace rrm {
namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

json timing(double wall_ms) { return {{"wall_ms", wall_ms}, {"timestamp", timestamp()}}; }

// Tables as JSON lines, or CSV with nested objects flattened to dotted keys
// and arrays joined by ';'. The CSV header comes from the first record.
class RecordWriter {
 public:
  RecordWriter(std::ostream& os, bool csv) : os_(os), csv_(csv) {}

  void write(const json& rec) {
    if (!csv_) {
      os_ << rec.dump() << '\n';
      return;
    }
    json flat = json::object();
    flatten(rec, "", flat);
    if (header_.empty()) {
      for (const auto& [k, v] : flat.items()) header_.push_back(k);
      for (std::size_t i = 0; i < header_.size(); ++i) os_ << (i ? "," : "") << header_[i];
      os_ << '\n';
    }
    for (std::size_t i = 0; i < header_.size(); ++i) {
      os_ << (i ? "," : "");
      if (flat.contains(header_[i])) os_ << cell(flat[header_[i]]);
    }
    os_ << '\n';
  }

 private:
  static void flatten(const json& j, const std::string& prefix, json& out) {
    for (const auto& [k, v] : j.items()) {
      const std::string key = prefix.empty() ? k : prefix + "." + k;
      if (v.is_object()) {
        flatten(v, key, out);
      } else {
        out[key] = v;
      }
    }
  }

  static std::string cell(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "";
    if (v.is_array()) {
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + cell(v[i]);
      return s;
    }
    return v.dump();
  }

  std::ostream& os_;
  bool csv_;
  std::vector<std::string> header_;
};

struct Output {
  std::ofstream file;
  std::ostream* os;

  Output(const std::string& path, std::ostream& fallback) : os(&fallback) {
    if (path.empty()) return;
    file.open(path, std::ios::binary | std::ios::trunc);
    if (!file) throw DataError("cannot write " + path);
    os = &file;
  }
};

struct MethodOptions {
  std::string method = "rrm";
  std::size_t runs = 10;
  std::size_t rounds = 10;
  std::size_t anchors = 5;
  std::optional<std::size_t> cap;
  bool no_guard = false;
  std::string normalize = "joint";
  std::uint64_t seed = 0;

  MatcherConfig matcher() const {
    MatcherConfig m;
    m.method = parse_method(method);
    m.runs = runs;
    m.rounds = rounds;
    m.anchors = anchors;
    m.exact_cap = cap.value_or(kDefaultExactCap);
    m.hungarian_cap = cap.value_or(SrrmConfig{}.hungarian_cap);
    m.guard = !no_guard;
    m.seed = RngSeed{seed};
    return m;
  }

  json params() const {
    json p = {{"K", runs}, {"R", rounds}, {"anchors", anchors}, {"guard", !no_guard}};
    p["cap"] = cap ? json(*cap) : json(nullptr);
    return p;
  }
};

void add_seed(CLI::App* c, std::uint64_t& seed) { c->add_option("--seed", seed, "64-bit seed")->capture_default_str(); }

void add_matcher_options(CLI::App* c, MethodOptions& m, bool with_method) {
  if (with_method) {
    c->add_option("--method", m.method, "rrm | merged | srrm | exact")
        ->check(CLI::IsMember({"rrm", "merged", "srrm", "exact"}))
        ->capture_default_str();
  }
  c->add_option("--K", m.runs, "runs merged per multi-run RRM")->check(CLI::PositiveNumber)->capture_default_str();
  c->add_option("--R", m.rounds, "SRRM screening rounds")->capture_default_str();
  c->add_option("--anchors", m.anchors, "SRRM anchors per point")->capture_default_str();
  c->add_option("--cap", m.cap, "max size for exact assignment (default 1024; SRRM residual 4096)");
  c->add_flag("--no-guard", m.no_guard, "let SRRM return a plan costlier than merged RRM");
  add_seed(c, m.seed);
}

void add_normalize(CLI::App* c, std::string& mode) {
  c->add_option("--normalize", mode, "unit-box rescale: joint | per-cloud | none")
      ->check(CLI::IsMember({"joint", "per-cloud", "none"}))
      ->capture_default_str();
}

void add_table_format(CLI::App* c, std::string& format) {
  c->add_option("--format", format, "jsonl | csv")->check(CLI::IsMember({"jsonl", "csv"}))->capture_default_str();
}

struct LoadedPair {
  PointCloud x;
  PointCloud y;
  std::optional<UnitBoxTransform> transform;
};

LoadedPair load_pair(const std::string& px, const std::string& py, const std::string& normalize) {
  PointCloud x = load_point_cloud(px, format_from_path(px));
  PointCloud y = load_point_cloud(py, format_from_path(py));
  if (x.size() != y.size()) {
    throw DataError("clouds differ in size: " + std::to_string(x.size()) + " vs " + std::to_string(y.size()));
  }
  if (x.dim() != y.dim()) {
    throw DataError("clouds differ in dimension: " + std::to_string(x.dim()) + " vs " + std::to_string(y.dim()));
  }
  if (normalize == "none") return {std::move(x), std::move(y), std::nullopt};
  NormalizedPair n = normalize_unit_box(x, y, normalize == "joint" ? NormalizeMode::joint : NormalizeMode::per_cloud);
  return {std::move(n.x), std::move(n.y), std::move(n.transform)};
}

// ---- gen -------------------------------------------------------------------

struct GenOptions {
  std::string family = "uniform-box";
  GeneratorSpec spec;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
};

json spec_params(const GeneratorSpec& s) {
  switch (s.family) {
    case Family::gaussian_pair: return {{"t", s.t}, {"sigma", s.sigma}};
    case Family::line_mixture:
      return {{"frac_bads", s.frac_bads}, {"good_slope", s.good_slope}, {"bad_slope", s.bad_slope}};
    case Family::opening_angle: return {{"delta", s.delta}};
    case Family::perturbed_copy: return {{"alpha", s.alpha}};
    case Family::uniform_box: return json::object();
  }
  return json::object();
}

void add_family_options(CLI::App* c, GeneratorSpec& s) {
  c->add_option("--t", s.t, "gaussian-pair interpolation in [0,1]")->capture_default_str();
  c->add_option("--sigma", s.sigma, "gaussian-pair standard deviation")->capture_default_str();
  c->add_option("--frac-bads", s.frac_bads, "line-mixture bad-component weight")->capture_default_str();
  c->add_option("--good-slope", s.good_slope, "line-mixture good slope")->capture_default_str();
  c->add_option("--bad-slope", s.bad_slope, "line-mixture bad slope magnitude")->capture_default_str();
  c->add_option("--delta", s.delta, "opening-angle increment (radians)")->capture_default_str();
  c->add_option("--alpha", s.alpha, "perturbed-copy noise scale")->capture_default_str();
}

int cmd_gen(GenOptions& o, std::ostream& out) {
  o.spec.family = parse_family(o.family);
  o.spec.seed = RngSeed{o.seed};
  const CloudFormat fmt = parse_cloud_format(o.format);
  const CloudPair pair = generate(o.spec);
  const std::string ext = fmt == CloudFormat::csv ? ".csv" : ".pcf";
  const std::string px = o.out + "_x" + ext;
  const std::string py = o.out + "_y" + ext;
  save_point_cloud(pair.x, px, fmt);
  save_point_cloud(pair.y, py, fmt);
  json rec = {{"command", "gen"}, {"family", std::string(to_string(o.spec.family))}, {"n", o.spec.n},
              {"d", o.spec.dim}, {"seed", o.seed}, {"params", spec_params(o.spec)}, {"x", px}, {"y", py}};
  RecordWriter(out, false).write(rec);
  return kExitOk;
}

// ---- distance / match --------------------------------------------------------

struct PairOptions {
  std::string x, y;
  MethodOptions m;
  std::string out;
  std::string format = "jsonl";
};

json method_record(const char* command, const PairOptions& o, const LoadedPair& p) {
  return {{"command", command}, {"method", o.m.method}, {"n", p.x.size()}, {"d", p.x.dim()},
          {"seed", o.m.seed},   {"normalize", o.m.normalize}, {"params", o.m.params()}};
}

struct Matched {
  Plan plan;
  std::optional<SrrmResult> srrm;
  double wall_ms = 0.0;
};

Matched run_method(const LoadedPair& p, const MethodOptions& m) {
  const MatcherConfig mc = m.matcher();
  const auto t0 = Clock::now();
  Matched r;
  if (mc.method == Method::srrm) {
    r.srrm = srrm_match(p.x, p.y, srrm_config(mc));
    r.plan = r.srrm->plan;
  } else {
    r.plan = match(p.x, p.y, mc);
  }
  r.wall_ms = ms_since(t0);
  return r;
}

void add_srrm_fields(json& rec, const Matched& r) {
  if (!r.srrm) return;
  rec["history"] = r.srrm->state.history;
  rec["residual"] = r.srrm->residual;
  rec["guard_used"] = r.srrm->guard_used;
}

int cmd_distance(const PairOptions& o, std::ostream& out) {
  const LoadedPair p = load_pair(o.x, o.y, o.m.normalize);
  const Matched r = run_method(p, o.m);
  json rec = method_record("distance", o, p);
  rec["value"] = r.plan.rms();
  add_srrm_fields(rec, r);
  rec["timing"] = timing(r.wall_ms);
  Output dst(o.out, out);
  RecordWriter(*dst.os, o.format == "csv").write(rec);
  return kExitOk;
}

int cmd_match(const PairOptions& o, std::ostream& out) {
  const LoadedPair p = load_pair(o.x, o.y, o.m.normalize);
  const Matched r = run_method(p, o.m);
  {
    std::ofstream f(o.out, std::ios::binary | std::ios::trunc);
    if (!f) throw DataError("cannot write " + o.out);
    f << format_plan_csv(r.plan);
  }
  json rec = method_record("match", o, p);
  rec["cost"] = r.plan.squared_cost_sum();
  rec["rms"] = r.plan.rms();
  rec["plan"] = o.out;
  add_srrm_fields(rec, r);
  {
    std::ofstream f(o.out + ".json", std::ios::binary | std::ios::trunc);
    if (!f) throw DataError("cannot write " + o.out + ".json");
    f << rec.dump(2) << '\n';
  }
  rec["timing"] = timing(r.wall_ms);
  RecordWriter(out, false).write(rec);
  return kExitOk;
}

// ---- flow ------------------------------------------------------------------

struct FlowOptions {
  std::string x, y;
  MethodOptions m;
  double step = 0.15;
  std::size_t iterations = 100;
  std::size_t snapshot_every = 10;
  std::size_t exact_every = 10;
  std::string out;
  std::string format = "jsonl";
};

int cmd_flow(const FlowOptions& o, std::ostream& out) {
  const LoadedPair p = load_pair(o.x, o.y, o.m.normalize);
  fs::create_directories(o.out);
  FlowConfig cfg;
  cfg.step = o.step;
  cfg.iterations = o.iterations;
  cfg.matcher = o.m.matcher();
  cfg.snapshot_every = o.snapshot_every;
  cfg.exact_every = o.exact_every;

  std::vector<std::string> snapshots;
  auto snap = [&](std::size_t k, const PointCloud& xk) {
    char name[32];
    std::snprintf(name, sizeof name, "snapshot_%05zu.pcf", k);
    const fs::path path = fs::path(o.out) / name;
    save_point_cloud(p.transform ? p.transform->inverse_x(xk) : xk, path, CloudFormat::pcf);
    snapshots.push_back(path.string());
  };
  const auto t0 = Clock::now();
  const FlowResult res = run_flow(p.x, p.y, cfg, snap);
  const double wall = ms_since(t0);

  const bool csv = o.format == "csv";
  std::ofstream log(fs::path(o.out) / (csv ? "flow.csv" : "flow.jsonl"), std::ios::binary | std::ios::trunc);
  if (!log) throw DataError("cannot write the flow log in " + o.out);
  RecordWriter w(log, csv);
  for (const FlowRecord& r : res.log) {
    w.write({{"iteration", r.iteration},
             {"distance", r.distance},
             {"exact", r.exact ? json(*r.exact) : json(nullptr)}});
  }
  json rec = {{"command", "flow"}, {"method", o.m.method}, {"n", p.x.size()}, {"d", p.x.dim()},
              {"seed", o.m.seed}, {"normalize", o.m.normalize}, {"params", o.m.params()},
              {"step", o.step}, {"iterations", o.iterations}, {"snapshots", snapshots.size()}};
  rec["initial_exact"] = !res.log.empty() && res.log.front().exact ? json(*res.log.front().exact) : json(nullptr);
  rec["final_exact"] = res.final_exact ? json(*res.final_exact) : json(nullptr);
  rec["final_distance"] = res.log.empty() ? json(nullptr) : json(res.log.back().distance);
  rec["timing"] = timing(wall);
  RecordWriter(out, false).write(rec);
  return kExitOk;
}

// ---- plateau -----------------------------------------------------------------

struct PlateauOptions {
  std::string family = "line-mixture";
  GeneratorSpec spec;
  std::vector<double> grid{0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<std::string> methods{"rrm"};
  std::size_t reps = 1;
  MethodOptions m;
  std::string out;
  std::string format = "jsonl";
};

int cmd_plateau(PlateauOptions& o, std::ostream& out) {
  o.spec.family = parse_family(o.family);
  if (o.spec.family != Family::line_mixture && o.spec.family != Family::opening_angle) {
    throw std::invalid_argument("plateau runs on line-mixture or opening-angle families");
  }
  if (o.reps == 0) throw std::invalid_argument("reps must be at least 1");
  for (const std::string& name : o.methods) parse_method(name);
  Output dst(o.out, out);
  RecordWriter w(*dst.os, o.format == "csv");
  const std::size_t exact_cap = o.m.cap.value_or(kDefaultExactCap);
  for (double g : o.grid) {
    GeneratorSpec s = o.spec;
    (s.family == Family::line_mixture ? s.frac_bads : s.delta) = g;
    validate(s);
    for (const std::string& name : o.methods) {
      std::vector<double> value, exact, alpha, gamma, nn, lower, wall;
      for (std::size_t r = 0; r < o.reps; ++r) {
        s.seed = derive_seed(RngSeed{o.m.seed}, r);
        const CloudPair pair = generate(s);
        MethodOptions mo = o.m;
        mo.method = name;
        mo.seed = s.seed.value;
        const Matched res = run_method({pair.x, pair.y, std::nullopt}, mo);
        const LastMileReport rep =
            plateau_decomposition(pair.x, pair.y, res.plan, LastMileParams::defaults(s.n, s.dim));
        value.push_back(res.plan.rms());
        if (s.n <= exact_cap) exact.push_back(exact_w2(pair.x, pair.y, exact_cap));
        alpha.push_back(rep.alpha_h);
        gamma.push_back(rep.gamma_bar);
        nn.push_back(rep.nn_term);
        lower.push_back(rep.lower_bound);
        wall.push_back(res.wall_ms);
      }
      json rec = {{"command", "plateau"},
                  {"family", o.family},
                  {"param", s.family == Family::line_mixture ? "frac_bads" : "delta"},
                  {"grid", g},
                  {"method", name},
                  {"n", s.n},
                  {"reps", o.reps},
                  {"seed", o.m.seed},
                  {"params", spec_params(s)},
                  {"value", median(value)},
                  {"exact", exact.empty() ? json(nullptr) : json(median(exact))},
                  {"alpha_h", median(alpha)},
                  {"gamma_bar", median(gamma)},
                  {"nn_term", median(nn)},
                  {"lower_bound", median(lower)},
                  {"values", value}};
      rec["params"].erase(s.family == Family::line_mixture ? "frac_bads" : "delta");
      rec["timing"] = timing(median(wall));
      w.write(rec);
    }
  }
  return kExitOk;
}

// ---- converge ------------------------------------------------------------------

struct ConvergeOptions {
  std::string experiment = "rate";
  std::size_t dim = 1;
  std::vector<std::size_t> ns{256, 512, 1024, 2048, 4096, 8192, 16384};
  std::size_t reps = 20;
  std::size_t depth = 3;
  std::size_t eval_depth = 32;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "jsonl";
};

int cmd_converge(const ConvergeOptions& o, std::ostream& out) {
  Output dst(o.out, out);
  RecordWriter w(*dst.os, o.format == "csv");
  const auto t0 = Clock::now();
  if (o.experiment == "rate") {
    const ConvergenceTable t = convergence_experiment(o.dim, o.ns, o.reps, RngSeed{o.seed}, o.eval_depth);
    for (const ConvergenceRow& r : t.rows) {
      w.write({{"command", "converge"}, {"experiment", "rate"}, {"d", o.dim}, {"n", r.n}, {"reps", o.reps},
               {"seed", o.seed}, {"mean", r.mean}, {"sd", r.sd}, {"slope", nullptr}, {"theory_exponent", nullptr}});
    }
    json summary = {{"command", "converge"}, {"experiment", "rate"}, {"d", o.dim}, {"n", nullptr}, {"reps", o.reps},
                    {"seed", o.seed}, {"mean", nullptr}, {"sd", nullptr}, {"slope", t.slope},
                    {"theory_exponent", t.theory_exponent}};
    summary["timing"] = timing(ms_since(t0));
    w.write(summary);
  } else {
    for (const ThresholdRow& r : threshold_consistency_experiment(o.dim, o.depth, o.ns, o.reps, RngSeed{o.seed})) {
      w.write({{"command", "converge"}, {"experiment", "thresholds"}, {"d", o.dim}, {"H", o.depth}, {"n", r.n},
               {"reps", o.reps}, {"seed", o.seed}, {"median_max_deviation", r.median}});
    }
  }
  return kExitOk;
}

// ---- bench ---------------------------------------------------------------------

struct BenchOptions {
  std::vector<std::size_t> ns{4096, 8192, 16384};
  std::vector<std::string> methods{"merged"};
  std::size_t reps = 3;
  std::string family = "uniform-box";
  GeneratorSpec spec;
  MethodOptions m;
  std::string out;
  std::string format = "jsonl";
};

int cmd_bench(BenchOptions& o, std::ostream& out) {
  o.spec.family = parse_family(o.family);
  if (o.reps == 0) throw std::invalid_argument("reps must be at least 1");
  for (const std::string& name : o.methods) parse_method(name);
  Output dst(o.out, out);
  RecordWriter w(*dst.os, o.format == "csv");
  for (std::size_t n : o.ns) {
    GeneratorSpec s = o.spec;
    s.n = n;
    s.seed = derive_seed(RngSeed{o.m.seed}, n);
    const CloudPair pair = generate(s);
    const LoadedPair lp{pair.x, pair.y, std::nullopt};
    for (const std::string& name : o.methods) {
      MethodOptions mo = o.m;
      mo.method = name;
      std::vector<double> samples;
      Matched last;
      for (std::size_t r = 0; r < o.reps; ++r) {
        last = run_method(lp, mo);
        samples.push_back(last.wall_ms);
      }
      json rec = {{"command", "bench"}, {"family", o.family}, {"method", name}, {"n", n}, {"d", s.dim},
                  {"reps", o.reps}, {"seed", o.m.seed}, {"params", mo.params()}, {"gen", spec_params(s)},
                  {"value", last.plan.rms()}};
      add_srrm_fields(rec, last);
      rec["timing"] = {{"median_ms", median(samples)}, {"samples_ms", samples}, {"timestamp", timestamp()}};
      w.write(rec);
    }
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Recursive rank matching distances, SRRM matching and last-mile diagnostics", "rrm"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* c_gen = app.add_subcommand("gen", "Generate a synthetic X/Y pair");
  c_gen->add_option("--family", gen.family, "uniform-box | gaussian-pair | line-mixture | opening-angle | perturbed-copy")
      ->capture_default_str();
  c_gen->add_option("--n", gen.spec.n, "points per cloud")->capture_default_str();
  c_gen->add_option("--d", gen.spec.dim, "dimension")->capture_default_str();
  add_family_options(c_gen, gen.spec);
  add_seed(c_gen, gen.seed);
  c_gen->add_option("--out", gen.out, "output prefix; writes <out>_x.<ext> and <out>_y.<ext>")->required();
  c_gen->add_option("--format", gen.format, "csv | pcf")->check(CLI::IsMember({"csv", "pcf"}))->capture_default_str();

  PairOptions dist;
  auto* c_dist = app.add_subcommand("distance", "Distance between two clouds as one JSON record");
  c_dist->add_option("x", dist.x, "X cloud (.csv or .pcf)")->required();
  c_dist->add_option("y", dist.y, "Y cloud (.csv or .pcf)")->required();
  add_matcher_options(c_dist, dist.m, true);
  add_normalize(c_dist, dist.m.normalize);
  c_dist->add_option("--out", dist.out, "write the record here instead of stdout");
  add_table_format(c_dist, dist.format);

  PairOptions mat;
  auto* c_match = app.add_subcommand("match", "Write the matching as CSV plus a JSON sidecar");
  c_match->add_option("x", mat.x, "X cloud")->required();
  c_match->add_option("y", mat.y, "Y cloud")->required();
  add_matcher_options(c_match, mat.m, true);
  add_normalize(c_match, mat.m.normalize);
  c_match->add_option("--out", mat.out, "plan CSV path; the sidecar is <out>.json")->required();

  FlowOptions flow;
  auto* c_flow = app.add_subcommand("flow", "Displacement flow of X toward Y");
  c_flow->add_option("x", flow.x, "X cloud")->required();
  c_flow->add_option("y", flow.y, "Y cloud")->required();
  add_matcher_options(c_flow, flow.m, true);
  add_normalize(c_flow, flow.m.normalize);
  c_flow->add_option("--step", flow.step, "convex-combination step in (0,1]")->capture_default_str();
  c_flow->add_option("--iterations", flow.iterations, "flow iterations")->capture_default_str();
  c_flow->add_option("--snapshot-every", flow.snapshot_every, "iterations between PCF snapshots")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_flow->add_option("--exact-every", flow.exact_every, "iterations between exact W2 evaluations (0: never)")
      ->capture_default_str();
  c_flow->add_option("--out", flow.out, "output directory")->required();
  add_table_format(c_flow, flow.format);

  PlateauOptions plat;
  plat.spec.n = 4096;
  auto* c_plat = app.add_subcommand("plateau", "Plateau and last-mile decomposition over a parameter grid");
  c_plat->add_option("--family", plat.family, "line-mixture (grid: frac_bads) | opening-angle (grid: delta)")
      ->check(CLI::IsMember({"line-mixture", "opening-angle"}))
      ->capture_default_str();
  c_plat->add_option("--grid", plat.grid, "comma-separated parameter values")->delimiter(',');
  c_plat->add_option("--methods", plat.methods, "comma-separated methods")->delimiter(',');
  c_plat->add_option("--n", plat.spec.n, "points per cloud")->capture_default_str();
  c_plat->add_option("--reps", plat.reps, "seeds per grid point (medians are reported)")->capture_default_str();
  c_plat->add_option("--good-slope", plat.spec.good_slope, "line-mixture good slope")->capture_default_str();
  c_plat->add_option("--bad-slope", plat.spec.bad_slope, "line-mixture bad slope magnitude")->capture_default_str();
  add_matcher_options(c_plat, plat.m, false);
  c_plat->add_option("--out", plat.out, "write records here instead of stdout");
  add_table_format(c_plat, plat.format);

  ConvergeOptions conv;
  auto* c_conv = app.add_subcommand("converge", "Convergence experiments on the uniform population");
  c_conv->add_option("--experiment", conv.experiment, "rate | thresholds")
      ->check(CLI::IsMember({"rate", "thresholds"}))
      ->capture_default_str();
  c_conv->add_option("--d", conv.dim, "dimension")->check(CLI::PositiveNumber)->capture_default_str();
  c_conv->add_option("--ns", conv.ns, "comma-separated sample sizes")->delimiter(',');
  c_conv->add_option("--reps", conv.reps, "repetitions per size")->check(CLI::PositiveNumber)->capture_default_str();
  c_conv->add_option("--H", conv.depth, "tree depth (thresholds)")->check(CLI::Range(1, 63))->capture_default_str();
  c_conv->add_option("--eval-depth", conv.eval_depth, "address depth of the anchored integral (rate)")
      ->check(CLI::Range(1, 40))
      ->capture_default_str();
  add_seed(c_conv, conv.seed);
  c_conv->add_option("--out", conv.out, "write records here instead of stdout");
  add_table_format(c_conv, conv.format);

  BenchOptions bench;
  auto* c_bench = app.add_subcommand("bench", "Wall-clock medians per size and method");
  c_bench->add_option("--ns", bench.ns, "comma-separated sizes")->delimiter(',');
  c_bench->add_option("--d", bench.spec.dim, "dimension")->capture_default_str();
  c_bench->add_option("--methods", bench.methods, "comma-separated methods")->delimiter(',');
  c_bench->add_option("--reps", bench.reps, "timed repetitions")->capture_default_str();
  c_bench->add_option("--family", bench.family, "instance family")->capture_default_str();
  add_family_options(c_bench, bench.spec);
  add_matcher_options(c_bench, bench.m, false);
  c_bench->add_option("--out", bench.out, "write records here instead of stdout");
  add_table_format(c_bench, bench.format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (c_gen->parsed()) return cmd_gen(gen, out);
    if (c_dist->parsed()) return cmd_distance(dist, out);
    if (c_match->parsed()) return cmd_match(mat, out);
    if (c_flow->parsed()) return cmd_flow(flow, out);
    if (c_plat->parsed()) return cmd_plateau(plat, out);
    if (c_conv->parsed()) return cmd_converge(conv, out);
    if (c_bench->parsed()) return cmd_bench(bench, out);
  } catch (const CapExceededError& e) {
    err << "error: " << e.what() << '\n';
    return kExitCap;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace rrm
