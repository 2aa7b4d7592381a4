#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "signalgame/cli.hpp"
#include "signalgame/graph.hpp"
#include "signalgame/harness.hpp"
#include "signalgame/io.hpp"

using namespace signalgame;
using nlohmann::json;

namespace {

graph::Graph complete_graph(int n) {
  graph::Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

// A small desk-style configuration that exercises every pipeline stage
// (coverage, bound, exact evaluation, recovery) in well under a second.
harness::ExperimentConfig tiny_config() {
  harness::ExperimentConfig cfg;
  cfg.preset = "custom";
  cfg.constants_profile = "custom";
  cfg.n = 300;
  cfg.p = 0.5;
  cfg.k = 20;
  cfg.r = 6;
  cfg.d = 20;
  cfg.rho = 1.0;
  cfg.c = 1.0;
  cfg.recovery.sample_factor = 0.5;
  cfg.recovery.trial_budget = 8;
  cfg.base_seed = 11;
  cfg.num_seeds = 3;
  return cfg;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

// CSV body with the runtime_ms field blanked in every data row; everything
// else must be byte-identical across reruns.
std::string mask_runtime(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  bool header = true;
  while (std::getline(in, line)) {
    if (!header) {
      auto fields = split(line, ',');
      REQUIRE(fields.size() == 16);
      fields[13] = "<time>";
      line.clear();
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) line += ',';
        line += fields[i];
      }
    }
    header = false;
    out += line;
    out += '\n';
  }
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void scrub(const std::vector<std::string>& paths) {
  for (const auto& p : paths) std::remove(p.c_str());
}

}  // namespace

TEST_CASE("presets carry their documented parameters") {
  const auto cov = harness::preset_config("coverage-bound");
  CHECK(cov.n == 25000);
  CHECK(cov.p == 0.5);
  CHECK(cov.k == 150);
  CHECK(cov.r == 500);
  CHECK(cov.d == 1);
  CHECK(cov.rho == 1.0);
  CHECK(cov.c == 150.0);
  CHECK(cov.num_seeds == 20);
  CHECK(cov.constants_profile == "paper-scale");
  REQUIRE(cov.coverage_target.has_value());
  CHECK(*cov.coverage_target == 0.9);
  REQUIRE(cov.bound_target.has_value());
  CHECK(*cov.bound_target == 0.8);
  CHECK(cov.frac_required == 0.95);

  const auto desk = harness::preset_config("recovery-desk");
  CHECK(desk.n == 3000);
  CHECK(desk.k == 60);
  CHECK(desk.r == 150);
  CHECK(desk.d == 20);
  CHECK(desk.rho == 1.0);
  CHECK(desk.c == 3.0);
  CHECK(desk.num_seeds == 20);
  CHECK(desk.constants_profile == "desk-scale");
  REQUIRE(desk.recovered_target.has_value());
  CHECK(*desk.recovered_target == 0.5);
  // The game parameters must be mirrored into the recovery params.
  CHECK(desk.recovery.d == desk.d);
  CHECK(desk.recovery.rho == desk.rho);

  const auto reward = harness::preset_config("reward-scaled-shape");
  CHECK(reward.d == 1);
  CHECK(reward.rho == doctest::Approx(reward.k / reward.c));
  const auto budget = harness::preset_config("budget-scaled-shape");
  CHECK(budget.rho == 1.0);
  CHECK(budget.d == std::max(1, static_cast<int>(budget.k / budget.c)));

  const auto names = harness::preset_names();
  for (const auto& name : names) CHECK_NOTHROW(harness::preset_config(name));
  CHECK(std::find(names.begin(), names.end(), "recovery-desk") != names.end());
  CHECK_THROWS_AS(harness::preset_config("no-such-preset"),
                  std::invalid_argument);
}

TEST_CASE("experiment config validation") {
  auto cfg = tiny_config();
  CHECK_NOTHROW(cfg.validate());

  auto bad = cfg;
  bad.n = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.p = 1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.k = 1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.k = bad.n + 1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.r = -1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.d = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.rho = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.c = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.num_seeds = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.seeds = {1, 2};  // an explicit list substitutes for num_seeds
  CHECK_NOTHROW(bad.validate());
  bad = cfg;
  bad.frac_required = 1.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("coverage_validator counts covered vertices") {
  graph::PlantedCoverInstance instance;
  instance.graph = graph::Graph(4);
  CHECK(harness::coverage_validator(instance) == 0.0);
  instance.planted_cliques = {{0, 1}};
  CHECK(harness::coverage_validator(instance) == doctest::Approx(0.5));
  instance.planted_cliques = {{0, 1}, {1, 2, 3}};
  CHECK(harness::coverage_validator(instance) == doctest::Approx(1.0));
}

TEST_CASE("bidensity_validator passes fresh noise, fails planted structure") {
  harness::ValidatorConfig vc;
  vc.pairs = 100;

  const auto clean = harness::bidensity_validator(2000, 0.5, vc, 12345);
  CHECK(clean.pass);
  CHECK(clean.pairs_checked == 100);
  CHECK(clean.worst_bidensity <= clean.limit);
  CHECK(clean.limit == doctest::Approx(0.55));
  CHECK(clean.cluster_size == 100);  // ceil(9.1 * log2 2000)

  // A complete graph drives every sampled pair to bidensity ~1.
  const auto dense =
      harness::bidensity_validator(complete_graph(300), 0.5, vc, 12345);
  CHECK_FALSE(dense.pass);
  CHECK(dense.worst_bidensity > dense.limit);

  harness::ValidatorConfig bad;
  bad.density_slack = 1.0;
  CHECK_THROWS_AS(harness::bidensity_validator(100, 0.5, bad, 1),
                  std::invalid_argument);
  bad = harness::ValidatorConfig{};
  bad.size_factor = 0.0;
  CHECK_THROWS_AS(harness::bidensity_validator(100, 0.5, bad, 1),
                  std::invalid_argument);
  bad = harness::ValidatorConfig{};
  bad.pairs = 0;
  CHECK_THROWS_AS(harness::bidensity_validator(100, 0.5, bad, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(harness::bidensity_validator(100, 0.0, vc, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(harness::bidensity_validator(1, 0.5, vc, 1),
                  std::invalid_argument);
}

TEST_CASE("run_experiment completes all stages on a tiny config") {
  const auto cfg = tiny_config();
  const auto summary = harness::run_experiment(cfg);

  REQUIRE(summary.rows.size() == 3);
  CHECK(summary.completed == 3);
  CHECK(summary.pass);  // no targets set
  for (std::size_t i = 0; i < summary.rows.size(); ++i) {
    const auto& row = summary.rows[i];
    CHECK(row.seed == cfg.base_seed + i);
    CHECK(row.error.empty());
    REQUIRE(row.coverage.has_value());
    CHECK(*row.coverage > 0.0);
    REQUIRE(row.bound.has_value());
    REQUIRE(row.lp_total.has_value());  // n is under lp_eval_max_n
    // The analytic bound must never exceed the exact evaluation.
    CHECK(*row.bound <= *row.lp_total + 1e-6);
    REQUIRE(row.fraction_recovered.has_value());
    REQUIRE(row.clusters.has_value());
    CHECK(*row.clusters >= cfg.r);
    CHECK(row.runtime_ms > 0.0);
  }
  CHECK(summary.mean_coverage > 0.0);
  CHECK(summary.total_runtime_ms > 0.0);
}

TEST_CASE("CSV bodies are reproducible once runtime is masked") {
  const auto cfg = tiny_config();
  const auto a = harness::run_experiment(cfg);
  const auto b = harness::run_experiment(cfg);
  CHECK(mask_runtime(harness::to_csv(a)) == mask_runtime(harness::to_csv(b)));
}

TEST_CASE("per-seed failures land in the error column") {
  auto cfg = tiny_config();
  cfg.recovery.sample_factor = -1.0;  // recovery params reject this
  cfg.coverage_target = 0.0;          // errored rows count as target misses
  const auto summary = harness::run_experiment(cfg);

  REQUIRE(summary.rows.size() == 3);
  CHECK(summary.completed == 0);
  CHECK(summary.frac_targets_met == 0.0);
  CHECK_FALSE(summary.pass);
  for (const auto& row : summary.rows) {
    CHECK_FALSE(row.error.empty());
    // Stages before the failure still report.
    CHECK(row.coverage.has_value());
    CHECK(row.bound.has_value());
    CHECK_FALSE(row.fraction_recovered.has_value());
    // The message must not break the CSV shape.
    CHECK(row.error.find(',') == std::string::npos);
    CHECK(row.error.find('\n') == std::string::npos);
  }
}

TEST_CASE("recovery cells stay blank when no cluster size is legal") {
  auto cfg = tiny_config();
  cfg.d = 1;  // floor(rho*d/2) = 0: recovery cannot run
  const auto summary = harness::run_experiment(cfg);
  for (const auto& row : summary.rows) {
    CHECK(row.error.empty());
    CHECK_FALSE(row.fraction_recovered.has_value());
    CHECK_FALSE(row.clusters.has_value());
  }
}

TEST_CASE("lp_total is only attempted under the size ceiling") {
  auto cfg = tiny_config();
  cfg.num_seeds = 1;
  cfg.lp_eval_max_n = 10;
  const auto summary = harness::run_experiment(cfg);
  REQUIRE(summary.rows.size() == 1);
  CHECK(summary.rows[0].error.empty());
  CHECK_FALSE(summary.rows[0].lp_total.has_value());
}

TEST_CASE("explicit seed lists override the arithmetic sequence") {
  auto cfg = tiny_config();
  cfg.seeds = {42, 7};
  const auto summary = harness::run_experiment(cfg);
  REQUIRE(summary.rows.size() == 2);
  CHECK(summary.rows[0].seed == 42);
  CHECK(summary.rows[1].seed == 7);
}

TEST_CASE("csv_header is the documented column list") {
  CHECK(harness::csv_header() ==
        "seed,n,p,k,r,d,rho,c,coverage,bound,lp_total,frac_recovered,"
        "clusters,runtime_ms,constants_profile,error");
}

TEST_CASE("csv_row renders blanks and sanitizes error text") {
  const auto cfg = tiny_config();
  harness::SeedRow row;
  row.seed = 9;
  row.runtime_ms = 1.5;
  row.error = "bad, thing\nwith \"quotes\"";
  const auto fields = split(harness::csv_row(cfg, row), ',');
  REQUIRE(fields.size() == 16);
  CHECK(fields[0] == "9");
  CHECK(fields[1] == "300");
  CHECK(fields[8].empty());   // coverage
  CHECK(fields[9].empty());   // bound
  CHECK(fields[10].empty());  // lp_total
  CHECK(fields[11].empty());  // frac_recovered
  CHECK(fields[12].empty());  // clusters
  CHECK(fields[14] == "custom");
  CHECK(fields[15] == "bad; thing;with ;quotes;");
}

TEST_CASE("summary_json carries config, rows and targets") {
  auto cfg = tiny_config();
  cfg.num_seeds = 2;
  cfg.recovered_target = 0.0;
  const auto summary = harness::run_experiment(cfg);
  const json j = harness::summary_json(summary);

  CHECK(j.at("preset") == "custom");
  CHECK(j.at("params").at("n") == 300);
  CHECK(j.at("params").at("trial_budget") == 8);
  CHECK(j.at("seeds") == json::array({11, 12}));
  CHECK(j.at("completed") == 2);
  CHECK(j.at("targets").at("mean_recovered") == 0.0);
  CHECK(j.at("targets").at("frac_required") == 0.95);
  CHECK(j.at("pass") == true);
  CHECK(j.contains("generated_at"));
  CHECK(j.at("mean_fraction_recovered").get<double>() >= 0.0);
}

TEST_CASE("cli gen/scheme/recover: truth stays untouched unless passed") {
  const std::string base = "tmp_cli_audit";
  const std::string gpath = base + ".graph";
  const std::string tpath = base + ".truth.json";
  const std::string spath = base + ".scheme.json";
  const std::string rpath = base + ".report.json";

  CHECK(cli::run({"gen", "--n", "120", "--k", "15", "--r", "3", "--seed", "9",
                  "--out", base}) == 0);
  CHECK(std::ifstream(gpath).good());
  CHECK(std::ifstream(tpath).good());

  io::clear_audit_log();
  CHECK(cli::run({"scheme", "--graph", gpath, "--truth", tpath, "--out",
                  spath}) == 0);
  {
    const auto log = io::audit_log();
    CHECK(std::find(log.begin(), log.end(), "r " + gpath) != log.end());
    CHECK(std::find(log.begin(), log.end(), "r " + tpath) != log.end());
    CHECK(std::find(log.begin(), log.end(), "w " + spath) != log.end());
  }

  // Recovery without --truth must never open the truth file: the planted
  // cliques are exactly what the algorithm claims to find on its own.
  io::clear_audit_log();
  CHECK(cli::run({"recover", "--graph", gpath, "--scheme", spath, "--d", "20",
                  "--rho", "1", "--k", "15", "--seed", "3", "--out",
                  rpath}) == 0);
  for (const auto& entry : io::audit_log())
    CHECK(entry.find("truth") == std::string::npos);
  {
    const json report = io::load_json(rpath);
    CHECK_FALSE(report.contains("fraction_recovered"));
    for (const auto& cand : report.at("candidates"))
      CHECK(cand.at("clique") == true);
  }

  // With --truth the same run gains the scoring block.
  CHECK(cli::run({"recover", "--graph", gpath, "--scheme", spath, "--d", "20",
                  "--rho", "1", "--truth", tpath, "--seed", "3", "--out",
                  rpath}) == 0);
  {
    const json report = io::load_json(rpath);
    REQUIRE(report.contains("fraction_recovered"));
    const double frac = report.at("fraction_recovered").get<double>();
    CHECK(frac >= 0.0);
    CHECK(frac <= 1.0);
  }

  scrub({gpath, tpath, spath, rpath});
}

TEST_CASE("cli validate exit codes distinguish miss from error") {
  CHECK(cli::run({"validate", "--check", "bidensity", "--n", "400", "--p",
                  "0.5", "--pairs", "50", "--seed", "3"}) == 0);

  const std::string dense = "tmp_cli_dense.graph";
  io::save_graph_text(dense, complete_graph(300));
  CHECK(cli::run({"validate", "--check", "bidensity", "--graph", dense, "--p",
                  "0.5", "--pairs", "20", "--seed", "3"}) == 2);

  CHECK(cli::run({"validate", "--check", "coverage", "--n", "400", "--k", "25",
                  "--r", "40", "--seed", "1", "--threshold", "0.8"}) == 0);
  CHECK(cli::run({"validate", "--check", "coverage", "--n", "400", "--k", "25",
                  "--r", "5", "--seed", "1", "--threshold", "0.5"}) == 2);

  CHECK(cli::run({"validate", "--check", "nonsense"}) == 1);
  scrub({dense});
}

TEST_CASE("cli rejects unknown flags and missing subcommands") {
  CHECK(cli::run({"gen", "--n", "10", "--bogus"}) == 1);
  CHECK(cli::run(std::vector<std::string>{}) == 1);
  CHECK(cli::run({"recover", "--graph", "x", "--scheme", "y"}) == 1);
}

TEST_CASE("cli eval emits the documented CSV shape") {
  const std::string base = "tmp_cli_eval";
  const std::string gpath = base + ".graph";
  const std::string tpath = base + ".truth.json";
  const std::string spath = base + ".scheme.json";
  const std::string cpath = base + ".csv";

  REQUIRE(cli::run({"gen", "--n", "60", "--k", "10", "--r", "3", "--seed",
                    "4", "--out", base}) == 0);
  REQUIRE(cli::run({"scheme", "--graph", gpath, "--truth", tpath, "--out",
                    spath}) == 0);
  REQUIRE(cli::run({"eval", "--graph", gpath, "--scheme", spath, "--truth",
                    tpath, "--d", "2", "--rho", "1", "--seed", "21",
                    "--format", "csv", "--out", cpath}) == 0);

  const auto lines = split(slurp(cpath), '\n');
  REQUIRE(lines.size() >= 2);
  CHECK(lines[0] == "seed,n,p,k,r,d,rho,bound,total,runtime_ms");
  const auto fields = split(lines[1], ',');
  REQUIRE(fields.size() == 10);
  CHECK(fields[0] == "21");
  CHECK(fields[1] == "60");
  CHECK(fields[3] == "10");
  CHECK(fields[4] == "3");
  CHECK(fields[5] == "2");
  // The analytic bound is filled in (uniform supports) and respects the
  // exact total.
  REQUIRE_FALSE(fields[7].empty());
  CHECK(std::stod(fields[7]) <= std::stod(fields[8]) + 1e-6);

  scrub({gpath, tpath, spath, cpath});
}

TEST_CASE("cli experiment writes row CSV and summary JSON") {
  const std::string conf = "tmp_cli_exp_config.json";
  const std::string base = "tmp_cli_exp";
  io::save_json(conf, json{{"n", 200},
                           {"p", 0.5},
                           {"k", 15},
                           {"r", 4},
                           {"d", 20},
                           {"rho", 1.0},
                           {"c", 1.5},
                           {"sample_factor", 0.5},
                           {"trial_budget", 4},
                           {"num_seeds", 2},
                           {"base_seed", 5}});

  CHECK(cli::run({"experiment", "--config", conf, "--out", base}) == 0);
  const auto lines = split(slurp(base + ".csv"), '\n');
  REQUIRE(lines.size() >= 3);
  CHECK(lines[0] == harness::csv_header());
  CHECK(split(lines[1], ',')[0] == "5");
  CHECK(split(lines[2], ',')[0] == "6");

  const json summary = io::load_json(base + ".summary.json");
  CHECK(summary.at("completed") == 2);
  CHECK(summary.at("params").at("n") == 200);

  CHECK(cli::run({"experiment", "--preset", "no-such-preset"}) == 1);
  scrub({conf, base + ".csv", base + ".summary.json"});
}
