#include "signalgame/cli.hpp"

#include <chrono>
#include <cstdint>
#include <iostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "signalgame/game.hpp"
#include "signalgame/graph.hpp"
#include "signalgame/harness.hpp"
#include "signalgame/io.hpp"
#include "signalgame/lp.hpp"
#include "signalgame/recovery.hpp"
#include "signalgame/security.hpp"
#include "signalgame/signaling.hpp"

namespace signalgame::cli {

namespace {

using nlohmann::json;

void emit_json(const json& j, const std::string& out) {
  if (out.empty())
    std::cout << j.dump(2) << '\n';
  else
    io::save_json(out, j);
}

std::vector<double> uniform_prior(int n) {
  return std::vector<double>(static_cast<std::size_t>(n), 1.0 / n);
}

// Scheme files come in two shapes; sniff by key. A phi-file is converted to
// the posterior view against the uniform vertex prior (the security game's).
game::ConvexDecomposition load_any_scheme(const std::string& path, int n) {
  const json j = io::load_json(path);
  game::ConvexDecomposition dec;
  if (j.contains("alpha")) {
    dec = io::decomposition_from_json(j);
  } else {
    const auto scheme = io::scheme_from_json(j);
    dec = game::scheme_to_decomposition(uniform_prior(scheme.num_states), scheme);
  }
  for (const auto& post : dec.posteriors)
    if (static_cast<int>(post.size()) != n)
      throw std::runtime_error("scheme: posterior length != vertex count");
  return dec;
}

json cluster_to_json(const recovery::Cluster& c) {
  return json{{"nodes", c.nodes},
              {"weight", c.weight},
              {"subgame_value", c.subgame_value},
              {"trimmed_payoff", c.trimmed_payoff},
              {"cluster_payoff", c.cluster_payoff},
              {"overrepresented_mass", c.overrepresented_mass}};
}

struct GenOpts {
  int n = 0;
  double p = 0.5;
  int k = 2;
  int r = 0;
  std::uint64_t seed = 1;
  std::string out;
  bool binary = false;
};

int do_gen(const GenOpts& o) {
  const auto instance = graph::gen_planted_cover(o.n, o.p, o.k, o.r, o.seed);
  json j{{"n", o.n},
         {"p", o.p},
         {"k", o.k},
         {"r", o.r},
         {"seed", o.seed},
         {"edge_count", instance.graph.edge_count()},
         {"background_edge_count", instance.background_edge_count()},
         {"coverage", harness::coverage_validator(instance)}};
  if (!o.out.empty()) {
    const std::string gpath = o.out + (o.binary ? ".sgrb" : ".graph");
    if (o.binary)
      io::save_graph_binary(gpath, instance.graph);
    else
      io::save_graph_text(gpath, instance.graph);
    const std::string tpath = o.out + ".truth.json";
    io::save_truth(tpath, instance);
    j["graph_file"] = gpath;
    j["truth_file"] = tpath;
  }
  std::cout << j.dump(2) << '\n';
  return 0;
}

struct SolveOpts {
  std::string game;
  std::string graph;
  int d = 1;
  double rho = 1.0;
  std::vector<double> posterior;
  std::string out;
};

int do_solve(const SolveOpts& o) {
  if (o.game.empty() == o.graph.empty())
    throw std::runtime_error("solve: pass exactly one of --game / --graph");
  if (!o.game.empty()) {
    const auto g = io::load_game(o.game);
    std::vector<double> x = o.posterior.empty() ? g.prior : o.posterior;
    if (static_cast<int>(x.size()) != g.num_states)
      throw std::runtime_error("solve: posterior length != state count");
    const auto sol = lp::solve_matrix_game(game::expected_matrix(g, x));
    emit_json(json{{"value", sol.value},
                   {"row_strategy", sol.row_strategy},
                   {"col_strategy", sol.col_strategy},
                   {"duality_gap", sol.duality_gap}},
              o.out);
    return 0;
  }
  security::SecurityGame sg;
  sg.graph = io::load_graph(o.graph);
  sg.defense_budget = o.d;
  sg.protection_reward = o.rho;
  const std::vector<double> x =
      o.posterior.empty() ? uniform_prior(sg.graph.n()) : o.posterior;
  const auto eq = security::solve_security_subgame(sg, x);
  emit_json(io::equilibrium_to_json(eq), o.out);
  return 0;
}

struct SchemeOpts {
  std::string graph;
  std::string truth;
  std::string out;
  bool as_phi = false;
};

int do_scheme(const SchemeOpts& o) {
  graph::PlantedCoverInstance instance;
  instance.graph = io::load_graph(o.graph);
  const auto truth = io::load_truth(o.truth);
  if (truth.params.n != instance.graph.n())
    throw std::runtime_error("scheme: truth n != graph n");
  instance.planted_cliques = truth.cliques;
  instance.params = truth.params;
  instance.seed = truth.seed;
  const auto dec = signaling::build_clique_partition_scheme(instance);
  if (o.as_phi)
    io::save_scheme(o.out, game::decomposition_to_scheme(dec.prior, dec));
  else
    io::save_decomposition(o.out, dec);
  std::cout << json{{"signals", dec.alpha.size()}, {"out", o.out}}.dump(2)
            << '\n';
  return 0;
}

struct EvalOpts {
  std::string game;
  std::string graph;
  std::string truth;
  std::string scheme;
  int d = 1;
  double rho = 1.0;
  std::uint64_t seed = 0;  // label only; eval itself is deterministic
  std::string format = "json";
  std::string out;
};

int do_eval(const EvalOpts& o) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  if (o.game.empty() == o.graph.empty())
    throw std::runtime_error("eval: pass exactly one of --game / --graph");

  signaling::SchemeEvaluation evaluation;
  std::string n_cell, p_cell, k_cell, r_cell, d_cell, rho_cell, bound_cell;
  if (!o.game.empty()) {
    const auto g = io::load_game(o.game);
    const json j = io::load_json(o.scheme);
    game::ConvexDecomposition dec =
        j.contains("alpha")
            ? io::decomposition_from_json(j)
            : game::scheme_to_decomposition(g.prior, io::scheme_from_json(j));
    evaluation = signaling::evaluate_scheme_explicit(g, dec);
  } else {
    security::SecurityGame sg;
    sg.graph = io::load_graph(o.graph);
    sg.defense_budget = o.d;
    sg.protection_reward = o.rho;
    const auto dec = load_any_scheme(o.scheme, sg.graph.n());
    evaluation = signaling::evaluate_scheme_security(sg, dec);
    n_cell = std::to_string(sg.graph.n());
    d_cell = std::to_string(o.d);
    rho_cell = io::format_double(o.rho);
    try {
      bound_cell = io::format_double(
          signaling::scheme_utility_lower_bound(sg.graph, dec, o.d, o.rho));
    } catch (const std::exception&) {
      // Bound only exists for uniform-support schemes; leave the cell blank.
    }
    if (!o.truth.empty()) {
      const auto truth = io::load_truth(o.truth);
      p_cell = io::format_double(truth.params.p);
      k_cell = std::to_string(truth.params.k);
      r_cell = std::to_string(truth.params.r);
    }
  }
  const double runtime_ms =
      std::chrono::duration<double, std::milli>(clock::now() - t0).count();

  const std::string row = std::to_string(o.seed) + ',' + n_cell + ',' +
                          p_cell + ',' + k_cell + ',' + r_cell + ',' + d_cell +
                          ',' + rho_cell + ',' + bound_cell + ',' +
                          io::format_double(evaluation.total) + ',' +
                          io::format_double(runtime_ms);
  if (o.format == "csv") {
    const std::string body =
        "seed,n,p,k,r,d,rho,bound,total,runtime_ms\n" + row + "\n";
    if (o.out.empty()) {
      std::cout << body;
    } else {
      auto f = io::open_output(o.out);
      f << body;
    }
    return 0;
  }
  json per_signal = json::array();
  for (const auto& sv : evaluation.per_signal)
    per_signal.push_back({{"weight", sv.weight}, {"value", sv.value}});
  json j{{"total", evaluation.total},
         {"per_signal", std::move(per_signal)},
         {"csv_row", row}};
  if (!bound_cell.empty()) j["bound"] = std::stod(bound_cell);
  emit_json(j, o.out);
  return 0;
}

struct RecoverOpts {
  std::string graph;
  std::string scheme;
  std::string truth;
  int d = 1;
  double rho = 1.0;
  int k = 0;
  std::uint64_t seed = 1;
  recovery::RecoveryParams params;
  std::string out;
};

int do_recover(const RecoverOpts& o) {
  graph::PlantedCoverInstance instance;
  instance.graph = io::load_graph(o.graph);
  const int n = instance.graph.n();
  const auto dec = load_any_scheme(o.scheme, n);

  int k = o.k;
  const bool scored = !o.truth.empty();
  if (scored) {
    const auto truth = io::load_truth(o.truth);
    if (truth.params.n != n)
      throw std::runtime_error("recover: truth n != graph n");
    instance.planted_cliques = truth.cliques;
    instance.params = truth.params;
    instance.seed = truth.seed;
    if (k == 0) k = truth.params.k;
  } else {
    if (k < 2)
      throw std::runtime_error("recover: --k is required without --truth");
    instance.params = {n, 0.0, k, 0};
  }
  instance.params.k = k;

  recovery::RecoveryParams rp = o.params;
  rp.d = o.d;
  rp.rho = o.rho;
  const auto report = recovery::recover_pipeline(instance, dec, rp, o.seed);

  json clusters = json::array();
  for (const auto& c : report.clusters) clusters.push_back(cluster_to_json(c));
  json candidates = json::array();
  for (const auto& cand : report.candidates)
    candidates.push_back(json{{"nodes", cand},
                              {"size", cand.size()},
                              {"clique", recovery::verify_clique(
                                             instance.graph, cand)}});
  json j{{"k", k},
         {"clusters", std::move(clusters)},
         {"candidates", std::move(candidates)}};
  if (scored) {
    j["verified"] = report.verified;
    j["fraction_recovered"] = report.fraction_recovered;
  }
  emit_json(j, o.out);
  return 0;
}

struct ExperimentOpts {
  std::string preset;
  std::string config;
  std::string out;
  int num_seeds = 0;
  std::uint64_t base_seed = 0;
  bool base_seed_set = false;
  std::vector<std::uint64_t> seeds;
};

template <typename T>
void overlay_field(const json& j, const char* key, T& field) {
  if (j.contains(key)) field = j.at(key).get<T>();
}

void overlay_target(const json& j, const char* key,
                    std::optional<double>& field) {
  if (!j.contains(key)) return;
  if (j.at(key).is_null())
    field.reset();
  else
    field = j.at(key).get<double>();
}

void overlay_config(harness::ExperimentConfig& cfg, const json& j) {
  overlay_field(j, "preset", cfg.preset);
  overlay_field(j, "constants_profile", cfg.constants_profile);
  overlay_field(j, "n", cfg.n);
  overlay_field(j, "p", cfg.p);
  overlay_field(j, "k", cfg.k);
  overlay_field(j, "r", cfg.r);
  overlay_field(j, "d", cfg.d);
  overlay_field(j, "rho", cfg.rho);
  overlay_field(j, "c", cfg.c);
  overlay_field(j, "epsilon", cfg.recovery.epsilon);
  overlay_field(j, "sample_factor", cfg.recovery.sample_factor);
  overlay_field(j, "trial_budget", cfg.recovery.trial_budget);
  overlay_field(j, "base_seed", cfg.base_seed);
  overlay_field(j, "num_seeds", cfg.num_seeds);
  overlay_field(j, "seeds", cfg.seeds);
  overlay_field(j, "lp_eval_max_n", cfg.lp_eval_max_n);
  overlay_field(j, "frac_required", cfg.frac_required);
  overlay_target(j, "coverage_target", cfg.coverage_target);
  overlay_target(j, "bound_target", cfg.bound_target);
  overlay_target(j, "recovered_target", cfg.recovered_target);
}

int do_experiment(const ExperimentOpts& o) {
  harness::ExperimentConfig cfg;
  if (!o.preset.empty()) {
    cfg = harness::preset_config(o.preset);
  } else if (o.config.empty()) {
    throw std::runtime_error("experiment: need --preset and/or --config");
  } else {
    cfg.preset = "custom";
    cfg.constants_profile = "custom";
  }
  if (!o.config.empty()) overlay_config(cfg, io::load_json(o.config));
  if (o.num_seeds > 0) cfg.num_seeds = o.num_seeds;
  if (o.base_seed_set) cfg.base_seed = o.base_seed;
  if (!o.seeds.empty()) cfg.seeds = o.seeds;
  cfg.recovery.d = cfg.d;
  cfg.recovery.rho = cfg.rho;
  if (!o.out.empty()) {
    cfg.out_csv = o.out + ".csv";
    cfg.out_summary = o.out + ".summary.json";
  }
  const auto summary = harness::run_experiment(cfg);
  std::cout << harness::summary_json(summary).dump(2) << '\n';
  return summary.pass ? 0 : 2;
}

struct ValidateOpts {
  std::string check;
  int n = 2000;
  double p = 0.5;
  int k = 0;
  int r = 0;
  std::uint64_t seed = 1;
  std::string graph;
  harness::ValidatorConfig vconfig;
  double threshold = 0.9;
  std::string out;
};

int do_validate(const ValidateOpts& o) {
  if (o.check == "bidensity") {
    const auto res =
        o.graph.empty()
            ? harness::bidensity_validator(o.n, o.p, o.vconfig, o.seed)
            : harness::bidensity_validator(io::load_graph(o.graph), o.p,
                                           o.vconfig, o.seed);
    emit_json(json{{"check", "bidensity"},
                   {"pass", res.pass},
                   {"worst_bidensity", res.worst_bidensity},
                   {"limit", res.limit},
                   {"cluster_size", res.cluster_size},
                   {"pairs_checked", res.pairs_checked}},
              o.out);
    return res.pass ? 0 : 2;
  }
  if (o.check == "coverage") {
    if (o.k < 2) throw std::runtime_error("validate coverage: --k required");
    const auto instance =
        graph::gen_planted_cover(o.n, o.p, o.k, o.r, o.seed);
    const double cov = harness::coverage_validator(instance);
    const bool pass = cov >= o.threshold;
    emit_json(json{{"check", "coverage"},
                   {"coverage", cov},
                   {"threshold", o.threshold},
                   {"pass", pass}},
              o.out);
    return pass ? 0 : 2;
  }
  throw std::runtime_error("validate: --check must be bidensity or coverage");
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{
      "Signaling schemes, equilibria and clique recovery for network "
      "security games on random graphs"};
  app.require_subcommand(1);

  GenOpts gen;
  auto* gen_cmd =
      app.add_subcommand("gen", "Sample a planted-cover instance");
  gen_cmd->add_option("--n", gen.n, "Vertex count")->required();
  gen_cmd->add_option("--p", gen.p, "Background edge probability");
  gen_cmd->add_option("--k", gen.k, "Planted clique size");
  gen_cmd->add_option("--r", gen.r, "Number of planted cliques");
  gen_cmd->add_option("--seed", gen.seed, "Instance seed");
  gen_cmd->add_option("--out", gen.out,
                      "Base path: writes <out>.graph|.sgrb and <out>.truth.json");
  gen_cmd->add_flag("--binary", gen.binary, "Write the packed binary format");

  SolveOpts solve;
  auto* solve_cmd = app.add_subcommand(
      "solve", "Solve one subgame (graph) or matrix game (explicit game)");
  solve_cmd->add_option("--game", solve.game, "Explicit game JSON");
  solve_cmd->add_option("--graph", solve.graph, "Graph file");
  solve_cmd->add_option("--d", solve.d, "Defense budget");
  solve_cmd->add_option("--rho", solve.rho, "Protection reward");
  solve_cmd->add_option("--posterior", solve.posterior,
                        "Comma-separated posterior (default: uniform/prior)")
      ->delimiter(',');
  solve_cmd->add_option("--out", solve.out, "Write result JSON here");

  SchemeOpts scheme;
  auto* scheme_cmd = app.add_subcommand(
      "scheme", "Build the clique-partition scheme for an instance");
  scheme_cmd->add_option("--graph", scheme.graph, "Graph file")->required();
  scheme_cmd->add_option("--truth", scheme.truth, "Truth JSON")->required();
  scheme_cmd->add_option("--out", scheme.out, "Output scheme path")->required();
  scheme_cmd->add_flag("--as-phi", scheme.as_phi,
                       "Write signal-emission rows instead of the "
                       "decomposition form");

  EvalOpts eval;
  auto* eval_cmd =
      app.add_subcommand("eval", "Expected attacker utility of a scheme");
  eval_cmd->add_option("--game", eval.game, "Explicit game JSON");
  eval_cmd->add_option("--graph", eval.graph, "Graph file");
  eval_cmd->add_option("--truth", eval.truth, "Truth JSON (labels the row)");
  eval_cmd->add_option("--scheme", eval.scheme, "Scheme file")->required();
  eval_cmd->add_option("--d", eval.d, "Defense budget");
  eval_cmd->add_option("--rho", eval.rho, "Protection reward");
  eval_cmd->add_option("--seed", eval.seed, "Seed label for the CSV row");
  eval_cmd->add_option("--format", eval.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  eval_cmd->add_option("--out", eval.out, "Write result here");

  RecoverOpts recover;
  auto* recover_cmd = app.add_subcommand(
      "recover", "Extract clusters and recover planted cliques");
  recover_cmd->add_option("--graph", recover.graph, "Graph file")->required();
  recover_cmd->add_option("--scheme", recover.scheme, "Scheme file")
      ->required();
  recover_cmd->add_option("--d", recover.d, "Defense budget");
  recover_cmd->add_option("--rho", recover.rho, "Protection reward");
  recover_cmd->add_option("--k", recover.k, "Target clique size");
  recover_cmd->add_option("--truth", recover.truth,
                          "Truth JSON; enables scoring");
  recover_cmd->add_option("--seed", recover.seed, "Recovery seed");
  recover_cmd->add_option("--epsilon", recover.params.epsilon,
                          "Overlap constant");
  recover_cmd->add_option("--sample-factor", recover.params.sample_factor,
                          "Seed-set size factor c_R");
  recover_cmd->add_option("--trial-budget", recover.params.trial_budget,
                          "Subsamples per cluster");
  recover_cmd->add_option("--out", recover.out, "Write report JSON here");

  ExperimentOpts experiment;
  auto* exp_cmd =
      app.add_subcommand("experiment", "Run a preset across seeds");
  exp_cmd->add_option("--preset", experiment.preset,
                      "One of: coverage-bound, reward-scaled-shape, "
                      "budget-scaled-shape, recovery-desk");
  exp_cmd->add_option("--config", experiment.config,
                      "JSON file overriding preset fields");
  exp_cmd->add_option("--num-seeds", experiment.num_seeds, "Seed count");
  auto* exp_seed =
      exp_cmd->add_option("--seed", experiment.base_seed, "Base seed");
  exp_cmd->add_option("--seeds", experiment.seeds, "Explicit seed list")
      ->delimiter(',');
  exp_cmd->add_option("--out", experiment.out,
                      "Base path: writes <out>.csv and <out>.summary.json");

  ValidateOpts validate;
  auto* val_cmd =
      app.add_subcommand("validate", "Statistical graph validators");
  val_cmd->add_option("--check", validate.check, "bidensity|coverage")
      ->required();
  val_cmd->add_option("--n", validate.n, "Vertex count");
  val_cmd->add_option("--p", validate.p, "Edge probability");
  val_cmd->add_option("--k", validate.k, "Clique size (coverage)");
  val_cmd->add_option("--r", validate.r, "Clique count (coverage)");
  val_cmd->add_option("--seed", validate.seed, "Seed");
  val_cmd->add_option("--graph", validate.graph,
                      "Check this graph file instead of sampling");
  val_cmd->add_option("--slack", validate.vconfig.density_slack,
                      "Bidensity limit multiplier");
  val_cmd->add_option("--size-factor", validate.vconfig.size_factor,
                      "Cluster size factor (times log2 n)");
  val_cmd->add_option("--pairs", validate.vconfig.pairs,
                      "Cluster pairs to sample");
  val_cmd->add_option("--threshold", validate.threshold,
                      "Coverage pass threshold");
  val_cmd->add_option("--out", validate.out, "Write result JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen_cmd->parsed()) return do_gen(gen);
    if (solve_cmd->parsed()) return do_solve(solve);
    if (scheme_cmd->parsed()) return do_scheme(scheme);
    if (eval_cmd->parsed()) return do_eval(eval);
    if (recover_cmd->parsed()) return do_recover(recover);
    if (exp_cmd->parsed()) {
      experiment.base_seed_set = exp_seed->count() > 0;
      return do_experiment(experiment);
    }
    if (val_cmd->parsed()) return do_validate(validate);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;  // unreachable: require_subcommand(1) guarantees a match
}

int run(const std::vector<std::string>& args) {
  std::vector<std::string> full;
  full.reserve(args.size() + 1);
  full.emplace_back("signalgame");
  full.insert(full.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(full.size());
  for (const std::string& s : full) argv.push_back(s.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace signalgame::cli
