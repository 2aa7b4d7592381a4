#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "signalgame/game.hpp"
#include "signalgame/graph.hpp"
#include "signalgame/recovery.hpp"
#include "signalgame/rng.hpp"
#include "signalgame/security.hpp"
#include "signalgame/signaling.hpp"

using namespace signalgame;

namespace {

graph::Graph complete_graph(int n) {
  graph::Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

recovery::RecoveryParams desk_params(double sample_factor, int trial_budget,
                                     int d, double rho) {
  recovery::RecoveryParams p;
  p.epsilon = 0.1;
  p.sample_factor = sample_factor;
  p.trial_budget = trial_budget;
  p.d = d;
  p.rho = rho;
  return p;
}

// The three correctness inequalities every extracted cluster must satisfy.
// The subgame value can exceed the trimmed payoff only by the trimmed mass
// (payoffs before the defense tax sit in [0,1]); the cluster placement
// maximizes the score over a polytope containing the trimmed attacker
// strategy; and the cluster has exactly floor(rho*d/2) vertices.
void check_cluster_inequalities(const recovery::Cluster& cl, int d,
                                double rho) {
  CHECK(cl.overrepresented_mass >= -1e-12);
  CHECK(cl.subgame_value <=
        cl.trimmed_payoff + cl.overrepresented_mass + 1e-6);
  CHECK(cl.cluster_payoff >= cl.trimmed_payoff - 1e-9);
  const int m = static_cast<int>(std::floor(rho * d / 2.0));
  CHECK(static_cast<int>(cl.nodes.size()) == m);
  CHECK(std::is_sorted(cl.nodes.begin(), cl.nodes.end()));
}

}  // namespace

TEST_CASE("trim_overrepresented zeroes strictly-above entries") {
  std::vector<double> v{0.6, 0.4};
  const double removed = recovery::trim_overrepresented(v, 0.5);
  CHECK(removed == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(v[0] == 0.0);
  CHECK(v[1] == 0.4);

  // Equality with the threshold survives: the cut is strict.
  std::vector<double> w{0.5, 0.5};
  CHECK(recovery::trim_overrepresented(w, 0.5) == 0.0);
  CHECK(w == std::vector<double>{0.5, 0.5});

  std::vector<double> u{0.1, 0.2, 0.3};
  CHECK(recovery::trim_overrepresented(u, 1.0) == 0.0);
  CHECK(u == std::vector<double>{0.1, 0.2, 0.3});

  std::vector<double> all{0.7, 0.8};
  CHECK(recovery::trim_overrepresented(all, 0.1) ==
        doctest::Approx(1.5).epsilon(1e-15));
  CHECK(all == std::vector<double>{0.0, 0.0});

  std::vector<double> empty;
  CHECK(recovery::trim_overrepresented(empty, 0.5) == 0.0);
}

TEST_CASE("top_m_by_score picks largest scores, ties to smaller index") {
  CHECK(recovery::top_m_by_score({3.0, 1.0, 2.0, 0.0}, 2) ==
        std::vector<int>{0, 2});
  CHECK(recovery::top_m_by_score({1.0, 1.0, 1.0}, 2) ==
        std::vector<int>{0, 1});
  CHECK(recovery::top_m_by_score({0.0, 5.0, 0.0, 5.0}, 1) ==
        std::vector<int>{1});
  // m beyond the vector returns every index.
  CHECK(recovery::top_m_by_score({2.0, 1.0}, 10) == std::vector<int>{0, 1});
  CHECK(recovery::top_m_by_score({4.0, 2.0, 9.0}, 0).empty());
  // Result is ascending even when scores are not.
  CHECK(recovery::top_m_by_score({1.0, 9.0, 5.0, 7.0}, 3) ==
        std::vector<int>{1, 2, 3});
}

TEST_CASE("extract_signal_clusters rejects degenerate cluster sizes") {
  const graph::Graph g = complete_graph(4);
  game::ConvexDecomposition dec;
  dec.prior = {0.25, 0.25, 0.25, 0.25};
  dec.alpha = {1.0};
  dec.posteriors = {{0.25, 0.25, 0.25, 0.25}};

  // floor(rho*d/2) = 0 in both directions of the product.
  CHECK_THROWS_AS(recovery::extract_signal_clusters(g, dec, 1, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(recovery::extract_signal_clusters(g, dec, 3, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(recovery::extract_signal_clusters(g, dec, 0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(recovery::extract_signal_clusters(g, dec, 2, -1.0),
                  std::invalid_argument);
  // rho*d = 2 is the smallest legal product: single-vertex clusters.
  const auto clusters = recovery::extract_signal_clusters(g, dec, 2, 1.0);
  REQUIRE(clusters.size() == 1);
  CHECK(clusters[0].nodes.size() == 1);
}

TEST_CASE("extract_signal_clusters validates posteriors") {
  const graph::Graph g = complete_graph(4);
  game::ConvexDecomposition dec;
  dec.prior = {0.25, 0.25, 0.25, 0.25};
  dec.alpha = {1.0};

  dec.posteriors = {{0.5, 0.5}};  // wrong length
  CHECK_THROWS_AS(recovery::extract_signal_clusters(g, dec, 4, 1.0),
                  std::invalid_argument);
  dec.posteriors = {{0.5, 0.5, 0.5, 0.5}};  // not normalized
  CHECK_THROWS_AS(recovery::extract_signal_clusters(g, dec, 4, 1.0),
                  std::invalid_argument);
  dec.posteriors = {{0.5, 0.7, -0.2, 0.0}};  // negative mass
  CHECK_THROWS_AS(recovery::extract_signal_clusters(g, dec, 4, 1.0),
                  std::invalid_argument);
}

TEST_CASE("extract_signal_clusters on the empty graph breaks ties by index") {
  // No edges: every attack score is zero, so the top-m pick is {0, ..., m-1}
  // and the cluster payoff is zero.
  const graph::Graph g(8);
  game::ConvexDecomposition dec;
  dec.prior.assign(8, 1.0 / 8);
  dec.alpha = {1.0};
  dec.posteriors = {dec.prior};

  const auto clusters = recovery::extract_signal_clusters(g, dec, 8, 1.0);
  REQUIRE(clusters.size() == 1);
  CHECK(clusters[0].nodes == std::vector<int>{0, 1, 2, 3});
  CHECK(clusters[0].cluster_payoff == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(clusters[0].trimmed_payoff <= 1e-12);
  check_cluster_inequalities(clusters[0], 8, 1.0);
}

TEST_CASE("extracted clusters satisfy the correctness inequalities") {
  // Desk-small planted cover; residual supports stay above rho*d/2 = 10
  // vertices so no signal is wiped out by the trim.
  const auto instance = graph::gen_planted_cover(400, 0.5, 30, 8, 20260501);
  const auto dec = signaling::build_clique_partition_scheme(instance);
  const int d = 20;
  const double rho = 1.0;

  const auto clusters =
      recovery::extract_signal_clusters(instance.graph, dec, d, rho);
  REQUIRE(clusters.size() == dec.alpha.size());
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    CHECK(clusters[i].weight == doctest::Approx(dec.alpha[i]).epsilon(1e-12));
    check_cluster_inequalities(clusters[i], d, rho);
  }

  // The residual signals point at clique vertices: their clusters should
  // earn near-clique payoff (every chosen vertex adjacent to almost all of
  // the support), far above the 0.5-ish background level.
  int strong = 0;
  for (std::size_t i = 0; i + 1 < clusters.size(); ++i)
    if (clusters[i].cluster_payoff > 0.9) ++strong;
  CHECK(strong >= static_cast<int>(clusters.size()) - 2);
}

TEST_CASE("generic-LP extraction path agrees with the closed form") {
  const auto instance = graph::gen_planted_cover(200, 0.5, 25, 6, 777);
  const auto dec = signaling::build_clique_partition_scheme(instance);

  const auto fast =
      recovery::extract_signal_clusters(instance.graph, dec, 20, 1.0, false);
  const auto lp =
      recovery::extract_signal_clusters(instance.graph, dec, 20, 1.0, true);
  REQUIRE(fast.size() == lp.size());
  for (std::size_t i = 0; i < fast.size(); ++i) {
    // Node sets can differ on score ties; the achieved optimum cannot.
    CHECK(fast[i].cluster_payoff ==
          doctest::Approx(lp[i].cluster_payoff).epsilon(1e-7));
    CHECK(fast[i].subgame_value ==
          doctest::Approx(lp[i].subgame_value).epsilon(1e-9));
    CHECK(fast[i].trimmed_payoff ==
          doctest::Approx(lp[i].trimmed_payoff).epsilon(1e-9));
    CHECK(fast[i].overrepresented_mass ==
          doctest::Approx(lp[i].overrepresented_mass).epsilon(1e-9));
    check_cluster_inequalities(lp[i], 20, 1.0);
  }
}

TEST_CASE("cluster payoff survives on planted edges, not background ones") {
  // Replaying each trimmed posterior against the background graph (the
  // instance before planting) caps the cluster payoff near the ambient edge
  // density; the full-graph payoff sits near 1. This is the separation that
  // makes the clusters informative.
  const auto instance = graph::gen_planted_cover(800, 0.5, 40, 10, 424242);
  const auto dec = signaling::build_clique_partition_scheme(instance);
  const int d = 20;
  const double rho = 1.0;
  const double threshold = 2.0 / (rho * d);

  const auto clusters =
      recovery::extract_signal_clusters(instance.graph, dec, d, rho);
  const graph::Graph bg = instance.background_graph();

  double full_sum = 0.0;
  double bg_sum = 0.0;
  int counted = 0;
  // Skip the final leftover signal: its support is not a planted clique, so
  // only the residual signals make the claim.
  for (std::size_t i = 0; i + 1 < clusters.size(); ++i) {
    std::vector<double> xhat = dec.posteriors[i];
    recovery::trim_overrepresented(xhat, threshold);
    const std::vector<double> bg_score = security::attack_scores(bg, xhat);
    double covered = 0.0;
    for (int v : clusters[i].nodes)
      covered += bg_score[static_cast<std::size_t>(v)];
    bg_sum += threshold * covered;
    full_sum += clusters[i].cluster_payoff;
    ++counted;
  }
  REQUIRE(counted >= 8);
  CHECK(full_sum / counted > 0.9);
  CHECK(bg_sum / counted < 0.5 + 0.05 / 2 + 0.1);
}

TEST_CASE("approx_recover_clique validates its inputs") {
  const graph::Graph g = complete_graph(6);
  const auto params = desk_params(1.0, 2, 2, 1.0);

  CHECK_THROWS_AS(
      recovery::approx_recover_clique(g, {}, 3, params, 1),
      std::invalid_argument);
  CHECK_THROWS_AS(
      recovery::approx_recover_clique(g, {0, 1, 2}, 1, params, 1),
      std::invalid_argument);
  CHECK_THROWS_AS(
      recovery::approx_recover_clique(g, {0, 0, 1}, 3, params, 1),
      std::invalid_argument);
  CHECK_THROWS_AS(
      recovery::approx_recover_clique(g, {0, 6}, 3, params, 1),
      std::invalid_argument);

  auto bad = params;
  bad.trial_budget = 0;
  CHECK_THROWS_AS(recovery::approx_recover_clique(g, {0, 1}, 3, bad, 1),
                  std::invalid_argument);
  bad = params;
  bad.sample_factor = 0.0;
  CHECK_THROWS_AS(recovery::approx_recover_clique(g, {0, 1}, 3, bad, 1),
                  std::invalid_argument);
  bad = params;
  bad.epsilon = 1.0;
  CHECK_THROWS_AS(recovery::approx_recover_clique(g, {0, 1}, 3, bad, 1),
                  std::invalid_argument);
  bad = params;
  bad.d = 0;
  CHECK_THROWS_AS(recovery::approx_recover_clique(g, {0, 1}, 3, bad, 1),
                  std::invalid_argument);
  bad = params;
  bad.rho = -0.5;
  CHECK_THROWS_AS(recovery::approx_recover_clique(g, {0, 1}, 3, bad, 1),
                  std::invalid_argument);
}

TEST_CASE("approx_recover_clique on a complete graph") {
  const graph::Graph g = complete_graph(6);
  const std::vector<int> t{0, 1, 2, 3, 4, 5};
  const auto params = desk_params(1.0, 3, 2, 1.0);

  // Sampled members qualify through R minus themselves, so the whole vertex
  // set comes back as one clique.
  const auto found = recovery::approx_recover_clique(g, t, 6, params, 5);
  REQUIRE(found.size() == 1);
  CHECK(found[0] == t);

  // Asking for cliques larger than the graph prunes everything away.
  CHECK(recovery::approx_recover_clique(g, t, 7, params, 5).empty());
}

TEST_CASE("approx_recover_clique is deterministic in the seed") {
  const auto instance = graph::gen_planted_cover(500, 0.5, 30, 1, 99);
  const auto params = desk_params(0.5, 6, 20, 1.0);
  const std::vector<int>& t = instance.planted_cliques[0];

  const auto a = recovery::approx_recover_clique(instance.graph, t, 30,
                                                 params, 123456);
  const auto b = recovery::approx_recover_clique(instance.graph, t, 30,
                                                 params, 123456);
  CHECK(a == b);
}

TEST_CASE("seeding from the planted clique recovers it exactly") {
  const auto params = desk_params(0.5, 6, 20, 1.0);
  int hits = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto instance = graph::gen_planted_cover(
        1000, 0.5, 50, 1, rng::child_seed(31337, "exact", trial));
    const std::vector<int>& s = instance.planted_cliques[0];
    const auto found = recovery::approx_recover_clique(
        instance.graph, s, 50, params, rng::child_seed(4, "run", trial));
    if (found.size() == 1 && found[0] == s) ++hits;
  }
  CHECK(hits >= 19);
}

TEST_CASE("clusters disjoint from the clique recover nothing") {
  const auto params = desk_params(0.5, 6, 20, 1.0);
  int clean = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto instance = graph::gen_planted_cover(
        1000, 0.5, 50, 1, rng::child_seed(271828, "disjoint", trial));
    const std::set<int> planted(instance.planted_cliques[0].begin(),
                                instance.planted_cliques[0].end());
    std::vector<int> t;
    for (int v = 0; v < instance.graph.n() && t.size() < 50; ++v)
      if (!planted.count(v)) t.push_back(v);
    const auto found = recovery::approx_recover_clique(
        instance.graph, t, 50, params, rng::child_seed(5, "run", trial));
    if (found.empty()) ++clean;
  }
  CHECK(clean >= 19);
}

TEST_CASE("half-overlapping clusters still find the clique given trials") {
  // |t ∩ S| = k/2 with |t| = 1.5k: a trial succeeds when its whole sample
  // lands in the overlap, which happens with probability about
  // C(k/2, 5) / C(1.5k, 5) ≈ 0.0022 here, so 4000 trials succeed with
  // overwhelming probability.
  const auto params = desk_params(0.5, 4000, 20, 1.0);
  int hits = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto instance = graph::gen_planted_cover(
        1000, 0.5, 50, 1, rng::child_seed(16180, "overlap", trial));
    const std::vector<int>& s = instance.planted_cliques[0];
    const std::set<int> planted(s.begin(), s.end());

    std::vector<int> t(s.begin(), s.begin() + 25);
    for (int v = 0; v < instance.graph.n() && t.size() < 75; ++v)
      if (!planted.count(v)) t.push_back(v);
    std::sort(t.begin(), t.end());

    const auto found = recovery::approx_recover_clique(
        instance.graph, t, 50, params, rng::child_seed(6, "run", trial));
    bool got = false;
    for (const auto& c : found)
      if (c == s) got = true;
    if (got) ++hits;
  }
  CHECK(hits >= 16);
}

TEST_CASE("recover_pipeline recovers most cliques at desk-small scale") {
  const auto instance = graph::gen_planted_cover(800, 0.5, 40, 10, 987654);
  const auto dec = signaling::build_clique_partition_scheme(instance);
  const auto params = desk_params(0.5, 16, 20, 1.0);

  const auto report = recovery::recover_pipeline(instance, dec, params, 55);
  CHECK(report.clusters.size() == dec.alpha.size());
  CHECK(report.fraction_recovered >= 0.8);
  // Everything emitted must be a planted clique: no false positives.
  CHECK(report.candidates.size() == report.verified.size());
  const std::set<std::vector<int>> planted(instance.planted_cliques.begin(),
                                           instance.planted_cliques.end());
  for (const auto& c : report.verified) CHECK(planted.count(c) == 1);
  for (const auto& cl : report.clusters)
    check_cluster_inequalities(cl, params.d, params.rho);

  // Exact reproducibility under the same seed.
  const auto again = recovery::recover_pipeline(instance, dec, params, 55);
  CHECK(again.fraction_recovered == report.fraction_recovered);
  CHECK(again.candidates == report.candidates);
  CHECK(again.verified == report.verified);
}

TEST_CASE("recover_pipeline skips signals below the weight floor") {
  const auto instance = graph::gen_planted_cover(100, 0.5, 12, 1, 31);
  const auto params = desk_params(0.5, 2, 20, 1.0);

  // A hand-built decomposition with one informative signal and one signal
  // far below 1/n^2 = 1e-4: the pipeline must only extract one cluster.
  game::ConvexDecomposition dec;
  dec.prior.assign(100, 0.01);
  dec.alpha = {1.0 - 1e-5, 1e-5};
  dec.posteriors.assign(2, std::vector<double>(100, 0.01));

  const auto report = recovery::recover_pipeline(instance, dec, params, 7);
  CHECK(report.clusters.size() == 1);

  // With every signal under the floor the report comes back empty.
  game::ConvexDecomposition dust;
  dust.prior.assign(100, 0.01);
  dust.alpha = {1e-5, 1e-6};
  dust.posteriors.assign(2, std::vector<double>(100, 0.01));
  const auto empty = recovery::recover_pipeline(instance, dust, params, 7);
  CHECK(empty.clusters.empty());
  CHECK(empty.candidates.empty());
  CHECK(empty.fraction_recovered == 0.0);
}

TEST_CASE("verify_clique") {
  graph::Graph g(4);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(1, 2);
  CHECK(recovery::verify_clique(g, {0, 1, 2}));
  CHECK_FALSE(recovery::verify_clique(g, {0, 1, 3}));
  CHECK(recovery::verify_clique(g, {3}));
  CHECK(recovery::verify_clique(g, {}));
}
