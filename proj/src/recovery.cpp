#include "signalgame/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "signalgame/kernels.hpp"
#include "signalgame/lp.hpp"
#include "signalgame/rng.hpp"
#include "signalgame/security.hpp"

namespace signalgame::recovery {

void RecoveryParams::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("recovery params: epsilon must be in (0,1)");
  if (!(sample_factor > 0.0))
    throw std::invalid_argument("recovery params: sample factor must be > 0");
  if (trial_budget < 1)
    throw std::invalid_argument("recovery params: need at least one trial");
  if (d < 1) throw std::invalid_argument("recovery params: need d >= 1");
  if (!(rho >= 0.0))
    throw std::invalid_argument("recovery params: need rho >= 0");
}

namespace {

void check_posterior(const std::vector<double>& x, int n) {
  if (static_cast<int>(x.size()) != n)
    throw std::invalid_argument("cluster extraction: posterior length != n");
  double total = 0.0;
  for (double e : x) {
    if (!std::isfinite(e) || e < -1e-12)
      throw std::invalid_argument("cluster extraction: bad posterior entry");
    total += e;
  }
  if (std::fabs(total - 1.0) > 1e-9)
    throw std::invalid_argument("cluster extraction: posterior not normalized");
}

}  // namespace

double trim_overrepresented(std::vector<double>& v, double threshold) {
  double removed = 0.0;
  for (double& e : v)
    if (e > threshold) {
      removed += e;
      e = 0.0;
    }
  return removed;
}

std::vector<int> top_m_by_score(const std::vector<double>& score, int m) {
  std::vector<int> idx(score.size());
  std::iota(idx.begin(), idx.end(), 0);
  const int take = std::min<int>(m, static_cast<int>(idx.size()));
  std::partial_sort(idx.begin(), idx.begin() + take, idx.end(),
                    [&](int a, int b) {
                      const double sa = score[static_cast<std::size_t>(a)];
                      const double sb = score[static_cast<std::size_t>(b)];
                      if (sa != sb) return sa > sb;
                      return a < b;
                    });
  idx.resize(static_cast<std::size_t>(take));
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::vector<Cluster> extract_signal_clusters(const graph::Graph& g,
                                             const game::ConvexDecomposition& dec,
                                             int d, double rho,
                                             bool use_generic_lp) {
  if (d < 1) throw std::invalid_argument("cluster extraction: need d >= 1");
  if (!(rho >= 0.0))
    throw std::invalid_argument("cluster extraction: need rho >= 0");
  const int m = static_cast<int>(std::floor(rho * static_cast<double>(d) / 2.0));
  if (m < 1) throw std::invalid_argument("cluster size degenerate");
  const double threshold = 2.0 / (rho * static_cast<double>(d));
  const int n = g.n();
  if (dec.alpha.size() != dec.posteriors.size())
    throw std::invalid_argument("cluster extraction: malformed decomposition");

  security::SecurityGame game;
  game.graph = g;
  game.defense_budget = d;
  game.protection_reward = rho;

  std::vector<Cluster> out;
  out.reserve(dec.alpha.size());
  for (std::size_t s = 0; s < dec.alpha.size(); ++s) {
    const std::vector<double>& x = dec.posteriors[s];
    check_posterior(x, n);
    security::EquilibriumResult eq = security::solve_security_subgame(game, x);

    std::vector<double> xhat = x;
    std::vector<double> yhat = eq.attacker_strategy;
    double removed = trim_overrepresented(xhat, threshold);
    removed += trim_overrepresented(yhat, threshold);

    const std::vector<double> score = security::attack_scores(g, xhat);

    Cluster cl;
    cl.weight = dec.alpha[s];
    cl.subgame_value = eq.value;
    cl.overrepresented_mass = removed;
    cl.trimmed_payoff = kernels::dot(score.data(), yhat.data(),
                                     static_cast<std::size_t>(n));
    if (use_generic_lp) {
      // Same program, generic backend: maximize score.z over the box
      // z <= threshold with total mass m * threshold.
      std::vector<double> lhs(static_cast<std::size_t>(n + 1) * n, 0.0);
      std::vector<double> rhs;
      for (int i = 0; i < n; ++i) {
        lhs[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(i)] = 1.0;
        rhs.push_back(threshold);
      }
      for (int i = 0; i < n; ++i)
        lhs[static_cast<std::size_t>(n) * n + static_cast<std::size_t>(i)] = 1.0;
      rhs.push_back(static_cast<double>(m) * threshold);
      lp::Solution sol = lp::maximize(lhs, rhs, score);
      if (sol.status != lp::Status::optimal)
        throw std::runtime_error("cluster extraction: LP did not converge");
      cl.cluster_payoff = sol.value;
      for (int i = 0; i < n; ++i)
        if (sol.x[static_cast<std::size_t>(i)] > threshold / 2.0)
          cl.nodes.push_back(i);
    } else {
      cl.nodes = top_m_by_score(score, m);
      double covered = 0.0;
      for (int v : cl.nodes) covered += score[static_cast<std::size_t>(v)];
      cl.cluster_payoff = threshold * covered;
    }
    out.push_back(std::move(cl));
  }
  return out;
}

std::vector<std::vector<int>> approx_recover_clique(const graph::Graph& g,
                                                    const std::vector<int>& t,
                                                    int k,
                                                    const RecoveryParams& params,
                                                    std::uint64_t seed) {
  params.validate();
  if (t.empty())
    throw std::invalid_argument("clique recovery: empty input cluster");
  if (k < 2) throw std::invalid_argument("clique recovery: need k >= 2");
  const int n = g.n();
  graph::vertex_mask(n, t);  // validates range and uniqueness
  const int rsize = std::min<int>(
      static_cast<int>(t.size()),
      std::max(1, static_cast<int>(std::ceil(
                      params.sample_factor *
                      std::log2(std::max(2, n))))));
  const std::size_t words = g.row_words();

  std::vector<std::vector<int>> out;
  std::set<std::vector<int>> seen;
  for (int trial = 0; trial < params.trial_budget; ++trial) {
    rng::Xoshiro256pp gen(rng::child_seed(seed, "trial", trial));
    const std::vector<int> positions = rng::sample_without_replacement(
        static_cast<int>(t.size()), rsize, gen);
    std::vector<int> r;
    r.reserve(positions.size());
    for (int p : positions) r.push_back(t[static_cast<std::size_t>(p)]);

    // Vertices adjacent to every sampled vertex. A row never contains its
    // own bit, so members of R are handled separately below.
    std::vector<std::uint64_t> mask(words, ~0ULL);
    if (n % 64 != 0) mask.back() = (1ULL << (n % 64)) - 1;
    for (int u : r)
      for (std::size_t w = 0; w < words; ++w) mask[w] &= g.row(u)[w];

    std::vector<int> stilde;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t bits = mask[w];
      while (bits) {
        stilde.push_back(static_cast<int>(w * 64) + __builtin_ctzll(bits));
        bits &= bits - 1;
      }
    }
    for (int v : r) {
      bool qualifies = true;
      for (int u : r)
        if (u != v && !g.edge(u, v)) {
          qualifies = false;
          break;
        }
      if (qualifies) stilde.push_back(v);
    }
    std::sort(stilde.begin(), stilde.end());
    if (stilde.empty()) continue;

    // Core filter: prune to the subset where every vertex keeps at least
    // k-1 neighbors, iterating to a fixed point. One pass is not enough at
    // small |R|: stray common neighbors prop each other up, and any one of
    // them surviving spoils the clique check below.
    std::vector<int> shat = std::move(stilde);
    for (;;) {
      const std::vector<std::uint64_t> smask = graph::vertex_mask(n, shat);
      std::vector<int> next;
      for (int v : shat)
        if (kernels::and_popcount(g.row(v), smask.data(), words) >=
            static_cast<std::uint64_t>(k - 1))
          next.push_back(v);
      const bool stable = next.size() == shat.size();
      shat = std::move(next);
      if (stable || shat.empty()) break;
    }

    if (static_cast<int>(shat.size()) < k) continue;
    if (!graph::is_clique(g, shat)) continue;
    if (seen.insert(shat).second) out.push_back(std::move(shat));
  }
  return out;
}

RecoveryReport recover_pipeline(const graph::PlantedCoverInstance& instance,
                                const game::ConvexDecomposition& dec,
                                const RecoveryParams& params,
                                std::uint64_t seed) {
  params.validate();
  const int n = instance.graph.n();
  const double weight_floor =
      1.0 / (static_cast<double>(n) * static_cast<double>(n));

  game::ConvexDecomposition informative;
  informative.prior = dec.prior;
  for (std::size_t s = 0; s < dec.alpha.size(); ++s) {
    if (dec.alpha[s] < weight_floor) continue;
    informative.alpha.push_back(dec.alpha[s]);
    informative.posteriors.push_back(dec.posteriors[s]);
  }

  RecoveryReport report;
  if (informative.alpha.empty()) return report;
  report.clusters = extract_signal_clusters(instance.graph, informative,
                                            params.d, params.rho);

  const int k = instance.params.k;
  std::set<std::vector<int>> seen;
  for (std::size_t i = 0; i < report.clusters.size(); ++i) {
    const std::vector<std::vector<int>> found = approx_recover_clique(
        instance.graph, report.clusters[i].nodes, k, params,
        rng::child_seed(seed, "cluster", static_cast<std::uint64_t>(i)));
    for (const std::vector<int>& s : found)
      if (seen.insert(s).second) report.candidates.push_back(s);
  }

  std::set<std::vector<int>> planted(instance.planted_cliques.begin(),
                                     instance.planted_cliques.end());
  std::set<std::vector<int>> matched;
  for (const std::vector<int>& s : report.candidates)
    if (planted.count(s)) {
      report.verified.push_back(s);
      matched.insert(s);
    }
  const std::size_t r = instance.planted_cliques.size();
  report.fraction_recovered =
      r == 0 ? 0.0
             : static_cast<double>(matched.size()) / static_cast<double>(r);
  return report;
}

bool verify_clique(const graph::Graph& g, const std::vector<int>& s) {
  return graph::is_clique(g, s);
}

}  // namespace signalgame::recovery
