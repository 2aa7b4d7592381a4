#ifndef SIGNALGAME_RECOVERY_HPP
#define SIGNALGAME_RECOVERY_HPP

#include <cstdint>
#include <vector>

#include "signalgame/game.hpp"
#include "signalgame/graph.hpp"

// Turning near-optimal signaling schemes back into planted cliques: first a
// per-signal trimming step distills each signal into a small candidate
// cluster, then a sample-and-filter step grows each cluster into full
// cliques, and the pipeline scores the results against ground truth.
namespace signalgame::recovery {

struct RecoveryParams {
  double epsilon = 0.1;        // overlap constant, in (0,1)
  double sample_factor = 200;  // c_R: sample about c_R * log2(n) seeds
  int trial_budget = 1;        // independent subsamples per input cluster
  int d = 1;                   // defense budget of the generating game
  double rho = 1.0;            // protection reward of the generating game

  void validate() const;
};

// Per-signal result of the cluster-extraction step, with the quantities the
// correctness inequalities are phrased in.
struct Cluster {
  std::vector<int> nodes;   // sorted support of the cluster vector z
  double weight = 0.0;      // the signal's alpha
  double subgame_value = 0.0;         // equilibrium value at the posterior
  double trimmed_payoff = 0.0;        // xhat^T A yhat
  double cluster_payoff = 0.0;        // xhat^T A z
  double overrepresented_mass = 0.0;  // posterior + attacker mass trimmed away
};

// Zeroes every entry of v strictly above the threshold, in place, and
// returns the total mass removed. This is the "overrepresented vertex"
// trim applied to posteriors and attacker strategies during extraction.
double trim_overrepresented(std::vector<double>& v, double threshold);

// Indices of the m largest scores (ties go to the smaller index), returned
// sorted ascending. m larger than the score vector just returns everything.
std::vector<int> top_m_by_score(const std::vector<double>& score, int m);

// Distills each signal of a scheme into a cluster of floor(rho*d/2) vertices:
// solve the subgame at the signal's posterior x, zero out every entry of x
// and of the equilibrium attacker strategy y that exceeds 2/(rho*d) (the
// "overrepresented" vertices), score every vertex by the trimmed posterior's
// attack scores, and keep the top floor(rho*d/2) scorers (ties to the
// smaller index) with weight 2/(rho*d) each. That placement is an extreme
// point of { z : 0 <= z <= 2/(rho*d), sum z <= floor(rho*d)/2 * 2/(rho*d) }
// maximizing the score, so it dominates the trimmed attacker strategy:
// cluster_payoff >= trimmed_payoff always holds. With use_generic_lp the
// same program is solved by the simplex backend instead (differential path).
//
// Only each posterior is validated (the algorithm never needs the prior).
// Throws std::invalid_argument("cluster size degenerate") when rho*d < 2.
std::vector<Cluster> extract_signal_clusters(const graph::Graph& g,
                                             const game::ConvexDecomposition& dec,
                                             int d, double rho,
                                             bool use_generic_lp = false);

// Sample-and-filter clique recovery from a candidate vertex set t: each
// trial samples min(|t|, ceil(c_R * log2 n)) distinct vertices R from t,
// collects every vertex adjacent to all of R (members of R qualify via
// R minus themselves), prunes the collection to the fixed point where
// every surviving vertex has at least k-1 surviving neighbors, and emits
// the result when it is a clique of size >= k. (Iterating the prune
// matters at small |R|: a single pass leaves stray common neighbors that
// count each other and then fail the clique check.) Returns the
// deduplicated emissions in first-seen order; every returned set passes
// verify_clique by construction. Trials draw from
// child_seed(seed, "trial", i).
std::vector<std::vector<int>> approx_recover_clique(const graph::Graph& g,
                                                    const std::vector<int>& t,
                                                    int k,
                                                    const RecoveryParams& params,
                                                    std::uint64_t seed);

struct RecoveryReport {
  std::vector<Cluster> clusters;              // one per processed signal
  std::vector<std::vector<int>> candidates;   // deduplicated recovered sets
  std::vector<std::vector<int>> verified;     // candidates equal to a planted clique
  double fraction_recovered = 0.0;            // distinct planted cliques found / r
};

// Full pipeline: extract clusters from the scheme (signals below weight
// 1/n^2 are skipped — they carry no information and waste trials), recover
// cliques from each cluster (per-cluster streams child_seed(seed, "cluster",
// index)), then score against the instance's ground truth. The truth is
// used only for scoring; all recovery steps see the public graph alone.
RecoveryReport recover_pipeline(const graph::PlantedCoverInstance& instance,
                                const game::ConvexDecomposition& dec,
                                const RecoveryParams& params,
                                std::uint64_t seed);

// True iff s induces a complete subgraph; vacuously true for |s| <= 1.
bool verify_clique(const graph::Graph& g, const std::vector<int>& s);

}  // namespace signalgame::recovery

#endif  // SIGNALGAME_RECOVERY_HPP
