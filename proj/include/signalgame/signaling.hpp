#ifndef SIGNALGAME_SIGNALING_HPP
#define SIGNALGAME_SIGNALING_HPP

#include <vector>

#include "signalgame/game.hpp"
#include "signalgame/graph.hpp"
#include "signalgame/security.hpp"

// Evaluating signaling schemes on security games, the clique-partition
// scheme and its analytic utility bound, and a grid oracle that computes
// near-optimal signaling for small explicit games by brute force over
// grid-supported posterior decompositions.
namespace signalgame::signaling {

struct SignalValue {
  double weight = 0.0;  // alpha_sigma
  double value = 0.0;   // subgame value at this signal's posterior
};

struct SchemeEvaluation {
  std::vector<SignalValue> per_signal;
  double total = 0.0;  // sum of weight * value over signals
};

// Expected attacker utility of a scheme: solves the subgame at every
// posterior and takes the alpha-weighted sum (accumulated in signal order).
// The decomposition must average to the game's prior within 1e-7.
SchemeEvaluation evaluate_scheme_security(const security::SecurityGame& game,
                                          const game::ConvexDecomposition& dec);

// Same aggregation for an explicit Bayesian game, using the matrix-game
// solver on each posterior's expected payoff matrix.
SchemeEvaluation evaluate_scheme_explicit(const game::BayesianZeroSumGame& g,
                                          const game::ConvexDecomposition& dec);

// The partition scheme over a planted cover: signal i announces membership
// in the residual set S_i minus all earlier cliques (following planted list
// order), with one final signal for vertices no clique covers. Weights are
// |set|/n, posteriors uniform on the set, empty sets dropped. Requires at
// least one planted clique; the instance's state prior is uniform over V.
game::ConvexDecomposition build_clique_partition_scheme(
    const graph::PlantedCoverInstance& instance);

// Closed-form lower bound on the scheme's attacker utility: an attacker who
// mirrors the (uniform) posterior earns at least
//   sum_i alpha_i * (bidensity(supp_i, supp_i) - 2*d*rho / |supp_i|).
// Only defined for decompositions whose posteriors are uniform over their
// supports (the clique-partition shape); throws otherwise.
double scheme_utility_lower_bound(const graph::Graph& g,
                                  const game::ConvexDecomposition& dec, int d,
                                  double rho);

// Single-signal scheme: the posterior equals the prior.
game::ConvexDecomposition opaque_scheme(const std::vector<double>& prior);

// One signal per state with positive prior mass; posteriors are point masses.
game::ConvexDecomposition full_revelation_scheme(
    const std::vector<double>& prior);

struct EnvelopeResult {
  double value = 0.0;        // best grid-supported decomposition value
  double error_bound = 0.0;  // L*h with L = 2 * max_theta ||A^theta||_inf
  game::ConvexDecomposition decomposition;
};

// Near-optimal signaling value for an explicit game by brute force: evaluate
// f(x) = value of the expected matrix game at every posterior x on the
// simplex grid of spacing h, then pick the best convex combination of grid
// posteriors averaging to the prior (an LP over the grid weights). The true
// optimum lies within L*h of the returned value because f is L-Lipschitz in
// total variation. Requires the grid to stay small: num_states <= 4 and
// h in (0, 0.5].
EnvelopeResult grid_envelope_oracle(const game::BayesianZeroSumGame& g,
                                    double h);

}  // namespace signalgame::signaling

#endif  // SIGNALGAME_SIGNALING_HPP
