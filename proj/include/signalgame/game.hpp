#ifndef SIGNALGAME_GAME_HPP
#define SIGNALGAME_GAME_HPP

#include <vector>

#include "signalgame/matrix.hpp"

// Explicit Bayesian zero-sum games and the two interchangeable encodings of a
// symmetric signaling scheme: per-state signal distributions ("phi" rows) and
// convex decompositions of the prior into weighted posteriors.
//
// All types are immutable value types once constructed and all operations are
// pure functions, so everything here is safe to call concurrently.
namespace signalgame::game {

// A finite zero-sum game whose payoff matrix depends on a hidden state drawn
// from a public prior. Entry payoffs[theta](i, j) is the row player's payoff
// when the state is theta and the players pick row i / column j.
struct BayesianZeroSumGame {
  int rows = 0;
  int cols = 0;
  int num_states = 0;
  std::vector<Matrix> payoffs;  // num_states matrices, each rows x cols
  std::vector<double> prior;    // length num_states, sums to 1

  // Throws std::invalid_argument naming the first violated invariant:
  // positive dimensions, matching shapes, finite entries, prior a
  // probability vector within 1e-9.
  void validate() const;
};

// Signal-emission probabilities: phi[theta][sigma] is the probability of
// announcing signal sigma when the state is theta. Each row is a
// probability vector.
struct SignalingScheme {
  int num_states = 0;
  int num_signals = 0;
  std::vector<std::vector<double>> phi;

  void validate() const;
};

// The posterior view of a scheme: signal sigma occurs with probability
// alpha[sigma] and induces posterior posteriors[sigma] over states. The
// weighted posteriors average back to the prior the decomposition was built
// from (kept here so the invariant stays checkable after construction).
struct ConvexDecomposition {
  std::vector<double> alpha;
  std::vector<std::vector<double>> posteriors;
  std::vector<double> prior;

  // Checks alpha and every posterior are probability vectors within 1e-9 and,
  // when `prior` is present, that the weighted posteriors reproduce it within
  // 1e-7 entrywise.
  void validate() const;
};

// Forward map: alpha_sigma = sum_theta prior(theta) * phi(theta, sigma) and
// posterior_sigma(theta) = prior(theta) * phi(theta, sigma) / alpha_sigma.
// Signals with alpha below 1e-12 are dropped (their posterior is undefined
// and they occur with negligible probability).
ConvexDecomposition scheme_to_decomposition(const std::vector<double>& prior,
                                            const SignalingScheme& scheme);

// Inverse map: phi(theta, sigma) = alpha_sigma * posterior_sigma(theta) /
// prior(theta). Requires the decomposition to average to `prior` within 1e-7;
// states with prior(theta) = 0 get a uniform row (any row works — the state
// never occurs).
SignalingScheme decomposition_to_scheme(const std::vector<double>& prior,
                                        const ConvexDecomposition& dec);

// Posterior-expected payoff matrix: sum_theta posterior(theta) * payoffs[theta].
Matrix expected_matrix(const BayesianZeroSumGame& g,
                       const std::vector<double>& posterior);

// Runs scheme `a` with probability `weight` and scheme `b` otherwise. The
// result's signal set is the disjoint union (a's signals first), so each
// phi row is [weight * a_row, (1 - weight) * b_row]. Utilities mix affinely
// because each component signal still induces its original posterior.
SignalingScheme mix_schemes(const SignalingScheme& a, const SignalingScheme& b,
                            double weight);

// Support reduction: returns an equivalent decomposition over at most
// num_states + 1 signals with the same weighted posterior average and the
// same weighted average of `signal_values` (one value per signal, e.g. the
// subgame value at that signal's posterior). Works by repeatedly finding an
// affine dependence among the lifted points (posterior, value) and shifting
// weight along it until some signal's weight hits zero.
ConvexDecomposition reduce_support(const ConvexDecomposition& dec,
                                   const std::vector<double>& signal_values);

}  // namespace signalgame::game

#endif  // SIGNALGAME_GAME_HPP
