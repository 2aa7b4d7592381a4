#include "signalgame/signaling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "signalgame/kernels.hpp"
#include "signalgame/lp.hpp"

namespace signalgame::signaling {

namespace {

void check_decomposition_matches_prior(const game::ConvexDecomposition& dec,
                                       const std::vector<double>& prior) {
  dec.validate();
  const std::size_t m = prior.size();
  std::vector<double> avg(m, 0.0);
  for (std::size_t s = 0; s < dec.alpha.size(); ++s) {
    if (dec.posteriors[s].size() != m)
      throw std::invalid_argument(
          "scheme evaluation: posterior length differs from prior");
    kernels::axpy(avg.data(), dec.posteriors[s].data(), dec.alpha[s], m);
  }
  for (std::size_t t = 0; t < m; ++t)
    if (std::fabs(avg[t] - prior[t]) > 1e-7)
      throw std::invalid_argument(
          "scheme evaluation: decomposition inconsistent with the prior (state " +
          std::to_string(t) + ")");
}

}  // namespace

SchemeEvaluation evaluate_scheme_security(
    const security::SecurityGame& game, const game::ConvexDecomposition& dec) {
  game.validate();
  check_decomposition_matches_prior(dec, game.effective_prior());
  SchemeEvaluation eval;
  eval.per_signal.reserve(dec.alpha.size());
  for (std::size_t s = 0; s < dec.alpha.size(); ++s) {
    const double u =
        security::solve_security_subgame(game, dec.posteriors[s]).value;
    eval.per_signal.push_back({dec.alpha[s], u});
    eval.total += dec.alpha[s] * u;
  }
  return eval;
}

SchemeEvaluation evaluate_scheme_explicit(const game::BayesianZeroSumGame& g,
                                          const game::ConvexDecomposition& dec) {
  g.validate();
  check_decomposition_matches_prior(dec, g.prior);
  SchemeEvaluation eval;
  eval.per_signal.reserve(dec.alpha.size());
  for (std::size_t s = 0; s < dec.alpha.size(); ++s) {
    const double u =
        lp::solve_matrix_game(game::expected_matrix(g, dec.posteriors[s])).value;
    eval.per_signal.push_back({dec.alpha[s], u});
    eval.total += dec.alpha[s] * u;
  }
  return eval;
}

game::ConvexDecomposition build_clique_partition_scheme(
    const graph::PlantedCoverInstance& instance) {
  if (instance.planted_cliques.empty())
    throw std::invalid_argument(
        "clique partition scheme: instance has no planted cliques");
  const int n = instance.graph.n();
  std::vector<char> covered(static_cast<std::size_t>(n), 0);

  game::ConvexDecomposition dec;
  dec.prior.assign(static_cast<std::size_t>(n), 1.0 / static_cast<double>(n));

  auto push_uniform_signal = [&](const std::vector<int>& support) {
    if (support.empty()) return;
    std::vector<double> x(static_cast<std::size_t>(n), 0.0);
    const double mass = 1.0 / static_cast<double>(support.size());
    for (int v : support) x[static_cast<std::size_t>(v)] = mass;
    dec.alpha.push_back(static_cast<double>(support.size()) /
                        static_cast<double>(n));
    dec.posteriors.push_back(std::move(x));
  };

  for (const std::vector<int>& clique : instance.planted_cliques) {
    std::vector<int> residual;
    for (int v : clique) {
      if (covered[static_cast<std::size_t>(v)]) continue;
      covered[static_cast<std::size_t>(v)] = 1;
      residual.push_back(v);
    }
    push_uniform_signal(residual);
  }
  std::vector<int> leftover;
  for (int v = 0; v < n; ++v)
    if (!covered[static_cast<std::size_t>(v)]) leftover.push_back(v);
  push_uniform_signal(leftover);

  dec.validate();
  return dec;
}

double scheme_utility_lower_bound(const graph::Graph& g,
                                  const game::ConvexDecomposition& dec, int d,
                                  double rho) {
  dec.validate();
  if (d < 1) throw std::invalid_argument("utility bound: need d >= 1");
  if (!(rho >= 0.0))
    throw std::invalid_argument("utility bound: need rho >= 0");
  double total = 0.0;
  for (std::size_t s = 0; s < dec.alpha.size(); ++s) {
    const std::vector<double>& x = dec.posteriors[s];
    std::vector<int> support;
    for (std::size_t v = 0; v < x.size(); ++v)
      if (x[v] > 0.0) support.push_back(static_cast<int>(v));
    if (support.empty())
      throw std::invalid_argument("utility bound: empty posterior support");
    const double uniform = 1.0 / static_cast<double>(support.size());
    for (int v : support)
      if (std::fabs(x[static_cast<std::size_t>(v)] - uniform) > 1e-9 * uniform)
        throw std::invalid_argument(
            "utility bound: posterior is not uniform over its support");
    // An attacker playing the posterior itself earns the support's bidensity
    // in expected edge payoff and loses at most 2*d*rho/|support| to defense
    // (the defender covers at most d nodes, each carrying mass 1/|support|,
    // and each defended node is counted against both players' incidences).
    const double term =
        graph::bidensity(g, support, support) -
        2.0 * static_cast<double>(d) * rho / static_cast<double>(support.size());
    total += dec.alpha[s] * term;
  }
  return total;
}

game::ConvexDecomposition opaque_scheme(const std::vector<double>& prior) {
  game::ConvexDecomposition dec;
  dec.prior = prior;
  dec.alpha = {1.0};
  dec.posteriors = {prior};
  dec.validate();
  return dec;
}

game::ConvexDecomposition full_revelation_scheme(
    const std::vector<double>& prior) {
  game::ConvexDecomposition dec;
  dec.prior = prior;
  for (std::size_t t = 0; t < prior.size(); ++t) {
    if (prior[t] <= 0.0) continue;
    std::vector<double> x(prior.size(), 0.0);
    x[t] = 1.0;
    dec.alpha.push_back(prior[t]);
    dec.posteriors.push_back(std::move(x));
  }
  dec.validate();
  return dec;
}

namespace {

// All length-m nonnegative integer vectors summing to total, in
// lexicographic order; each divided by total to give a grid posterior.
void enumerate_grid(int m, int total, std::vector<int>& current,
                    std::vector<std::vector<double>>& out) {
  if (static_cast<int>(current.size()) == m - 1) {
    int used = 0;
    for (int k : current) used += k;
    std::vector<double> x;
    x.reserve(static_cast<std::size_t>(m));
    for (int k : current)
      x.push_back(static_cast<double>(k) / static_cast<double>(total));
    x.push_back(static_cast<double>(total - used) /
                static_cast<double>(total));
    out.push_back(std::move(x));
    return;
  }
  int used = 0;
  for (int k : current) used += k;
  for (int k = 0; k <= total - used; ++k) {
    current.push_back(k);
    enumerate_grid(m, total, current, out);
    current.pop_back();
  }
}

}  // namespace

EnvelopeResult grid_envelope_oracle(const game::BayesianZeroSumGame& g,
                                    double h) {
  g.validate();
  if (g.num_states > 4)
    throw std::invalid_argument("grid envelope: at most 4 states supported");
  if (!(h > 0.0 && h <= 0.5))
    throw std::invalid_argument("grid envelope: need h in (0, 0.5]");
  const int steps = static_cast<int>(std::lround(1.0 / h));
  const double h_eff = 1.0 / static_cast<double>(steps);

  std::vector<std::vector<double>> grid;
  {
    std::vector<int> scratch;
    enumerate_grid(g.num_states, steps, scratch, grid);
  }
  if (grid.size() > 100000)
    throw std::invalid_argument("grid envelope: grid too large at this h");

  std::vector<double> f(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    f[i] = lp::solve_matrix_game(game::expected_matrix(g, grid[i])).value;

  // Best grid-supported decomposition: maximize sum alpha_g f_g with the
  // weighted grid points averaging to the prior. The M equalities imply
  // sum alpha = 1 (each grid point sums to 1), so no explicit simplex row.
  const std::size_t cols = grid.size();
  const int m = g.num_states;
  std::vector<double> lhs(static_cast<std::size_t>(2 * m) * cols, 0.0);
  std::vector<double> rhs(static_cast<std::size_t>(2 * m), 0.0);
  for (int t = 0; t < m; ++t) {
    double* pos = lhs.data() + static_cast<std::size_t>(t) * cols;
    double* neg = lhs.data() + static_cast<std::size_t>(m + t) * cols;
    for (std::size_t c = 0; c < cols; ++c) {
      pos[c] = grid[c][static_cast<std::size_t>(t)];
      neg[c] = -grid[c][static_cast<std::size_t>(t)];
    }
    rhs[static_cast<std::size_t>(t)] = g.prior[static_cast<std::size_t>(t)];
    rhs[static_cast<std::size_t>(m + t)] =
        -g.prior[static_cast<std::size_t>(t)];
  }
  lp::Solution sol = lp::maximize(lhs, rhs, f);
  if (sol.status != lp::Status::optimal)
    throw std::runtime_error("grid envelope: weight LP did not converge");

  EnvelopeResult out;
  out.value = sol.value;
  double max_abs = 0.0;
  for (const Matrix& a : g.payoffs) max_abs = std::max(max_abs, a.max_abs());
  out.error_bound = 2.0 * max_abs * h_eff;

  game::ConvexDecomposition dec;
  dec.prior = g.prior;
  double total = 0.0;
  for (std::size_t c = 0; c < cols; ++c)
    if (sol.x[c] > 1e-12) total += sol.x[c];
  for (std::size_t c = 0; c < cols; ++c) {
    if (sol.x[c] <= 1e-12) continue;
    dec.alpha.push_back(sol.x[c] / total);
    dec.posteriors.push_back(grid[c]);
  }
  dec.validate();
  out.decomposition = std::move(dec);
  return out;
}

}  // namespace signalgame::signaling
