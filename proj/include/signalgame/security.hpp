#ifndef SIGNALGAME_SECURITY_HPP
#define SIGNALGAME_SECURITY_HPP

#include <vector>

#include "signalgame/graph.hpp"

// Equilibrium computation for the network security game: the hidden state is
// a vulnerable node theta, the attacker picks a node a, the defender picks a
// set D of at most d nodes, and the attacker earns
//   [theta and a adjacent] - rho * (|D ∩ {theta}| + |D ∩ {a}|),
// i.e. defending a node taxes the attacker once per incidence (twice when
// theta = a is defended). Payoffs therefore live in [-2*rho, 1].
//
// The defender's mixed strategy is summarized by its marginal z in the
// polytope P_d = { z in [0,1]^n : sum z <= d }, which keeps every solver
// polynomial in n even though the pure-strategy space has C(n, d) corners.
// All solvers are pure functions; concurrent calls are safe.
namespace signalgame::security {

struct SecurityGame {
  graph::Graph graph;
  int defense_budget = 1;        // d
  double protection_reward = 1;  // rho
  std::vector<double> prior;     // over nodes; empty means uniform

  // Throws std::invalid_argument unless 1 <= d <= n, rho >= 0 and finite,
  // and the prior (when present) is a probability vector of length n.
  void validate() const;

  // The stored prior, or the uniform vector when none was given.
  std::vector<double> effective_prior() const;
};

// One corner of P_d with its mixing weight: defend exactly `nodes`.
struct DefenderAtom {
  double weight = 0.0;
  std::vector<int> nodes;  // sorted, size <= d
};

struct EquilibriumResult {
  double value = 0.0;
  std::vector<double> attacker_strategy;          // y in the simplex
  std::vector<double> defender_marginal;          // z in P_d
  std::vector<DefenderAtom> defender_decomposition;  // mixes to z
  // Certified distance between the defender-side upper bound and the
  // attacker-side achieved value; the reported value is the achieved one.
  double certified_gap = 0.0;
};

// Attack scores c = A x: c[v] = sum of x[u] over neighbors u of v. This is
// the attacker's expected edge payoff for attacking v when the state is
// distributed as x.
std::vector<double> attack_scores(const graph::Graph& g,
                                  const std::vector<double>& x);

// Bilinear payoff x^T A y - rho * (z.x + z.y) for arbitrary mixed strategies;
// z is not required to be feasible here.
double security_payoff(const graph::Graph& g, double rho,
                       const std::vector<double>& x,
                       const std::vector<double>& y,
                       const std::vector<double>& z);

// Indices of the d largest entries of w = x + y, ties to the smaller index;
// this is the defender's exact best response (their payoff only cares about
// how much of x + y they cover).
std::vector<int> defender_best_response(const std::vector<double>& x,
                                        const std::vector<double>& y, int d);

// Sum of the min(d, n) largest entries of w.
double topd_sum(const std::vector<double>& w, int d);

// Value and strategies of the subgame at posterior x:
//   value = max_{y in simplex} [ c.y - rho * topd_sum(x + y) ],  c = A x.
//
// Solved by a parametric primal/dual pair instead of an explicit LP tableau:
// the primal threshold form g(t) = -rho*d*t - rho*sum_j (x_j - t)_+ +
// (best mass-1 allocation against caps (t - x_j)_+) is concave in t and is
// maximized by golden-section search, which yields a feasible attacker y;
// the defender side minimizes the convex envelope G(v) = v - rho * max{ x.z :
// z >= r(v), z in P_d } with r_j(v) = clamp((c_j - v)/rho, 0, 1), yielding a
// feasible marginal z that caps every attacker reply at G(v). The achieved
// value and the cap certify each other; if they disagree by more than 1e-7
// the call falls back to the explicit LP and, failing that too, throws
// std::runtime_error with both residuals.
//
// The returned strategies satisfy, up to certified_gap + rounding:
//   security_payoff(x, y*, z)  >= value for the returned z, and
//   security_payoff(x, y, z*)  <= value for every y.
EquilibriumResult solve_security_subgame(const SecurityGame& game,
                                         const std::vector<double>& x);

// Reference formulation of the same subgame as two explicit LPs: the
// attacker maximizes c.y - rho*(d*t + sum_i s_i) with t + s_i >= x_i + y_i
// (the epigraph form of the top-d sum), and the defender minimizes
// v - rho*z.x with v >= c_j - rho*z_j over z in P_d, which exposes the
// marginal z directly. Dense-tableau cost grows like n^3; intended for
// n up to ~1500 and for differential testing of the parametric solver.
EquilibriumResult solve_security_subgame_lp(const SecurityGame& game,
                                            const std::vector<double>& x);

struct ExactSmallResult {
  double value = 0.0;
  std::vector<double> attacker_strategy;
  std::vector<DefenderAtom> defender_mixture;  // over explicit size-d sets
};

// Brute-force oracle: enumerates all C(n, d) defender sets of size exactly d
// (smaller sets are dominated), builds the explicit n x C(n,d) matrix game,
// and solves it. Requires C(n, d) <= 1e5; throws otherwise.
ExactSmallResult solve_security_exact_small(const SecurityGame& game,
                                            const std::vector<double>& x);

// Writes z in P_d (entries clamped to [0,1], total clamped to d) as a convex
// combination of at most n+1 indicator vectors of sets of size <= d, via a
// systematic-sampling comb: lay the entries of z end to end on [0, sum z],
// cut at every fractional breakpoint, and for each resulting interval defend
// the set hit by the comb { tau, tau + 1, tau + 2, ... } at the interval's
// midpoint tau. Segments have length <= 1, so no set picks an element twice,
// every set has floor(sum z) or ceil(sum z) <= d elements, and integrating
// the comb over tau reproduces z exactly. Runs in O(n log n).
std::vector<DefenderAtom> decompose_matroid_point(const std::vector<double>& z,
                                                  int d);

}  // namespace signalgame::security

#endif  // SIGNALGAME_SECURITY_HPP
