#include "signalgame/security.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "signalgame/kernels.hpp"
#include "signalgame/lp.hpp"
#include "signalgame/matrix.hpp"

namespace signalgame::security {

namespace {

constexpr double kCertTol = 1e-7;
constexpr double kGolden = 0.6180339887498949;  // (sqrt(5) - 1) / 2

void check_node_distribution(const char* what, const std::vector<double>& v,
                             int n) {
  if (static_cast<int>(v.size()) != n)
    throw std::invalid_argument(std::string(what) +
                                ": length differs from node count");
  double total = 0.0;
  for (double e : v) {
    if (!std::isfinite(e) || e < -1e-12)
      throw std::invalid_argument(std::string(what) +
                                  ": entries must be nonnegative and finite");
    total += e;
  }
  if (std::fabs(total - 1.0) > 1e-9)
    throw std::invalid_argument(std::string(what) + ": sums to " +
                                std::to_string(total) + ", expected 1");
}

}  // namespace

void SecurityGame::validate() const {
  const int n = graph.n();
  if (n < 1) throw std::invalid_argument("security game: empty graph");
  if (defense_budget < 1 || defense_budget > n)
    throw std::invalid_argument("security game: need 1 <= d <= n");
  if (!std::isfinite(protection_reward) || protection_reward < 0.0)
    throw std::invalid_argument(
        "security game: protection reward must be nonnegative");
  if (!prior.empty()) check_node_distribution("security game prior", prior, n);
}

std::vector<double> SecurityGame::effective_prior() const {
  if (!prior.empty()) return prior;
  return std::vector<double>(static_cast<std::size_t>(graph.n()),
                             1.0 / static_cast<double>(graph.n()));
}

std::vector<double> attack_scores(const graph::Graph& g,
                                  const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != g.n())
    throw std::invalid_argument("attack_scores: length differs from n");
  std::vector<double> c(x.size(), 0.0);
  for (int u = 0; u < g.n(); ++u)
    if (x[static_cast<std::size_t>(u)] != 0.0)
      kernels::add_masked(c.data(), g.row(u), x[static_cast<std::size_t>(u)],
                          static_cast<std::size_t>(g.n()));
  return c;
}

double security_payoff(const graph::Graph& g, double rho,
                       const std::vector<double>& x,
                       const std::vector<double>& y,
                       const std::vector<double>& z) {
  const std::size_t n = static_cast<std::size_t>(g.n());
  if (x.size() != n || y.size() != n || z.size() != n)
    throw std::invalid_argument("security_payoff: length differs from n");
  const std::vector<double> c = attack_scores(g, x);
  return kernels::dot(c.data(), y.data(), n) -
         rho * (kernels::dot(z.data(), x.data(), n) +
                kernels::dot(z.data(), y.data(), n));
}

std::vector<int> defender_best_response(const std::vector<double>& x,
                                        const std::vector<double>& y, int d) {
  if (x.size() != y.size())
    throw std::invalid_argument("defender_best_response: length mismatch");
  const int n = static_cast<int>(x.size());
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<double> w(x.size());
  for (int i = 0; i < n; ++i)
    w[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] +
                                     y[static_cast<std::size_t>(i)];
  const int take = std::min(d, n);
  std::partial_sort(idx.begin(), idx.begin() + take, idx.end(),
                    [&](int a, int b) {
                      const double wa = w[static_cast<std::size_t>(a)];
                      const double wb = w[static_cast<std::size_t>(b)];
                      if (wa != wb) return wa > wb;
                      return a < b;
                    });
  idx.resize(static_cast<std::size_t>(take));
  std::sort(idx.begin(), idx.end());
  return idx;
}

double topd_sum(const std::vector<double>& w, int d) {
  const int take = std::min<int>(d, static_cast<int>(w.size()));
  if (take <= 0) return 0.0;
  std::vector<double> tmp = w;
  std::nth_element(tmp.begin(), tmp.begin() + (take - 1), tmp.end(),
                   std::greater<double>());
  double total = 0.0;
  for (int i = 0; i < take; ++i) total += tmp[static_cast<std::size_t>(i)];
  return total;
}

namespace {

// Shared per-solve state for the parametric subgame solver.
struct SubgameContext {
  int n;
  int d;
  double rho;
  const std::vector<double>& x;
  const std::vector<double>& c;  // attack scores A x
  double c_max;
  int argmax_c;                       // smallest index attaining c_max
  std::vector<int> by_score_desc;     // node order, c desc then index asc
  std::vector<int> by_mass_desc;      // node order, x desc then index asc
};

// Attacker side. For a fixed threshold t the best y in the simplex solves a
// water-filling problem: each node j offers marginal rate c_j until the sum
// x_j + y_j reaches t (cap (t - x_j)_+) and rate c_j - rho beyond, so mass
// goes to caps in score order and any remainder to the best node at the
// discounted tail rate. Returns
//   g(t) = -rho*d*t - rho*sum_j (x_j - t)_+ + (allocation payoff),
// a concave piecewise-linear function of t whose maximum is the subgame
// value. When y_out is given the allocation itself is recorded.
double primal_threshold_value(const SubgameContext& ctx, double t,
                              std::vector<double>* y_out) {
  double base = -ctx.rho * static_cast<double>(ctx.d) * t;
  for (int j = 0; j < ctx.n; ++j) {
    const double over = ctx.x[static_cast<std::size_t>(j)] - t;
    if (over > 0.0) base -= ctx.rho * over;
  }
  const double tail_rate = ctx.c_max - ctx.rho;
  double remaining = 1.0;
  double gain = 0.0;
  for (int j : ctx.by_score_desc) {
    const double rate = ctx.c[static_cast<std::size_t>(j)];
    if (rate <= tail_rate || remaining <= 0.0) break;
    const double cap = t - ctx.x[static_cast<std::size_t>(j)];
    if (cap <= 0.0) continue;
    const double take = std::min(cap, remaining);
    gain += rate * take;
    remaining -= take;
    if (y_out) (*y_out)[static_cast<std::size_t>(j)] += take;
  }
  if (remaining > 0.0) {
    gain += tail_rate * remaining;
    if (y_out) (*y_out)[static_cast<std::size_t>(ctx.argmax_c)] += remaining;
  }
  return base + gain;
}

// Defender side. A marginal z is a uniform cap on the attacker as soon as
// c_j - rho*z_j <= v for all j, i.e. z_j >= r_j(v) = clamp((c_j - v)/rho).
// Total demand of those floors as a function of v.
double floor_demand(const SubgameContext& ctx, double v) {
  double total = 0.0;
  for (int j = 0; j < ctx.n; ++j) {
    const double r = (ctx.c[static_cast<std::size_t>(j)] - v) / ctx.rho;
    total += std::clamp(r, 0.0, 1.0);
  }
  return total;
}

// Best-covering feasible z for the cap v: start at the floors r(v) and spend
// the leftover budget on the heaviest posterior entries. Returns x.z; the
// certified upper bound on the subgame value is then G(v) = v - rho * (x.z).
double dual_cover_value(const SubgameContext& ctx, double v,
                        std::vector<double>* z_out) {
  double covered = 0.0;
  double spent = 0.0;
  std::vector<double> floors(static_cast<std::size_t>(ctx.n));
  for (int j = 0; j < ctx.n; ++j) {
    const double r =
        std::clamp((ctx.c[static_cast<std::size_t>(j)] - v) / ctx.rho, 0.0, 1.0);
    floors[static_cast<std::size_t>(j)] = r;
    covered += ctx.x[static_cast<std::size_t>(j)] * r;
    spent += r;
  }
  double budget = static_cast<double>(ctx.d) - spent;
  if (budget < 0.0) budget = 0.0;  // floors may overshoot by rounding only
  for (int j : ctx.by_mass_desc) {
    if (budget <= 0.0) break;
    const double room = 1.0 - floors[static_cast<std::size_t>(j)];
    if (room <= 0.0) continue;
    const double take = std::min(room, budget);
    floors[static_cast<std::size_t>(j)] += take;
    covered += ctx.x[static_cast<std::size_t>(j)] * take;
    budget -= take;
  }
  if (z_out) *z_out = std::move(floors);
  return covered;
}

EquilibriumResult assemble_result(const SubgameContext& ctx, double value,
                                  std::vector<double> y, std::vector<double> z,
                                  double gap) {
  // Snap the marginal into P_d exactly; the adjustments are rounding-sized.
  double ztotal = 0.0;
  for (double& e : z) {
    e = std::clamp(e, 0.0, 1.0);
    ztotal += e;
  }
  if (ztotal > static_cast<double>(ctx.d))
    for (double& e : z) e *= static_cast<double>(ctx.d) / ztotal;

  EquilibriumResult out;
  out.value = value;
  out.attacker_strategy = std::move(y);
  out.defender_marginal = z;
  out.defender_decomposition = decompose_matroid_point(z, ctx.d);
  out.certified_gap = gap;
  return out;
}

}  // namespace

EquilibriumResult solve_security_subgame(const SecurityGame& game,
                                         const std::vector<double>& x) {
  game.validate();
  const int n = game.graph.n();
  check_node_distribution("posterior", x, n);
  const int d = game.defense_budget;
  const double rho = game.protection_reward;
  const std::vector<double> c = attack_scores(game.graph, x);

  SubgameContext ctx{n, d, rho, x, c, 0.0, 0, {}, {}};
  ctx.c_max = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j)
    if (c[static_cast<std::size_t>(j)] > ctx.c_max) {
      ctx.c_max = c[static_cast<std::size_t>(j)];
      ctx.argmax_c = j;
    }

  if (rho == 0.0) {
    // Defense is free to ignore: the attacker just plays the best score.
    std::vector<double> y(static_cast<std::size_t>(n), 0.0);
    y[static_cast<std::size_t>(ctx.argmax_c)] = 1.0;
    return assemble_result(ctx, ctx.c_max, std::move(y),
                           std::vector<double>(static_cast<std::size_t>(n), 0.0),
                           0.0);
  }

  ctx.by_score_desc.resize(static_cast<std::size_t>(n));
  std::iota(ctx.by_score_desc.begin(), ctx.by_score_desc.end(), 0);
  std::sort(ctx.by_score_desc.begin(), ctx.by_score_desc.end(),
            [&](int a, int b) {
              const double ca = c[static_cast<std::size_t>(a)];
              const double cb = c[static_cast<std::size_t>(b)];
              if (ca != cb) return ca > cb;
              return a < b;
            });
  ctx.by_mass_desc.resize(static_cast<std::size_t>(n));
  std::iota(ctx.by_mass_desc.begin(), ctx.by_mass_desc.end(), 0);
  std::sort(ctx.by_mass_desc.begin(), ctx.by_mass_desc.end(),
            [&](int a, int b) {
              const double xa = x[static_cast<std::size_t>(a)];
              const double xb = x[static_cast<std::size_t>(b)];
              if (xa != xb) return xa > xb;
              return a < b;
            });

  // Attacker: maximize the concave g(t). The optimal threshold is the d-th
  // largest entry of x + y*, which lives in [0, max x + 1].
  double max_x = 0.0;
  for (double e : x) max_x = std::max(max_x, e);
  {
    double lo = 0.0, hi = max_x + 1.0;
    double t1 = hi - kGolden * (hi - lo), t2 = lo + kGolden * (hi - lo);
    double f1 = primal_threshold_value(ctx, t1, nullptr);
    double f2 = primal_threshold_value(ctx, t2, nullptr);
    for (int it = 0; it < 220 && hi - lo > 0.0; ++it) {
      if (f1 >= f2) {
        hi = t2;
        t2 = t1;
        f2 = f1;
        t1 = hi - kGolden * (hi - lo);
        f1 = primal_threshold_value(ctx, t1, nullptr);
      } else {
        lo = t1;
        t1 = t2;
        f1 = f2;
        t2 = lo + kGolden * (hi - lo);
        f2 = primal_threshold_value(ctx, t2, nullptr);
      }
    }
    const double t_hat = 0.5 * (lo + hi);
    std::vector<double> y(static_cast<std::size_t>(n), 0.0);
    primal_threshold_value(ctx, t_hat, &y);

    // Exact value of the constructed strategy (not the threshold relaxation):
    // this is the certified lower bound.
    std::vector<double> w(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
      w[static_cast<std::size_t>(j)] = x[static_cast<std::size_t>(j)] +
                                       y[static_cast<std::size_t>(j)];
    const double primal_value =
        kernels::dot(c.data(), y.data(), static_cast<std::size_t>(n)) -
        rho * topd_sum(w, d);

    // Defender: minimize the convex cap G(v) over feasible v. Feasibility
    // needs v >= c_max - rho (floors <= 1) and total floor demand <= d.
    double v_lo = ctx.c_max - rho;
    const double v_hi = ctx.c_max;
    if (floor_demand(ctx, v_lo) > static_cast<double>(d)) {
      double bad = v_lo, good = v_hi;  // demand is decreasing in v
      for (int it = 0; it < 120; ++it) {
        const double mid = 0.5 * (bad + good);
        if (floor_demand(ctx, mid) <= static_cast<double>(d))
          good = mid;
        else
          bad = mid;
      }
      v_lo = good;
    }
    double lo_v = v_lo, hi_v = v_hi;
    double v1 = hi_v - kGolden * (hi_v - lo_v), v2 = lo_v + kGolden * (hi_v - lo_v);
    double g1 = v1 - rho * dual_cover_value(ctx, v1, nullptr);
    double g2 = v2 - rho * dual_cover_value(ctx, v2, nullptr);
    for (int it = 0; it < 220 && hi_v - lo_v > 0.0; ++it) {
      if (g1 <= g2) {
        hi_v = v2;
        v2 = v1;
        g2 = g1;
        v1 = hi_v - kGolden * (hi_v - lo_v);
        g1 = v1 - rho * dual_cover_value(ctx, v1, nullptr);
      } else {
        lo_v = v1;
        v1 = v2;
        g1 = g2;
        v2 = lo_v + kGolden * (hi_v - lo_v);
        g2 = v2 - rho * dual_cover_value(ctx, v2, nullptr);
      }
    }
    const double v_hat = std::clamp(0.5 * (lo_v + hi_v), v_lo, v_hi);
    std::vector<double> z;
    const double dual_value = v_hat - rho * dual_cover_value(ctx, v_hat, &z);

    const double gap = std::max(0.0, dual_value - primal_value);
    if (gap <= kCertTol * std::max(1.0, std::fabs(primal_value)))
      return assemble_result(ctx, primal_value, std::move(y), std::move(z),
                             gap);

    if (n <= 4000) return solve_security_subgame_lp(game, x);
    throw std::runtime_error(
        "subgame solver: certificates disagree (achieved " +
        std::to_string(primal_value) + ", cap " + std::to_string(dual_value) +
        ") and the instance is too large for the LP fallback");
  }
}

EquilibriumResult solve_security_subgame_lp(const SecurityGame& game,
                                            const std::vector<double>& x) {
  game.validate();
  const int n = game.graph.n();
  check_node_distribution("posterior", x, n);
  const int d = game.defense_budget;
  const double rho = game.protection_reward;
  const std::vector<double> c = attack_scores(game.graph, x);

  // Attacker LP over (y, t+, t-, s): maximize c.y - rho*(d*t + sum s) with
  // y_i - t + s'... concretely  y_i - t+ + t- - s_i <= -x_i  per node, plus
  // the simplex equality as an inequality pair.
  const int av = 2 * n + 2;  // y(n), t+, t-, s(n)
  std::vector<double> albs;
  std::vector<double> arhs;
  std::vector<double> aobj(static_cast<std::size_t>(av), 0.0);
  albs.assign(static_cast<std::size_t>(n + 2) * av, 0.0);
  for (int i = 0; i < n; ++i) {
    double* row = albs.data() + static_cast<std::size_t>(i) * av;
    row[i] = 1.0;
    row[n] = -1.0;
    row[n + 1] = 1.0;
    row[n + 2 + i] = -1.0;
    arhs.push_back(-x[static_cast<std::size_t>(i)]);
  }
  {
    double* row = albs.data() + static_cast<std::size_t>(n) * av;
    for (int i = 0; i < n; ++i) row[i] = 1.0;
    arhs.push_back(1.0);
    row = albs.data() + static_cast<std::size_t>(n + 1) * av;
    for (int i = 0; i < n; ++i) row[i] = -1.0;
    arhs.push_back(-1.0);
  }
  for (int i = 0; i < n; ++i) {
    aobj[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)];
    aobj[static_cast<std::size_t>(n + 2 + i)] = -rho;
  }
  aobj[static_cast<std::size_t>(n)] = -rho * static_cast<double>(d);
  aobj[static_cast<std::size_t>(n + 1)] = rho * static_cast<double>(d);
  lp::Solution att = lp::maximize(albs, arhs, aobj);
  if (att.status != lp::Status::optimal)
    throw std::runtime_error("subgame LP: attacker program did not converge");

  // Defender LP over (z, v+, v-): minimize v - rho*x.z subject to
  // c_j <= v + rho*z_j, z in P_d — solved as a maximization of the negation,
  // which hands back the marginal z directly.
  const int dv = n + 2;
  std::vector<double> dlhs(static_cast<std::size_t>(2 * n + 1) * dv, 0.0);
  std::vector<double> drhs;
  std::vector<double> dobj(static_cast<std::size_t>(dv), 0.0);
  for (int j = 0; j < n; ++j) {
    double* row = dlhs.data() + static_cast<std::size_t>(j) * dv;
    row[j] = -rho;
    row[n] = -1.0;
    row[n + 1] = 1.0;
    drhs.push_back(-c[static_cast<std::size_t>(j)]);
  }
  for (int j = 0; j < n; ++j) {
    double* row = dlhs.data() + static_cast<std::size_t>(n + j) * dv;
    row[j] = 1.0;
    drhs.push_back(1.0);
  }
  {
    double* row = dlhs.data() + static_cast<std::size_t>(2 * n) * dv;
    for (int j = 0; j < n; ++j) row[j] = 1.0;
    drhs.push_back(static_cast<double>(d));
  }
  for (int j = 0; j < n; ++j)
    dobj[static_cast<std::size_t>(j)] = rho * x[static_cast<std::size_t>(j)];
  dobj[static_cast<std::size_t>(n)] = -1.0;
  dobj[static_cast<std::size_t>(n + 1)] = 1.0;
  lp::Solution def = lp::maximize(dlhs, drhs, dobj);
  if (def.status != lp::Status::optimal)
    throw std::runtime_error("subgame LP: defender program did not converge");

  const double attacker_value = att.value;
  const double defender_value = -def.value;
  const double gap = std::fabs(attacker_value - defender_value);
  if (gap > 1e-6)
    throw std::runtime_error("subgame LP: duality gap " + std::to_string(gap) +
                             " (attacker " + std::to_string(attacker_value) +
                             ", defender " + std::to_string(defender_value) +
                             ")");

  std::vector<double> y(att.x.begin(), att.x.begin() + n);
  double ytotal = 0.0;
  for (double& e : y) {
    if (e < 0.0) e = 0.0;
    ytotal += e;
  }
  for (double& e : y) e /= ytotal;
  std::vector<double> z(def.x.begin(), def.x.begin() + n);

  SubgameContext ctx{n, d, rho, x, c, 0.0, 0, {}, {}};
  return assemble_result(ctx, attacker_value, std::move(y), std::move(z), gap);
}

namespace {

std::uint64_t binomial_capped(int n, int d, std::uint64_t cap) {
  __uint128_t value = 1;
  for (int i = 1; i <= d; ++i) {
    value = value * static_cast<unsigned>(n - d + i) / static_cast<unsigned>(i);
    if (value > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(value);
}

}  // namespace

ExactSmallResult solve_security_exact_small(const SecurityGame& game,
                                            const std::vector<double>& x) {
  game.validate();
  const int n = game.graph.n();
  check_node_distribution("posterior", x, n);
  const int d = game.defense_budget;
  const double rho = game.protection_reward;
  constexpr std::uint64_t kMaxSets = 100000;
  const std::uint64_t nsets = binomial_capped(n, d, kMaxSets);
  if (nsets > kMaxSets)
    throw std::invalid_argument(
        "solve_security_exact_small: C(n,d) exceeds 1e5");

  const std::vector<double> c = attack_scores(game.graph, x);

  // Attacker rows, one column per defender set of size exactly d (smaller
  // sets are dominated: defending more never helps the attacker). Entry:
  // E_theta[edge(theta, a)] - rho * (x-mass inside D + [a in D]).
  Matrix payoff(n, static_cast<int>(nsets));
  std::vector<std::vector<int>> sets;
  sets.reserve(nsets);
  std::vector<int> comb(static_cast<std::size_t>(d));
  std::iota(comb.begin(), comb.end(), 0);
  for (;;) {
    const int col = static_cast<int>(sets.size());
    double dmass = 0.0;
    for (int v : comb) dmass += x[static_cast<std::size_t>(v)];
    for (int a = 0; a < n; ++a)
      payoff.at(a, col) = c[static_cast<std::size_t>(a)] - rho * dmass;
    for (int v : comb) payoff.at(v, col) -= rho;
    sets.push_back(comb);
    // Lexicographically next d-combination of {0..n-1}.
    int i = d - 1;
    while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - d + i) --i;
    if (i < 0) break;
    ++comb[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < d; ++j)
      comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
  }

  lp::MatrixGameSolution sol = lp::solve_matrix_game(payoff);
  ExactSmallResult out;
  out.value = sol.value;
  out.attacker_strategy = std::move(sol.row_strategy);
  for (std::size_t j = 0; j < sets.size(); ++j)
    if (sol.col_strategy[j] > 1e-12)
      out.defender_mixture.push_back({sol.col_strategy[j], sets[j]});
  return out;
}

std::vector<DefenderAtom> decompose_matroid_point(const std::vector<double>& z,
                                                  int d) {
  const int n = static_cast<int>(z.size());
  if (d < 0) throw std::invalid_argument("decompose_matroid_point: d < 0");
  std::vector<double> zz = z;
  double total = 0.0;
  for (double& e : zz) {
    if (!std::isfinite(e) || e < -1e-7 || e > 1.0 + 1e-7)
      throw std::invalid_argument(
          "decompose_matroid_point: entry outside [0,1]");
    e = std::clamp(e, 0.0, 1.0);
    total += e;
  }
  if (total > static_cast<double>(d) + 1e-7)
    throw std::invalid_argument(
        "decompose_matroid_point: total mass exceeds the budget");
  if (total > static_cast<double>(d) && total > 0.0)
    for (double& e : zz) e *= static_cast<double>(d) / total;

  // Systematic-sampling construction: lay the entries end to end on a line
  // of length S = sum z and stab it with a comb of unit-spaced points at
  // offset tau. Each tau in [0,1) picks the set of segments hit; the set is
  // constant between the fractional parts of the prefix sums, every set has
  // floor(S) or ceil(S) <= d elements (segments have length <= 1, so no
  // element is hit twice), and integrating over tau returns z exactly.
  std::vector<double> prefix(static_cast<std::size_t>(n) + 1, 0.0);
  for (int i = 0; i < n; ++i)
    prefix[static_cast<std::size_t>(i) + 1] =
        prefix[static_cast<std::size_t>(i)] + zz[static_cast<std::size_t>(i)];
  const double mass = prefix.back();

  std::vector<double> cuts;
  cuts.reserve(static_cast<std::size_t>(n) + 2);
  cuts.push_back(0.0);
  for (int i = 1; i <= n; ++i) {
    const double f = prefix[static_cast<std::size_t>(i)] -
                     std::floor(prefix[static_cast<std::size_t>(i)]);
    if (f > 0.0 && f < 1.0) cuts.push_back(f);
  }
  cuts.push_back(1.0);
  std::sort(cuts.begin(), cuts.end());

  std::vector<DefenderAtom> atoms;
  for (std::size_t ci = 0; ci + 1 < cuts.size(); ++ci) {
    const double weight = cuts[ci + 1] - cuts[ci];
    if (weight <= 0.0) continue;
    const double tau = 0.5 * (cuts[ci] + cuts[ci + 1]);
    DefenderAtom atom;
    atom.weight = weight;
    for (double point = tau; point < mass; point += 1.0) {
      const auto it =
          std::upper_bound(prefix.begin() + 1, prefix.end(), point);
      const int elem = static_cast<int>(it - (prefix.begin() + 1));
      if (elem < n) atom.nodes.push_back(elem);
    }
    atoms.push_back(std::move(atom));
  }
  return atoms;
}

}  // namespace signalgame::security
