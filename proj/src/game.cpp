#include "signalgame/game.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include "signalgame/kernels.hpp"

namespace signalgame::game {

namespace {

constexpr double kConstructTol = 1e-9;  // invariants checked at build time
constexpr double kCrossOpTol = 1e-7;    // consistency across operations
constexpr double kWeightFloor = 1e-12;  // signals below this are dropped

void check_distribution(const char* what, const std::vector<double>& v,
                        double tol) {
  if (v.empty())
    throw std::invalid_argument(std::string(what) + ": empty vector");
  double total = 0.0;
  for (double x : v) {
    if (!std::isfinite(x))
      throw std::invalid_argument(std::string(what) + ": non-finite entry");
    if (x < -tol)
      throw std::invalid_argument(std::string(what) + ": negative entry " +
                                  std::to_string(x));
    total += x;
  }
  if (std::fabs(total - 1.0) > tol)
    throw std::invalid_argument(std::string(what) + ": sums to " +
                                std::to_string(total) + ", expected 1");
}

}  // namespace

void BayesianZeroSumGame::validate() const {
  if (rows < 1 || cols < 1 || num_states < 1)
    throw std::invalid_argument("game: dimensions must be positive");
  if (static_cast<int>(payoffs.size()) != num_states)
    throw std::invalid_argument("game: expected one payoff matrix per state");
  for (int t = 0; t < num_states; ++t) {
    const Matrix& m = payoffs[t];
    if (m.rows != rows || m.cols != cols)
      throw std::invalid_argument("game: payoff matrix " + std::to_string(t) +
                                  " has shape " + std::to_string(m.rows) + "x" +
                                  std::to_string(m.cols));
    if (!m.all_finite())
      throw std::invalid_argument("game: non-finite entry in payoff matrix " +
                                  std::to_string(t));
  }
  if (static_cast<int>(prior.size()) != num_states)
    throw std::invalid_argument("game: prior length must equal state count");
  check_distribution("game prior", prior, kConstructTol);
}

void SignalingScheme::validate() const {
  if (num_states < 1 || num_signals < 1)
    throw std::invalid_argument("scheme: dimensions must be positive");
  if (static_cast<int>(phi.size()) != num_states)
    throw std::invalid_argument("scheme: expected one phi row per state");
  for (int t = 0; t < num_states; ++t) {
    if (static_cast<int>(phi[t].size()) != num_signals)
      throw std::invalid_argument("scheme: phi row " + std::to_string(t) +
                                  " has wrong length");
    check_distribution("scheme phi row", phi[t], kConstructTol);
  }
}

void ConvexDecomposition::validate() const {
  if (alpha.size() != posteriors.size())
    throw std::invalid_argument(
        "decomposition: one posterior per signal required");
  check_distribution("decomposition weights", alpha, kConstructTol);
  for (const auto& x : posteriors)
    check_distribution("decomposition posterior", x, kConstructTol);
  if (!prior.empty()) {
    const std::size_t m = prior.size();
    std::vector<double> avg(m, 0.0);
    for (std::size_t s = 0; s < alpha.size(); ++s) {
      if (posteriors[s].size() != m)
        throw std::invalid_argument("decomposition: posterior length differs "
                                    "from prior length");
      kernels::axpy(avg.data(), posteriors[s].data(), alpha[s], m);
    }
    for (std::size_t t = 0; t < m; ++t)
      if (std::fabs(avg[t] - prior[t]) > kCrossOpTol)
        throw std::invalid_argument(
            "decomposition: weighted posteriors average to " +
            std::to_string(avg[t]) + " at state " + std::to_string(t) +
            ", prior has " + std::to_string(prior[t]));
  }
}

ConvexDecomposition scheme_to_decomposition(const std::vector<double>& prior,
                                            const SignalingScheme& scheme) {
  check_distribution("prior", prior, kConstructTol);
  scheme.validate();
  const int m = scheme.num_states;
  if (static_cast<int>(prior.size()) != m)
    throw std::invalid_argument(
        "scheme_to_decomposition: prior length differs from scheme states");

  ConvexDecomposition dec;
  dec.prior = prior;
  for (int s = 0; s < scheme.num_signals; ++s) {
    double a = 0.0;
    for (int t = 0; t < m; ++t) a += prior[t] * scheme.phi[t][s];
    if (a < kWeightFloor) continue;
    std::vector<double> x(m);
    double total = 0.0;
    for (int t = 0; t < m; ++t) {
      x[t] = prior[t] * scheme.phi[t][s] / a;
      total += x[t];
    }
    for (double& v : x) v /= total;  // absorb rounding drift
    dec.alpha.push_back(a);
    dec.posteriors.push_back(std::move(x));
  }
  double atotal = 0.0;
  for (double a : dec.alpha) atotal += a;
  for (double& a : dec.alpha) a /= atotal;
  dec.validate();
  return dec;
}

SignalingScheme decomposition_to_scheme(const std::vector<double>& prior,
                                        const ConvexDecomposition& dec) {
  check_distribution("prior", prior, kConstructTol);
  const std::size_t m = prior.size();
  const std::size_t nsig = dec.alpha.size();
  if (nsig == 0)
    throw std::invalid_argument("decomposition_to_scheme: no signals");

  std::vector<double> avg(m, 0.0);
  for (std::size_t s = 0; s < nsig; ++s) {
    if (dec.posteriors[s].size() != m)
      throw std::invalid_argument(
          "decomposition_to_scheme: posterior length differs from prior");
    kernels::axpy(avg.data(), dec.posteriors[s].data(), dec.alpha[s], m);
  }
  for (std::size_t t = 0; t < m; ++t)
    if (std::fabs(avg[t] - prior[t]) > kCrossOpTol)
      throw std::invalid_argument(
          "decomposition_to_scheme: decomposition averages to " +
          std::to_string(avg[t]) + " at state " + std::to_string(t) +
          " but prior has " + std::to_string(prior[t]));

  SignalingScheme scheme;
  scheme.num_states = static_cast<int>(m);
  scheme.num_signals = static_cast<int>(nsig);
  scheme.phi.assign(m, std::vector<double>(nsig, 0.0));
  for (std::size_t t = 0; t < m; ++t) {
    if (prior[t] <= 0.0) {
      // State never occurs; any row is behaviorally equivalent. Uniform keeps
      // the output deterministic.
      std::fill(scheme.phi[t].begin(), scheme.phi[t].end(),
                1.0 / static_cast<double>(nsig));
      continue;
    }
    double total = 0.0;
    for (std::size_t s = 0; s < nsig; ++s) {
      double v = dec.alpha[s] * dec.posteriors[s][t] / prior[t];
      if (v < 0.0) v = 0.0;
      scheme.phi[t][s] = v;
      total += v;
    }
    for (double& v : scheme.phi[t]) v /= total;
  }
  scheme.validate();
  return scheme;
}

Matrix expected_matrix(const BayesianZeroSumGame& g,
                       const std::vector<double>& posterior) {
  check_distribution("posterior", posterior, kConstructTol);
  if (static_cast<int>(posterior.size()) != g.num_states)
    throw std::invalid_argument(
        "expected_matrix: posterior length differs from state count");
  Matrix out(g.rows, g.cols);
  const std::size_t cells = out.data.size();
  for (int t = 0; t < g.num_states; ++t)
    if (posterior[t] != 0.0)
      kernels::axpy(out.data.data(), g.payoffs[t].data.data(), posterior[t],
                    cells);
  return out;
}

SignalingScheme mix_schemes(const SignalingScheme& a, const SignalingScheme& b,
                            double weight) {
  a.validate();
  b.validate();
  if (a.num_states != b.num_states)
    throw std::invalid_argument("mix_schemes: state counts differ");
  if (!(weight >= 0.0 && weight <= 1.0))
    throw std::invalid_argument("mix_schemes: weight must lie in [0,1]");

  SignalingScheme out;
  out.num_states = a.num_states;
  out.num_signals = a.num_signals + b.num_signals;
  out.phi.assign(a.num_states, std::vector<double>(out.num_signals, 0.0));
  for (int t = 0; t < a.num_states; ++t) {
    for (int s = 0; s < a.num_signals; ++s)
      out.phi[t][s] = weight * a.phi[t][s];
    for (int s = 0; s < b.num_signals; ++s)
      out.phi[t][a.num_signals + s] = (1.0 - weight) * b.phi[t][s];
  }
  out.validate();
  return out;
}

namespace {

// Nontrivial null vector of the rows x cols matrix `b` (row-major), found by
// Gauss-Jordan elimination with partial pivoting. Requires rank < cols.
std::vector<double> null_vector(std::vector<std::vector<double>> b) {
  const std::size_t rows = b.size();
  const std::size_t cols = b.empty() ? 0 : b[0].size();
  std::vector<std::size_t> pivot_row_of_col(cols, SIZE_MAX);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t best = rank;
    for (std::size_t r = rank + 1; r < rows; ++r)
      if (std::fabs(b[r][c]) > std::fabs(b[best][c])) best = r;
    if (std::fabs(b[best][c]) <= 1e-11) continue;  // free column
    std::swap(b[rank], b[best]);
    const double inv = 1.0 / b[rank][c];
    for (double& v : b[rank]) v *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || b[r][c] == 0.0) continue;
      const double f = b[r][c];
      kernels::axpy(b[r].data(), b[rank].data(), -f, cols);
      b[r][c] = 0.0;
    }
    pivot_row_of_col[c] = rank;
    ++rank;
  }
  std::size_t free_col = SIZE_MAX;
  for (std::size_t c = 0; c < cols; ++c)
    if (pivot_row_of_col[c] == SIZE_MAX) {
      free_col = c;
      break;
    }
  if (free_col == SIZE_MAX)
    throw std::runtime_error("support reduction: no dependence found");
  std::vector<double> gamma(cols, 0.0);
  gamma[free_col] = 1.0;
  for (std::size_t c = 0; c < cols; ++c)
    if (pivot_row_of_col[c] != SIZE_MAX)
      gamma[c] = -b[pivot_row_of_col[c]][free_col];
  return gamma;
}

}  // namespace

ConvexDecomposition reduce_support(const ConvexDecomposition& dec,
                                   const std::vector<double>& signal_values) {
  dec.validate();
  if (signal_values.size() != dec.alpha.size())
    throw std::invalid_argument("reduce_support: one value per signal needed");
  const std::size_t m = dec.posteriors.empty() ? 0 : dec.posteriors[0].size();

  std::vector<double> alpha = dec.alpha;
  std::vector<std::vector<double>> post = dec.posteriors;
  std::vector<double> vals = signal_values;

  auto drop_zeros = [&] {
    std::size_t keep = 0;
    for (std::size_t s = 0; s < alpha.size(); ++s) {
      if (alpha[s] <= 0.0) continue;
      if (keep != s) {  // self-move would empty the posterior row
        alpha[keep] = alpha[s];
        post[keep] = std::move(post[s]);
        vals[keep] = vals[s];
      }
      ++keep;
    }
    alpha.resize(keep);
    post.resize(keep);
    vals.resize(keep);
  };
  drop_zeros();

  while (alpha.size() > m + 1) {
    const std::size_t n = alpha.size();
    // Lifted points (posterior, value, 1): an affine dependence among them
    // lets us shift weight without changing the average posterior or the
    // weighted value. The all-ones row is implied by the posterior rows
    // (each sums to 1), so rank <= m + 1 < n and a dependence always exists.
    std::vector<std::vector<double>> b(m + 2, std::vector<double>(n));
    for (std::size_t t = 0; t < m; ++t)
      for (std::size_t s = 0; s < n; ++s) b[t][s] = post[s][t];
    for (std::size_t s = 0; s < n; ++s) {
      b[m][s] = vals[s];
      b[m + 1][s] = 1.0;
    }
    std::vector<double> gamma = null_vector(std::move(b));

    bool has_positive = false;
    for (double g : gamma) has_positive |= g > 0.0;
    if (!has_positive)
      for (double& g : gamma) g = -g;

    double t_star = std::numeric_limits<double>::infinity();
    std::size_t arg = SIZE_MAX;
    for (std::size_t s = 0; s < n; ++s) {
      if (gamma[s] <= 1e-12) continue;
      const double t = alpha[s] / gamma[s];
      if (t < t_star) {
        t_star = t;
        arg = s;
      }
    }
    if (arg == SIZE_MAX)
      throw std::runtime_error("support reduction: degenerate dependence");
    for (std::size_t s = 0; s < n; ++s) {
      alpha[s] -= t_star * gamma[s];
      if (alpha[s] < 0.0) alpha[s] = 0.0;
    }
    alpha[arg] = 0.0;
    drop_zeros();
  }

  double total = 0.0;
  for (double a : alpha) total += a;
  for (double& a : alpha) a /= total;

  ConvexDecomposition out;
  out.alpha = std::move(alpha);
  out.posteriors = std::move(post);
  out.prior = dec.prior;
  out.validate();
  return out;
}

}  // namespace signalgame::game
