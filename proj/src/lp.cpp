#include "signalgame/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "signalgame/kernels.hpp"

namespace signalgame::lp {

namespace {

constexpr double kEps = 1e-8;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Two-phase dense tableau simplex (Bland-resistant: candidate entering and
// leaving variables are picked by (value, label) pairs, which both breaks
// ties deterministically and avoids cycling in practice).
struct Tableau {
  int m, n;
  std::vector<int> nonbasic, basic;     // labels; n is the artificial column
  std::vector<std::vector<double>> d;   // (m+2) x (n+2)

  Tableau(const std::vector<double>& a, const std::vector<double>& b,
          const std::vector<double>& c)
      : m(static_cast<int>(b.size())),
        n(static_cast<int>(c.size())),
        nonbasic(n + 1),
        basic(m),
        d(m + 2, std::vector<double>(n + 2, 0.0)) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j)
        d[i][j] = a[static_cast<std::size_t>(i) * n + j];
    for (int i = 0; i < m; ++i) {
      basic[i] = n + i;
      d[i][n] = -1.0;
      d[i][n + 1] = b[i];
    }
    for (int j = 0; j < n; ++j) {
      nonbasic[j] = j;
      d[m][j] = -c[j];
    }
    nonbasic[n] = -1;
    d[m + 1][n] = 1.0;
  }

  void pivot(int r, int s) {
    double* pr = d[r].data();
    const double inv = 1.0 / pr[s];
    for (int i = 0; i < m + 2; ++i) {
      if (i == r || std::fabs(d[i][s]) <= kEps) continue;
      double* pi = d[i].data();
      const double factor = pi[s] * inv;
      kernels::axpy(pi, pr, -factor, static_cast<std::size_t>(n + 2));
      pi[s] = pr[s] * factor;
    }
    for (int j = 0; j < n + 2; ++j)
      if (j != s) pr[j] *= inv;
    for (int i = 0; i < m + 2; ++i)
      if (i != r) d[i][s] *= -inv;
    pr[s] = inv;
    std::swap(basic[r], nonbasic[s]);
  }

  bool simplex(int phase) {
    const int obj = m + phase - 1;
    for (;;) {
      int s = -1;
      for (int j = 0; j <= n; ++j) {
        if (nonbasic[j] == -phase) continue;
        if (s == -1 || std::make_pair(d[obj][j], nonbasic[j]) <
                           std::make_pair(d[obj][s], nonbasic[s]))
          s = j;
      }
      if (s == -1 || d[obj][s] >= -kEps) return true;
      int r = -1;
      for (int i = 0; i < m; ++i) {
        if (d[i][s] <= kEps) continue;
        if (r == -1 || std::make_pair(d[i][n + 1] / d[i][s], basic[i]) <
                           std::make_pair(d[r][n + 1] / d[r][s], basic[r]))
          r = i;
      }
      if (r == -1) return false;  // unbounded in this phase
      pivot(r, s);
    }
  }

  Solution run() {
    Solution sol;
    int r = 0;
    for (int i = 1; i < m; ++i)
      if (d[i][n + 1] < d[r][n + 1]) r = i;
    if (m > 0 && d[r][n + 1] < -kEps) {
      pivot(r, n);
      if (!simplex(2) || d[m + 1][n + 1] < -kEps) {
        sol.status = Status::infeasible;
        return sol;
      }
      for (int i = 0; i < m; ++i) {
        if (basic[i] != -1) continue;
        int s = 0;
        for (int j = 1; j <= n; ++j)
          if (std::make_pair(d[i][j], nonbasic[j]) <
              std::make_pair(d[i][s], nonbasic[s]))
            s = j;
        pivot(i, s);
      }
    }
    const bool bounded = simplex(1);
    sol.x.assign(n, 0.0);
    for (int i = 0; i < m; ++i)
      if (basic[i] < n) sol.x[basic[i]] = d[i][n + 1];
    if (!bounded) {
      sol.status = Status::unbounded;
      sol.value = kInf;
      return sol;
    }
    sol.status = Status::optimal;
    sol.value = d[m][n + 1];
    return sol;
  }
};

// Row player's LP for payoff matrix `a`:
//   maximize v  s.t.  sum_i y_i a(i,j) >= v for every column j, y in simplex,
// with v split into vp - vn to keep all variables nonnegative.
Solution row_player_lp(const Matrix& a) {
  const int r = a.rows, c = a.cols;
  const int nvars = r + 2;
  std::vector<double> lhs(static_cast<std::size_t>(c + 2) * nvars, 0.0);
  std::vector<double> rhs(c + 2, 0.0);
  for (int j = 0; j < c; ++j) {
    double* row = lhs.data() + static_cast<std::size_t>(j) * nvars;
    for (int i = 0; i < r; ++i) row[i] = -a.at(i, j);
    row[r] = 1.0;       // vp
    row[r + 1] = -1.0;  // vn
    rhs[j] = 0.0;
  }
  double* sum_row = lhs.data() + static_cast<std::size_t>(c) * nvars;
  double* neg_row = lhs.data() + static_cast<std::size_t>(c + 1) * nvars;
  for (int i = 0; i < r; ++i) {
    sum_row[i] = 1.0;
    neg_row[i] = -1.0;
  }
  rhs[c] = 1.0;
  rhs[c + 1] = -1.0;
  std::vector<double> obj(nvars, 0.0);
  obj[r] = 1.0;
  obj[r + 1] = -1.0;
  return maximize(lhs, rhs, obj);
}

std::vector<double> clean_distribution(const double* p, int n) {
  std::vector<double> v(p, p + n);
  double total = 0.0;
  for (double& x : v) {
    if (x < 0.0) x = 0.0;
    total += x;
  }
  if (total <= 0.0) throw std::runtime_error("matrix game: empty strategy");
  for (double& x : v) x /= total;
  return v;
}

}  // namespace

Solution maximize(const std::vector<double>& a_rowmajor,
                  const std::vector<double>& b, const std::vector<double>& c) {
  if (a_rowmajor.size() != b.size() * c.size())
    throw std::invalid_argument("lp::maximize: shape mismatch");
  Tableau t(a_rowmajor, b, c);
  return t.run();
}

Solution maximize(const std::vector<std::vector<double>>& a,
                  const std::vector<double>& b, const std::vector<double>& c) {
  std::vector<double> flat;
  flat.reserve(a.size() * c.size());
  for (const auto& row : a) {
    if (row.size() != c.size())
      throw std::invalid_argument("lp::maximize: ragged constraint matrix");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return maximize(flat, b, c);
}

MatrixGameSolution solve_matrix_game(const Matrix& a) {
  if (a.rows < 1 || a.cols < 1)
    throw std::invalid_argument("matrix game: empty matrix");
  if (!a.all_finite())
    throw std::invalid_argument("matrix game: non-finite payoff entry");

  Solution row_sol = row_player_lp(a);
  if (row_sol.status != Status::optimal)
    throw std::runtime_error("matrix game: row LP did not converge");

  // The column player's problem is the row problem of the negated transpose.
  Matrix bt(a.cols, a.rows);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) bt.at(j, i) = -a.at(i, j);
  Solution col_sol = row_player_lp(bt);
  if (col_sol.status != Status::optimal)
    throw std::runtime_error("matrix game: column LP did not converge");

  MatrixGameSolution out;
  out.value = row_sol.value;
  out.row_strategy = clean_distribution(row_sol.x.data(), a.rows);
  out.col_strategy = clean_distribution(col_sol.x.data(), a.cols);
  out.duality_gap = std::fabs(row_sol.value - (-col_sol.value));
  if (!(out.duality_gap <= 1e-6)) {
    throw std::runtime_error(
        "matrix game: duality gap " + std::to_string(out.duality_gap) +
        " exceeds 1e-6 (max-min " + std::to_string(row_sol.value) +
        ", min-max " + std::to_string(-col_sol.value) + ")");
  }
  return out;
}

}  // namespace signalgame::lp
