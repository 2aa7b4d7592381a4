#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "signalgame/lp.hpp"
#include "signalgame/matrix.hpp"
#include "signalgame/rng.hpp"

using namespace signalgame;

namespace {

Matrix make_matrix(const std::vector<std::vector<double>>& rows) {
  Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) m.at(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return m;
}

// Worst column payoff of a row mixture: what the row player is guaranteed.
double guaranteed_value(const Matrix& a, const std::vector<double>& x) {
  double worst = std::numeric_limits<double>::infinity();
  for (int j = 0; j < a.cols; ++j) {
    double col = 0.0;
    for (int i = 0; i < a.rows; ++i) col += x[static_cast<std::size_t>(i)] * a.at(i, j);
    worst = std::min(worst, col);
  }
  return worst;
}

// Best row payoff against a column mixture: what the column player concedes.
double conceded_value(const Matrix& a, const std::vector<double>& y) {
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < a.rows; ++i) {
    double row = 0.0;
    for (int j = 0; j < a.cols; ++j) row += y[static_cast<std::size_t>(j)] * a.at(i, j);
    best = std::max(best, row);
  }
  return best;
}

void check_simplex_point(const std::vector<double>& x) {
  double total = 0.0;
  for (double v : x) {
    CHECK(v >= -1e-9);
    total += v;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

}  // namespace

TEST_CASE("maximize solves a textbook two-variable program") {
  // max 3x + 2y  s.t.  x + y <= 4,  x + 3y <= 6  ->  x = 4, y = 0, value 12.
  const auto sol = lp::maximize({{1.0, 1.0}, {1.0, 3.0}}, {4.0, 6.0}, {3.0, 2.0});
  REQUIRE(sol.status == lp::Status::optimal);
  CHECK(sol.value == doctest::Approx(12.0));
  CHECK(sol.x[0] == doctest::Approx(4.0));
  CHECK(sol.x[1] == doctest::Approx(0.0));
}

TEST_CASE("maximize detects infeasible and unbounded programs") {
  // x <= -1 with x >= 0 is empty.
  const std::vector<std::vector<double>> wall = {{1.0}};
  CHECK(lp::maximize(wall, {-1.0}, {1.0}).status == lp::Status::infeasible);
  // max x with only x - y <= 1: push y up forever.
  const std::vector<std::vector<double>> slide = {{1.0, -1.0}};
  CHECK(lp::maximize(slide, {1.0}, {1.0, 0.0}).status ==
        lp::Status::unbounded);
}

TEST_CASE("maximize with no constraint rows") {
  // All of x >= 0 is feasible; a negative objective pins the optimum at 0.
  const auto sol = lp::maximize(std::vector<std::vector<double>>{}, {},
                                {-1.0, -2.0});
  REQUIRE(sol.status == lp::Status::optimal);
  CHECK(sol.value == doctest::Approx(0.0));
  // And a positive objective escapes to infinity.
  CHECK(lp::maximize(std::vector<std::vector<double>>{}, {}, {1.0}).status ==
        lp::Status::unbounded);
}

TEST_CASE("maximize honors binding equality-like constraint pairs") {
  // x + y <= 1 and -(x + y) <= -1 force the simplex face x + y = 1.
  const auto sol = lp::maximize({{1.0, 1.0}, {-1.0, -1.0}}, {1.0, -1.0},
                                {5.0, 4.0});
  REQUIRE(sol.status == lp::Status::optimal);
  CHECK(sol.value == doctest::Approx(5.0));
  CHECK(sol.x[0] == doctest::Approx(1.0));
}

TEST_CASE("flat row-major overload agrees with the row overload") {
  const std::vector<std::vector<double>> rows = {{2.0, 1.0}, {1.0, 3.0}};
  const std::vector<double> flat = {2.0, 1.0, 1.0, 3.0};
  const auto a = lp::maximize(rows, {8.0, 9.0}, {1.0, 1.0});
  const auto b = lp::maximize(flat, {8.0, 9.0}, {1.0, 1.0});
  REQUIRE(a.status == lp::Status::optimal);
  REQUIRE(b.status == lp::Status::optimal);
  CHECK(a.value == doctest::Approx(b.value).epsilon(1e-12));
  for (std::size_t i = 0; i < a.x.size(); ++i)
    CHECK(a.x[i] == doctest::Approx(b.x[i]).epsilon(1e-9));
}

TEST_CASE("matching pennies is worth zero with uniform play") {
  const auto sol = lp::solve_matrix_game(make_matrix({{1.0, -1.0}, {-1.0, 1.0}}));
  CHECK(sol.value == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(sol.duality_gap <= 1e-6);
  check_simplex_point(sol.row_strategy);
  check_simplex_point(sol.col_strategy);
  CHECK(sol.row_strategy[0] == doctest::Approx(0.5).epsilon(1e-7));
  CHECK(sol.col_strategy[0] == doctest::Approx(0.5).epsilon(1e-7));
}

TEST_CASE("rock-paper-scissors is worth zero with uniform play") {
  const auto sol = lp::solve_matrix_game(make_matrix({{0.0, -1.0, 1.0},
                                                      {1.0, 0.0, -1.0},
                                                      {-1.0, 1.0, 0.0}}));
  CHECK(sol.value == doctest::Approx(0.0).epsilon(1e-9));
  for (double p : sol.row_strategy) CHECK(p == doctest::Approx(1.0 / 3).epsilon(1e-7));
  for (double p : sol.col_strategy) CHECK(p == doctest::Approx(1.0 / 3).epsilon(1e-7));
}

TEST_CASE("an asymmetric 2x2 game has the known closed-form equilibrium") {
  // [[3,0],[1,2]] : value 3/2, row = (1/4, 3/4), col = (1/2, 1/2).
  const auto sol = lp::solve_matrix_game(make_matrix({{3.0, 0.0}, {1.0, 2.0}}));
  CHECK(sol.value == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(sol.row_strategy[0] == doctest::Approx(0.25).epsilon(1e-7));
  CHECK(sol.row_strategy[1] == doctest::Approx(0.75).epsilon(1e-7));
  CHECK(sol.col_strategy[0] == doctest::Approx(0.5).epsilon(1e-7));
  CHECK(sol.col_strategy[1] == doctest::Approx(0.5).epsilon(1e-7));
}

TEST_CASE("degenerate shapes: single entry, single row, single column") {
  const auto one = lp::solve_matrix_game(make_matrix({{5.0}}));
  CHECK(one.value == doctest::Approx(5.0));
  CHECK(one.row_strategy == std::vector<double>{1.0});

  // One row: the column player just picks the smallest entry.
  const auto row = lp::solve_matrix_game(make_matrix({{2.0, -3.0, 4.0}}));
  CHECK(row.value == doctest::Approx(-3.0).epsilon(1e-9));
  CHECK(row.col_strategy[1] == doctest::Approx(1.0).epsilon(1e-7));

  // One column: the row player picks the largest entry.
  const auto col = lp::solve_matrix_game(make_matrix({{2.0}, {-3.0}, {4.0}}));
  CHECK(col.value == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(col.row_strategy[2] == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("a dominant row wins the whole game") {
  // Row 0 dominates everywhere; value is its smallest entry.
  const auto sol = lp::solve_matrix_game(make_matrix({{4.0, 6.0, 5.0},
                                                      {1.0, 2.0, 0.0}}));
  CHECK(sol.value == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(sol.row_strategy[0] == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("shifting every payoff shifts the value by the same constant") {
  const Matrix base = make_matrix({{3.0, 0.0}, {1.0, 2.0}});
  Matrix shifted = base;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) shifted.at(i, j) += 7.25;
  const auto a = lp::solve_matrix_game(base);
  const auto b = lp::solve_matrix_game(shifted);
  CHECK(b.value == doctest::Approx(a.value + 7.25).epsilon(1e-9));
}

TEST_CASE("random games: strategies certify the value from both sides") {
  rng::Xoshiro256pp gen(rng::child_seed(2718, "lp-random", 0));
  for (int trial = 0; trial < 1000; ++trial) {
    const int r = 1 + static_cast<int>(gen.uniform_below(5));
    const int c = 1 + static_cast<int>(gen.uniform_below(5));
    Matrix a(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) a.at(i, j) = gen.next_double() * 10.0 - 5.0;

    const auto sol = lp::solve_matrix_game(a);
    CHECK(sol.duality_gap <= 1e-6);
    check_simplex_point(sol.row_strategy);
    check_simplex_point(sol.col_strategy);

    // The saddle point property, measured with independent arithmetic:
    // x guarantees at least the value, y concedes at most the value.
    CHECK(guaranteed_value(a, sol.row_strategy) >= sol.value - 1e-6);
    CHECK(conceded_value(a, sol.col_strategy) <= sol.value + 1e-6);
  }
}
