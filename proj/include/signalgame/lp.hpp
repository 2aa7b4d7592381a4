#ifndef SIGNALGAME_LP_HPP
#define SIGNALGAME_LP_HPP

#include <vector>

#include "signalgame/matrix.hpp"

// Dense two-phase tableau simplex for the small and mid-sized LPs in this
// project (matrix games, the grid envelope program, the reference security
// subgame formulation). Deterministic: entering/leaving variables are chosen
// by (value, label) lexicographic comparison, so reruns pivot identically.

namespace signalgame::lp {

enum class Status { optimal, infeasible, unbounded };

struct Solution {
  Status status = Status::infeasible;
  double value = 0.0;
  std::vector<double> x;
};

// maximize c^T x  subject to  A x <= b, x >= 0.
// A is row-major with m rows and n columns (m = b.size(), n = c.size()).
Solution maximize(const std::vector<double>& a_rowmajor,
                  const std::vector<double>& b, const std::vector<double>& c);

// Convenience overload for callers that already hold rows.
Solution maximize(const std::vector<std::vector<double>>& a,
                  const std::vector<double>& b, const std::vector<double>& c);

struct MatrixGameSolution {
  double value = 0.0;                // max-min value for the row player
  std::vector<double> row_strategy;  // in the row simplex
  std::vector<double> col_strategy;  // in the column simplex
  double duality_gap = 0.0;          // |max-min - min-max| from the two LPs
};

// Value and optimal mixed strategies of the zero-sum game with row-player
// payoff matrix `a` (row player maximizes). Solves both players' LPs and
// reports the observed duality gap; throws if either LP fails to converge.
MatrixGameSolution solve_matrix_game(const Matrix& a);

}  // namespace signalgame::lp

#endif  // SIGNALGAME_LP_HPP
