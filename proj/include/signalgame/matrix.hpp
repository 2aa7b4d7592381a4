#ifndef SIGNALGAME_MATRIX_HPP
#define SIGNALGAME_MATRIX_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace signalgame {

// Row-major dense matrix of doubles; small helper shared by the game and LP
// layers (payoff matrices here are at most a few thousand entries).
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c, double fill = 0.0)
      : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, fill) {
    if (r < 0 || c < 0) throw std::invalid_argument("matrix: negative shape");
  }

  double& at(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
  double at(int i, int j) const {
    return data[static_cast<std::size_t>(i) * cols + j];
  }

  const double* row(int i) const {
    return data.data() + static_cast<std::size_t>(i) * cols;
  }
  double* row(int i) {
    return data.data() + static_cast<std::size_t>(i) * cols;
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : data) m = std::max(m, std::fabs(v));
    return m;
  }

  bool all_finite() const {
    for (double v : data)
      if (!std::isfinite(v)) return false;
    return true;
  }
};

}  // namespace signalgame

#endif  // SIGNALGAME_MATRIX_HPP
