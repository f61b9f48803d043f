#pragma once

// Tiny dense linear solvers backing the mixed-equilibrium support search.
// Systems here are at most (|S1|+1) x (|S2|+1), so plain Gaussian
// elimination is all that is needed.

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

namespace gtalloc::detail {

using Matrix = std::vector<std::vector<double>>;

// Gaussian elimination with partial pivoting. Returns nullopt when the
// matrix is numerically singular.
inline std::optional<std::vector<double>> solve_square(Matrix a, std::vector<double> b) {
  const std::size_t n = a.size();
  double scale = 0.0;
  for (const auto& row : a)
    for (double v : row) scale = std::max(scale, std::fabs(v));
  const double pivot_floor = 1e-12 * std::max(1.0, scale);

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
    if (std::fabs(a[pivot][col]) < pivot_floor) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = a[r][col] / a[col][col];
      if (factor == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
      b[r] -= factor * b[col];
    }
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double acc = b[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= a[i][j] * x[j];
    x[i] = acc / a[i][i];
  }
  return x;
}

// Ridge-regularized normal equations for non-square or singular systems.
// The regularization is far below every verification tolerance, and for
// consistent underdetermined systems it picks the minimum-norm solution,
// which serves as the representative of a solution continuum.
inline std::optional<std::vector<double>> solve_least_squares(const Matrix& a,
                                                              const std::vector<double>& b) {
  const std::size_t rows = a.size();
  if (rows == 0) return std::nullopt;
  const std::size_t cols = a[0].size();

  Matrix ata(cols, std::vector<double>(cols, 0.0));
  std::vector<double> atb(cols, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t i = 0; i < cols; ++i) {
      atb[i] += a[r][i] * b[r];
      for (std::size_t j = 0; j < cols; ++j) ata[i][j] += a[r][i] * a[r][j];
    }
  }
  double diag_scale = 0.0;
  for (std::size_t i = 0; i < cols; ++i) diag_scale = std::max(diag_scale, std::fabs(ata[i][i]));
  const double ridge = 1e-12 * std::max(1.0, diag_scale);
  for (std::size_t i = 0; i < cols; ++i) ata[i][i] += ridge;
  return solve_square(std::move(ata), std::move(atb));
}

}  // namespace gtalloc::detail
