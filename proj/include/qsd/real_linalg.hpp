#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace qsd::linalg {

/// Row-major rows x cols real matrix.
struct RMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;

  RMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

/// Square solve by Gaussian elimination with partial pivoting. Returns
/// nullopt when a pivot falls below `pivot_tol` times the largest entry.
std::optional<std::vector<double>> solve(RMatrix m, std::vector<double> b, double pivot_tol = 1e-13);

/// Least squares via normal equations; nullopt when A^T A is singular.
std::optional<std::vector<double>> least_squares(const RMatrix& m, const std::vector<double>& b);

/// Lawson-Hanson nonnegative least squares: min |Ax - b| s.t. x >= 0.
std::vector<double> nnls(const RMatrix& m, const std::vector<double>& b, int max_iter = 500);

}  // namespace qsd::linalg
