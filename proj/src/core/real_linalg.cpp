#include "qsd/real_linalg.hpp"

#include <algorithm>
#include <cmath>

#include "qsd/error.hpp"

namespace qsd::linalg {

std::optional<std::vector<double>> solve(RMatrix m, std::vector<double> b, double pivot_tol) {
  const std::size_t n = m.rows;
  if (m.cols != n || b.size() != n) throw DimensionError("linalg::solve: shape mismatch");
  double scale = 0.0;
  for (double v : m.a) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return n == 0 ? std::optional<std::vector<double>>(std::vector<double>{}) : std::nullopt;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m(r, col)) > std::abs(m(piv, col))) piv = r;
    if (std::abs(m(piv, col)) <= pivot_tol * scale) return std::nullopt;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(col, j), m(piv, j));
      std::swap(b[col], b[piv]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = m(r, col) / m(col, col);
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) m(r, j) -= f * m(col, j);
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= m(i, j) * x[j];
    x[i] = s / m(i, i);
  }
  return x;
}

std::optional<std::vector<double>> least_squares(const RMatrix& m, const std::vector<double>& b) {
  if (b.size() != m.rows) throw DimensionError("linalg::least_squares: shape mismatch");
  RMatrix g(m.cols, m.cols);
  std::vector<double> rhs(m.cols, 0.0);
  for (std::size_t i = 0; i < m.cols; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) {
      double s = 0.0;
      for (std::size_t r = 0; r < m.rows; ++r) s += m(r, i) * m(r, j);
      g(i, j) = s;
    }
    for (std::size_t r = 0; r < m.rows; ++r) rhs[i] += m(r, i) * b[r];
  }
  return solve(std::move(g), std::move(rhs), 1e-12);
}

std::vector<double> nnls(const RMatrix& m, const std::vector<double>& b, int max_iter) {
  const std::size_t n = m.cols;
  if (b.size() != m.rows) throw DimensionError("linalg::nnls: shape mismatch");
  std::vector<double> x(n, 0.0);
  std::vector<bool> passive(n, false);

  auto gradient = [&](const std::vector<double>& xv) {
    std::vector<double> r(b);
    for (std::size_t i = 0; i < m.rows; ++i)
      for (std::size_t j = 0; j < n; ++j) r[i] -= m(i, j) * xv[j];
    std::vector<double> w(n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < m.rows; ++i) w[j] += m(i, j) * r[i];
    return w;
  };

  auto passive_solve = [&]() {
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < n; ++j)
      if (passive[j]) idx.push_back(j);
    RMatrix sub(m.rows, idx.size());
    for (std::size_t i = 0; i < m.rows; ++i)
      for (std::size_t k = 0; k < idx.size(); ++k) sub(i, k) = m(i, idx[k]);
    std::vector<double> z(n, 0.0);
    if (auto sol = least_squares(sub, b))
      for (std::size_t k = 0; k < idx.size(); ++k) z[idx[k]] = (*sol)[k];
    return z;
  };

  const double tol = 1e-12;
  for (int outer = 0; outer < max_iter; ++outer) {
    const auto w = gradient(x);
    std::size_t best = n;
    double wmax = tol;
    for (std::size_t j = 0; j < n; ++j)
      if (!passive[j] && w[j] > wmax) {
        wmax = w[j];
        best = j;
      }
    if (best == n) break;
    passive[best] = true;

    for (int inner = 0; inner < max_iter; ++inner) {
      auto z = passive_solve();
      bool feasible = true;
      for (std::size_t j = 0; j < n; ++j)
        if (passive[j] && z[j] <= 0.0) feasible = false;
      if (feasible) {
        x = std::move(z);
        break;
      }
      double alpha = 1.0;
      for (std::size_t j = 0; j < n; ++j)
        if (passive[j] && z[j] <= 0.0) alpha = std::min(alpha, x[j] / (x[j] - z[j]));
      for (std::size_t j = 0; j < n; ++j) {
        x[j] += alpha * (z[j] - x[j]);
        if (passive[j] && x[j] <= tol) {
          passive[j] = false;
          x[j] = 0.0;
        }
      }
    }
  }
  return x;
}

}  // namespace qsd::linalg
