#include "qsd/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qsd/error.hpp"

namespace qsd {

namespace {

constexpr double kOffDiagonalThreshold = 1e-14;
constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const CMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// One complex Jacobi rotation annihilating a(p, q). The rotation is a phase
// D = diag(1, e^{-i phi}) on (p, q) that makes a(p, q) real, followed by the
// real symmetric rotation.
void rotate(CMatrix& a, CMatrix& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const Complex phase = std::conj(apq / mag);
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double tau = (aqq - app) / (2.0 * mag);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const Complex jpp = c;
  const Complex jpq = s;
  const Complex jqp = -s * phase;
  const Complex jqq = c * phase;

  const std::size_t n = a.dim();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * jpp + akq * jqp;
    a(k, q) = akp * jpq + akq * jqq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * jpp + vkq * jqp;
    v(k, q) = vkp * jpq + vkq * jqq;
  }
}

void fix_phase(ComplexVector& vec) {
  for (const auto& z : vec) {
    const double mag = std::abs(z);
    if (mag > 1e-10) {
      const Complex phase = std::conj(z) / mag;
      for (auto& w : vec) w *= phase;
      return;
    }
  }
}

}  // namespace

HermitianOperator::HermitianOperator(CMatrix m) {
  const std::size_t n = m.dim();
  if (n == 0) throw DimensionError("HermitianOperator: dimension must be >= 1");
  for (const auto& z : m.data())
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw InvalidArgument("HermitianOperator: non-finite entry");
  const double scale = std::max(1.0, m.max_abs());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const Complex aij = m(i, j);
      const Complex aji = m(j, i);
      if (std::abs(aij - std::conj(aji)) > kAsymmetryTolerance * scale)
        throw InvalidArgument("HermitianOperator: entries (" + std::to_string(i) + "," +
                              std::to_string(j) + ") are not conjugate-symmetric");
      const Complex avg = 0.5 * (aij + std::conj(aji));
      m(i, j) = avg;
      m(j, i) = std::conj(avg);
    }
  m_ = std::move(m);
}

HermitianOperator HermitianOperator::zero(std::size_t dim) {
  if (dim == 0) throw DimensionError("HermitianOperator: dimension must be >= 1");
  return HermitianOperator(CMatrix(dim), Trusted{});
}

HermitianOperator HermitianOperator::identity(std::size_t dim) {
  if (dim == 0) throw DimensionError("HermitianOperator: dimension must be >= 1");
  return HermitianOperator(CMatrix::identity(dim), Trusted{});
}

HermitianOperator HermitianOperator::projector(std::span<const Complex> v) {
  return HermitianOperator(CMatrix::outer(v, v));
}

HermitianOperator& HermitianOperator::operator+=(const HermitianOperator& rhs) {
  m_ += rhs.m_;
  return *this;
}

HermitianOperator& HermitianOperator::operator-=(const HermitianOperator& rhs) {
  m_ -= rhs.m_;
  return *this;
}

HermitianOperator& HermitianOperator::operator*=(double s) {
  m_ *= s;
  return *this;
}

CMatrix SpectralDecomposition::reconstruct() const {
  const std::size_t n = eigenvalues.size();
  CMatrix m(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& v = eigenvectors[k];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) += eigenvalues[k] * v[i] * std::conj(v[j]);
  }
  return m;
}

SpectralDecomposition hermitian_eigen(const HermitianOperator& h) {
  const std::size_t n = h.dim();
  CMatrix a = h.matrix();
  CMatrix v = CMatrix::identity(n);
  const double threshold = kOffDiagonalThreshold * std::max(1.0, a.frobenius());

  bool converged = off_diagonal_norm(a) <= threshold;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
    converged = off_diagonal_norm(a) <= threshold;
  }
  if (!converged) throw ConvergenceError("hermitian_eigen: Jacobi sweeps did not converge");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

  SpectralDecomposition out;
  out.eigenvalues.reserve(n);
  out.eigenvectors.reserve(n);
  for (std::size_t k : order) {
    out.eigenvalues.push_back(a(k, k).real());
    ComplexVector col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = v(i, k);
    fix_phase(col);
    out.eigenvectors.push_back(std::move(col));
  }
  return out;
}

double min_eigenvalue(const HermitianOperator& h) { return hermitian_eigen(h).eigenvalues.back(); }

double trace_norm(const HermitianOperator& h) {
  double s = 0.0;
  for (double l : hermitian_eigen(h).eigenvalues) s += std::abs(l);
  return s;
}

bool is_psd(const HermitianOperator& h, double tol) {
  if (tol < 0.0) throw InvalidArgument("is_psd: tolerance must be >= 0");
  return min_eigenvalue(h) >= -tol;
}

double trace_product(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dim() != b.dim()) throw DimensionError("trace_product: dimensions differ");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) s += a(i, j) * b(j, i);
  return s.real();
}

namespace {

HermitianOperator spectral_sum(const SpectralDecomposition& s, auto weight) {
  const std::size_t n = s.eigenvalues.size();
  CMatrix m(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double w = weight(s.eigenvalues[k]);
    if (w == 0.0) continue;
    const auto& v = s.eigenvectors[k];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) += w * v[i] * std::conj(v[j]);
  }
  return HermitianOperator(std::move(m));
}

}  // namespace

HermitianOperator positive_part(const HermitianOperator& h) {
  return spectral_sum(hermitian_eigen(h), [](double l) { return l > 0.0 ? l : 0.0; });
}

HermitianOperator negative_part(const HermitianOperator& h) {
  return spectral_sum(hermitian_eigen(h), [](double l) { return l < 0.0 ? -l : 0.0; });
}

HermitianOperator spectral_projector(const SpectralDecomposition& s, double lo, double hi) {
  return spectral_sum(s, [&](double l) { return (l >= lo && l <= hi) ? 1.0 : 0.0; });
}

HermitianOperator hermitian_part(const CMatrix& a) {
  CMatrix m = a + a.adjoint();
  m *= 0.5;
  return HermitianOperator(std::move(m));
}

DensityOperator::DensityOperator(HermitianOperator op) : op_(std::move(op)) {
  if (std::abs(op_.trace() - 1.0) > kTolerance)
    throw InvalidArgument("DensityOperator: trace " + std::to_string(op_.trace()) + " != 1");
  if (!is_psd(op_, kTolerance))
    throw InvalidArgument("DensityOperator: operator is not positive semidefinite");
}

DensityOperator DensityOperator::from_approximate(const HermitianOperator& op, double tol) {
  if (std::abs(op.trace() - 1.0) > tol)
    throw InvalidArgument("DensityOperator: trace " + std::to_string(op.trace()) + " != 1");
  const auto spec = hermitian_eigen(op);
  if (spec.eigenvalues.back() < -tol)
    throw InvalidArgument("DensityOperator: operator is not positive semidefinite");
  HermitianOperator clipped = spectral_sum(spec, [](double l) { return l > 0.0 ? l : 0.0; });
  clipped *= 1.0 / clipped.trace();
  return DensityOperator(std::move(clipped));
}

}  // namespace qsd
