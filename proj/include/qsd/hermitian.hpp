#pragma once

#include <cstddef>
#include <vector>

#include "qsd/matrix.hpp"

namespace qsd {

/// Complex square matrix with Hermitian symmetry. Construction symmetrizes
/// (H + H^dagger)/2 when the asymmetry is at most 1e-12 (scaled by the
/// largest entry) and rejects anything larger or non-finite.
class HermitianOperator {
 public:
  static constexpr double kAsymmetryTolerance = 1e-12;

  explicit HermitianOperator(CMatrix m);

  static HermitianOperator zero(std::size_t dim);
  static HermitianOperator identity(std::size_t dim);
  /// |v><v|
  static HermitianOperator projector(std::span<const Complex> v);

  std::size_t dim() const { return m_.dim(); }
  const CMatrix& matrix() const { return m_; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  double trace() const { return m_.trace().real(); }
  double max_abs() const { return m_.max_abs(); }

  HermitianOperator& operator+=(const HermitianOperator& rhs);
  HermitianOperator& operator-=(const HermitianOperator& rhs);
  HermitianOperator& operator*=(double s);

  friend HermitianOperator operator+(HermitianOperator a, const HermitianOperator& b) { return a += b; }
  friend HermitianOperator operator-(HermitianOperator a, const HermitianOperator& b) { return a -= b; }
  friend HermitianOperator operator*(HermitianOperator a, double s) { return a *= s; }
  friend HermitianOperator operator*(double s, HermitianOperator a) { return a *= s; }
  HermitianOperator operator-() const { return *this * -1.0; }

 private:
  struct Trusted {};
  HermitianOperator(CMatrix m, Trusted) : m_(std::move(m)) {}
  CMatrix m_;
};

/// Eigenvalues sorted descending; eigenvectors[i] pairs with eigenvalues[i]
/// and has its first non-negligible component real-positive.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  std::vector<ComplexVector> eigenvectors;

  CMatrix reconstruct() const;
};

/// Cyclic Jacobi. Throws ConvergenceError past the sweep cap.
SpectralDecomposition hermitian_eigen(const HermitianOperator& h);

double min_eigenvalue(const HermitianOperator& h);
double trace_norm(const HermitianOperator& h);
bool is_psd(const HermitianOperator& h, double tol);
/// tr[A B]; real for Hermitian A, B.
double trace_product(const HermitianOperator& a, const HermitianOperator& b);

/// Sum of lambda_i v_i v_i^dagger over eigenvalues with lambda_i > 0 (positive
/// part) or |lambda_i| over lambda_i < 0 (negative part, returned PSD).
HermitianOperator positive_part(const HermitianOperator& h);
HermitianOperator negative_part(const HermitianOperator& h);

/// Orthogonal projector onto the span of eigenvectors whose eigenvalue
/// satisfies lo <= lambda <= hi.
HermitianOperator spectral_projector(const SpectralDecomposition& s, double lo, double hi);

/// Hermitian part (A + A^dagger)/2 of an arbitrary square matrix.
HermitianOperator hermitian_part(const CMatrix& a);

/// Positive semidefinite, unit-trace operator.
class DensityOperator {
 public:
  static constexpr double kTolerance = 1e-10;

  explicit DensityOperator(HermitianOperator op);

  /// Accepts operators that are PSD and unit-trace within `tol`, clipping
  /// negative eigenvalues and renormalizing. Used for rounded input data.
  static DensityOperator from_approximate(const HermitianOperator& op, double tol);

  std::size_t dim() const { return op_.dim(); }
  const HermitianOperator& op() const { return op_; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return op_(i, j); }

 private:
  HermitianOperator op_;
};

}  // namespace qsd
