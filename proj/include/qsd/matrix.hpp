#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qsd {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Dense square complex matrix, row-major.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

  static CMatrix identity(std::size_t dim);
  /// a b^dagger
  static CMatrix outer(std::span<const Complex> a, std::span<const Complex> b);

  std::size_t dim() const { return dim_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

  std::span<const Complex> data() const { return data_; }

  CMatrix adjoint() const;
  CMatrix transpose() const;
  Complex trace() const;
  /// Entrywise max |a_ij|.
  double max_abs() const;
  double frobenius() const;

  CMatrix& operator+=(const CMatrix& rhs);
  CMatrix& operator-=(const CMatrix& rhs);
  CMatrix& operator*=(Complex s);

  friend CMatrix operator+(CMatrix lhs, const CMatrix& rhs) { return lhs += rhs; }
  friend CMatrix operator-(CMatrix lhs, const CMatrix& rhs) { return lhs -= rhs; }
  friend CMatrix operator*(CMatrix lhs, Complex s) { return lhs *= s; }
  friend CMatrix operator*(Complex s, CMatrix rhs) { return rhs *= s; }
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

ComplexVector operator*(const CMatrix& a, std::span<const Complex> v);

/// max_ij |a_ij - b_ij|; dimensions must agree.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

Complex inner(std::span<const Complex> a, std::span<const Complex> b);  // <a|b>
double norm(std::span<const Complex> v);

}  // namespace qsd
