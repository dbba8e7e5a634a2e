#pragma once

#include <array>
#include <cmath>

#include "qsd/hermitian.hpp"

namespace qsd {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }
  friend Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend Vec3 operator*(Vec3 a, double s) { return a *= s; }
  friend Vec3 operator*(double s, Vec3 a) { return a *= s; }
  friend Vec3 operator/(Vec3 a, double s) { return a *= 1.0 / s; }
  Vec3 operator-() const { return {-x, -y, -z}; }

  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

using BlochVector = Vec3;

/// Pauli X, Y, Z; |0> is the +1 eigenvector of Z.
const std::array<HermitianOperator, 3>& paulis();

/// rho = (I + v.sigma)/2, so v = (2 Re rho01, -2 Im rho01, rho00 - rho11).
BlochVector to_bloch(const DensityOperator& rho);
DensityOperator from_bloch(const BlochVector& v);

/// (t I + k.sigma)/2; the qubit parametrization of any 2x2 Hermitian operator.
HermitianOperator bloch_operator(double t, const Vec3& k);

struct BlochComponents {
  double t;
  Vec3 k;
};
/// Inverse of bloch_operator: t = tr H.
BlochComponents bloch_components(const HermitianOperator& h);

}  // namespace qsd
