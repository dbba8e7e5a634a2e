#pragma once

#include <cstdint>
#include <vector>

#include "qsd/bloch.hpp"
#include "qsd/ensemble.hpp"

namespace qsd::families {

/// Bloch vector of cos(phi/2)|0> + sin(phi/2)|1>, i.e. (sin phi, 0, cos phi).
Vec3 xz_direction(double phi);

/// Equal-prior ensemble of the given Bloch vectors.
WeightedEnsemble uniform_qubits(const std::vector<Vec3>& bloch);

/// Pure states at Bloch angles theta0 + theta, theta0, theta0 - theta.
WeightedEnsemble isosceles(double theta, double theta0 = 0.0);

/// Two orthogonal pairs at Bloch angles theta0, theta0 - 2 theta and their
/// antipodes (psi_1 _|_ psi_3, psi_2 _|_ psi_4).
WeightedEnsemble rectangle(double theta, double theta0 = 0.0);

/// Vertices of a regular tetrahedron with |v| = f.
std::vector<Vec3> regular_tetrahedron(double f);
WeightedEnsemble tetrahedron(double f);

/// Uniformly random rotation matrix (rows), from a seeded quaternion.
std::array<Vec3, 3> random_rotation(std::uint64_t seed);
Vec3 rotate(const std::array<Vec3, 3>& r, const Vec3& v);

}  // namespace qsd::families
