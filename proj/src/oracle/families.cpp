#include "qsd/families.hpp"

#include <cmath>
#include <random>

#include "qsd/error.hpp"

namespace qsd::families {

Vec3 xz_direction(double phi) { return {std::sin(phi), 0.0, std::cos(phi)}; }

WeightedEnsemble uniform_qubits(const std::vector<Vec3>& bloch) {
  if (bloch.empty()) throw InvalidArgument("uniform_qubits: no states");
  std::vector<DensityOperator> s;
  for (const auto& v : bloch) s.push_back(from_bloch(v));
  return WeightedEnsemble(std::vector<double>(bloch.size(), 1.0 / static_cast<double>(bloch.size())), std::move(s));
}

WeightedEnsemble isosceles(double theta, double theta0) {
  return uniform_qubits({xz_direction(theta0 + theta), xz_direction(theta0), xz_direction(theta0 - theta)});
}

WeightedEnsemble rectangle(double theta, double theta0) {
  const double a = theta0, b = theta0 - 2.0 * theta;
  return uniform_qubits({xz_direction(a), xz_direction(b), -xz_direction(a), -xz_direction(b)});
}

std::vector<Vec3> regular_tetrahedron(double f) {
  const double s = f / std::sqrt(3.0);
  return {Vec3{1, 1, 1} * s, Vec3{1, -1, -1} * s, Vec3{-1, 1, -1} * s, Vec3{-1, -1, 1} * s};
}

WeightedEnsemble tetrahedron(double f) { return uniform_qubits(regular_tetrahedron(f)); }

std::array<Vec3, 3> random_rotation(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  double w = g(rng), x = g(rng), y = g(rng), z = g(rng);
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  w /= n;
  x /= n;
  y /= n;
  z /= n;
  return {Vec3{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
          Vec3{2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
          Vec3{2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)}};
}

Vec3 rotate(const std::array<Vec3, 3>& r, const Vec3& v) { return {dot(r[0], v), dot(r[1], v), dot(r[2], v)}; }

}  // namespace qsd::families
