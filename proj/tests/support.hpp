#pragma once

// Generators and small oracles shared by the test binaries.

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "qsd/bloch.hpp"
#include "qsd/ensemble.hpp"
#include "qsd/factory.hpp"
#include "qsd/hermitian.hpp"

namespace qsd::test {

inline CMatrix random_complex(std::mt19937_64& rng, std::size_t d) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix m(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

inline HermitianOperator random_hermitian(std::mt19937_64& rng, std::size_t d) {
  return hermitian_part(random_complex(rng, d));
}

inline DensityOperator random_density(std::mt19937_64& rng, std::size_t d) {
  CMatrix g = random_complex(rng, d);
  HermitianOperator w = hermitian_part(g * g.adjoint());
  return DensityOperator::from_approximate(w * (1.0 / w.trace()), 1e-9);
}

/// Product of Givens-type rotations exp(i a) on random coordinate planes.
inline CMatrix random_unitary(std::mt19937_64& rng, std::size_t d) {
  std::uniform_real_distribution<double> ang(0.0, 2.0 * 3.141592653589793);
  CMatrix u = CMatrix::identity(d);
  for (int rep = 0; rep < 4; ++rep)
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t q = p + 1; q < d; ++q) {
        const double th = ang(rng), ph = ang(rng);
        CMatrix r = CMatrix::identity(d);
        r(p, p) = std::cos(th);
        r(q, q) = std::cos(th);
        r(p, q) = -std::sin(th) * std::exp(Complex(0.0, ph));
        r(q, p) = std::sin(th) * std::exp(Complex(0.0, -ph));
        u = r * u;
      }
  for (std::size_t i = 0; i < d; ++i) {
    CMatrix ph = CMatrix::identity(d);
    ph(i, i) = std::exp(Complex(0.0, ang(rng)));
    u = ph * u;
  }
  return u;
}

inline HermitianOperator conjugate(const CMatrix& u, const HermitianOperator& h) {
  return hermitian_part(u * h.matrix() * u.adjoint());
}

inline Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vec3 v{g(rng), g(rng), g(rng)};
  return v / norm(v);
}

/// Point uniformly in the unit ball.
inline Vec3 random_ball(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return random_unit(rng) * std::cbrt(u(rng));
}

/// Direct 2x2 trace norm |a b; b* c| via the closed-form eigenvalues.
inline double qubit_trace_norm(const HermitianOperator& h) {
  const double a = h(0, 0).real(), c = h(1, 1).real();
  const double mean = 0.5 * (a + c);
  const double rad = std::sqrt(0.25 * (a - c) * (a - c) + std::norm(h(0, 1)));
  return std::abs(mean + rad) + std::abs(mean - rad);
}

inline WeightedEnsemble qubit_ensemble(const std::vector<double>& q, const std::vector<Vec3>& v) {
  std::vector<DensityOperator> s;
  for (const auto& b : v) s.push_back(from_bloch(b));
  return WeightedEnsemble(q, std::move(s));
}

/// Random admissible qubit class data; returns nullopt when the draw leaves
/// some q_x rho_x non-PSD.
inline std::optional<QubitClassSpec> random_class_spec(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  QubitClassSpec s;
  const std::size_t n = 2 + rng() % 5;
  // Directions balanced by weights: random unit vectors plus the one that closes the sum.
  Vec3 acc;
  std::vector<double> raw;
  for (std::size_t x = 0; x + 1 < n; ++x) {
    const Vec3 d = random_unit(rng);
    const double w = 0.2 + u(rng);
    s.directions.push_back(d);
    raw.push_back(w);
    acc += w * d;
  }
  if (norm(acc) < 1e-3) return std::nullopt;
  s.directions.push_back(-acc / norm(acc));
  raw.push_back(norm(acc));
  double tot = 0.0;
  for (double w : raw) tot += w;
  for (double w : raw) s.weights.push_back(2.0 * w / tot);

  s.t = 0.3 + 0.7 * u(rng);
  s.k = 0.3 * s.t * random_ball(rng);
  double qtot = 0.0;
  for (std::size_t x = 0; x < n; ++x) s.priors.push_back(0.5 + u(rng));
  for (double q : s.priors) qtot += q;
  for (auto& q : s.priors) q /= qtot;
  for (std::size_t x = 0; x < n; ++x) {
    if (s.priors[x] >= s.t) return std::nullopt;
    const Vec3 v = (s.k - (s.t - s.priors[x]) * s.directions[x]) / s.priors[x];
    if (norm(v) > 1.0) return std::nullopt;
  }
  return s;
}

}  // namespace qsd::test
