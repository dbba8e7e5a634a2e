#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "qsd/bloch.hpp"
#include "qsd/ensemble.hpp"

namespace qsd {

/// r_x and sigma_x with K = q_x rho_x + r_x sigma_x. The state is absent when
/// r_x <= 1e-12 (rho_x is identified with certainty).
struct ComplementaryState {
  double weight = 0.0;
  std::optional<DensityOperator> state;
};
using ComplementarySet = std::vector<ComplementaryState>;

enum class SolverPath { Trivial, Helstrom, Geometric, Shifted };

std::string_view to_string(SolverPath p);
/// Certificate tolerance appropriate for solutions from a given path.
double path_tolerance(SolverPath p);

struct DiscriminationSolution {
  double p_guess = 0.0;
  HermitianOperator symmetry_operator = HermitianOperator::zero(1);
  ComplementarySet complementary;
  /// One element per state; null measurements are explicit zero matrices.
  std::vector<HermitianOperator> povm;
  /// Indices with M_x != 0.
  std::vector<std::size_t> support;
  SolverPath path = SolverPath::Trivial;

  double tolerance() const { return path_tolerance(path); }
};

/// Closed form for N = 2 in any dimension.
DiscriminationSolution helstrom_two_state(const WeightedEnsemble& e);

/// Qubits with uniform priors via the minimum enclosing ball of {v_x/N}.
DiscriminationSolution solve_qubit_equal_priors(const WeightedEnsemble& e, std::uint64_t seed = 0);

/// Qubits with arbitrary priors via the shifted-ball dual.
DiscriminationSolution solve_qubit(const WeightedEnsemble& e);

/// N = 1 trivially, N = 2 by Helstrom, qubits by geometry (equal priors go to
/// the enclosing-ball path). Everything else throws UnsupportedInstance.
DiscriminationSolution solve(const WeightedEnsemble& e);

/// r_x = tr K - q_x, sigma_x = (K - q_x rho_x)/r_x. Throws InfeasibleError if
/// some K - q_x rho_x has an eigenvalue below -1e-8.
ComplementarySet complementary_states(const HermitianOperator& k, const WeightedEnsemble& e);

/// Qubit POVM from the dual optimum (t, k): M_x = a_x (I - u_x.sigma)/2 on
/// states whose complementary Bloch vector u_x is unit length, weights a_x
/// from convex_weights_for_center, zero elsewhere.
std::vector<HermitianOperator> reconstruct_povm(double t, const Vec3& k, const WeightedEnsemble& e);

}  // namespace qsd
