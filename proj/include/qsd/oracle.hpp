#pragma once

#include <cstdint>
#include <vector>

#include "qsd/ensemble.hpp"

namespace qsd {

/// Brute-force qubit dual: min over a lattice in [-1, 1]^3 of
/// max_x (q_x + |k - q_x v_x|). Refines in three nested stages (0.05 over the
/// cube, 0.005 within +-0.1, then `resolution` within +-0.01). The result is
/// an objective value, hence never below the true optimum.
double dual_grid_oracle(const WeightedEnsemble& e, double resolution);

/// Seeded random ensemble. Pure states are normalized complex Gaussian
/// vectors; mixed states are G G^dagger / tr for a complex Gaussian G. Priors
/// are flat-Dirichlet (sorted uniform spacings), resampled below 1e-6.
WeightedEnsemble random_ensemble(std::size_t dim, std::size_t n, bool pure, std::uint64_t seed);

/// (1/2) sum_x |p_x - 1/N|
double distance_from_uniform(const std::vector<double>& p);

/// P(x|y), x = guess, y = prepared state; columns sum to 1.
class ConditionalTable {
 public:
  explicit ConditionalTable(std::vector<std::vector<double>> rows);

  /// P(x|y) = tr[M_x rho_y]
  static ConditionalTable from_born(const WeightedEnsemble& e, const std::vector<HermitianOperator>& povm);

  std::size_t size() const { return p_.size(); }
  double operator()(std::size_t x, std::size_t y) const { return p_[x][y]; }
  std::vector<double> column(std::size_t y) const;

 private:
  std::vector<std::vector<double>> p_;
};

struct TableGuess {
  double p_guess_diag = 0.0;   // sum_y q_y P(y|y)
  double p_from_distance = 0.0;   // 1/N + sum_y q_y d(column y)
  /// P(y|y) >= 1/N and P(x|y) <= 1/N for x != y (within 1e-12); the two
  /// values are only expected to agree when this holds.
  bool premise_holds = false;
};

TableGuess guessing_from_table(const std::vector<double>& priors, const ConditionalTable& table);

}  // namespace qsd
