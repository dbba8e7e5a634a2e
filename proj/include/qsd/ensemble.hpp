#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qsd/hermitian.hpp"

namespace qsd {

/// Priors q_x and states rho_x of a discrimination problem.
class WeightedEnsemble {
 public:
  static constexpr double kPriorTolerance = 1e-10;

  WeightedEnsemble(std::vector<double> priors, std::vector<DensityOperator> states,
                   std::optional<std::uint64_t> seed = std::nullopt);

  std::size_t size() const { return priors_.size(); }
  std::size_t dim() const { return states_.front().dim(); }
  const std::vector<double>& priors() const { return priors_; }
  const std::vector<DensityOperator>& states() const { return states_; }
  double prior(std::size_t x) const { return priors_[x]; }
  const DensityOperator& state(std::size_t x) const { return states_[x]; }
  /// Seed of the generator that produced this ensemble, if any.
  const std::optional<std::uint64_t>& seed() const { return seed_; }

  /// q_x rho_x
  HermitianOperator weighted(std::size_t x) const;
  bool is_uniform(double tol = kPriorTolerance) const;
  double max_prior() const;

 private:
  std::vector<double> priors_;
  std::vector<DensityOperator> states_;
  std::optional<std::uint64_t> seed_;
};

}  // namespace qsd
