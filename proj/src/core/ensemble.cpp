#include "qsd/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qsd/error.hpp"

namespace qsd {

WeightedEnsemble::WeightedEnsemble(std::vector<double> priors, std::vector<DensityOperator> states,
                                   std::optional<std::uint64_t> seed)
    : priors_(std::move(priors)), states_(std::move(states)), seed_(seed) {
  if (priors_.empty()) throw InvalidArgument("WeightedEnsemble: no states");
  if (priors_.size() != states_.size())
    throw InvalidArgument("WeightedEnsemble: priors and states differ in length");
  for (double q : priors_)
    if (!std::isfinite(q) || !(q > 0.0)) throw InvalidArgument("WeightedEnsemble: priors must be positive");
  const double total = std::accumulate(priors_.begin(), priors_.end(), 0.0);
  if (std::abs(total - 1.0) > kPriorTolerance) throw InvalidArgument("WeightedEnsemble: priors must sum to 1");
  for (const auto& s : states_)
    if (s.dim() != states_.front().dim()) throw DimensionError("WeightedEnsemble: states differ in dimension");
}

HermitianOperator WeightedEnsemble::weighted(std::size_t x) const { return priors_[x] * states_[x].op(); }

bool WeightedEnsemble::is_uniform(double tol) const {
  const double u = 1.0 / static_cast<double>(size());
  return std::all_of(priors_.begin(), priors_.end(), [&](double q) { return std::abs(q - u) <= tol; });
}

double WeightedEnsemble::max_prior() const { return *std::max_element(priors_.begin(), priors_.end()); }

}  // namespace qsd
