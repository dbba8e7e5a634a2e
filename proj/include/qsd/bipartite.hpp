#pragma once

#include <cstddef>

#include "qsd/hermitian.hpp"

namespace qsd {

/// |psi> in C^{dimA} (x) C^{dimB}; amplitude of |a>|b> at index a*dimB + b.
class PureBipartiteState {
 public:
  static constexpr double kNormTolerance = 1e-10;

  PureBipartiteState(std::size_t dim_a, std::size_t dim_b, ComplexVector amplitudes);

  std::size_t dim_a() const { return dim_a_; }
  std::size_t dim_b() const { return dim_b_; }
  const ComplexVector& amplitudes() const { return amp_; }
  const Complex& operator()(std::size_t a, std::size_t b) const { return amp_[a * dim_b_ + b]; }

 private:
  std::size_t dim_a_;
  std::size_t dim_b_;
  ComplexVector amp_;
};

enum class Subsystem { A, B };

/// psi(a, b) = sqrt(lambda_a) v_a(b) in the eigenbasis of rho, so tracing out
/// A returns rho.
PureBipartiteState purify(const DensityOperator& rho);

/// Reduced operator on the subsystem that is kept. `traced` names the
/// subsystem that is summed over.
HermitianOperator partial_trace(const PureBipartiteState& state, Subsystem traced);

/// tr_A[(M (x) I)|psi><psi|], the unnormalized operator steered on B.
HermitianOperator steer(const PureBipartiteState& state, const HermitianOperator& m_a);

}  // namespace qsd
