#include "qsd/bipartite.hpp"

#include <cmath>

#include "qsd/error.hpp"

namespace qsd {

PureBipartiteState::PureBipartiteState(std::size_t dim_a, std::size_t dim_b, ComplexVector amplitudes)
    : dim_a_(dim_a), dim_b_(dim_b), amp_(std::move(amplitudes)) {
  if (dim_a_ == 0 || dim_b_ == 0) throw DimensionError("PureBipartiteState: dimensions must be >= 1");
  if (amp_.size() != dim_a_ * dim_b_)
    throw DimensionError("PureBipartiteState: amplitude count does not match dimA*dimB");
  for (const auto& z : amp_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw InvalidArgument("PureBipartiteState: non-finite amplitude");
  if (std::abs(norm(amp_) - 1.0) > kNormTolerance)
    throw InvalidArgument("PureBipartiteState: state is not normalized");
}

PureBipartiteState purify(const DensityOperator& rho) {
  const std::size_t d = rho.dim();
  const auto spec = hermitian_eigen(rho.op());
  ComplexVector amp(d * d);
  for (std::size_t a = 0; a < d; ++a) {
    const double w = std::sqrt(std::max(0.0, spec.eigenvalues[a]));
    for (std::size_t b = 0; b < d; ++b) amp[a * d + b] = w * spec.eigenvectors[a][b];
  }
  // Clipping tiny negative eigenvalues can shift the norm by ~1e-16.
  const double nrm = norm(amp);
  for (auto& z : amp) z /= nrm;
  return PureBipartiteState(d, d, std::move(amp));
}

HermitianOperator partial_trace(const PureBipartiteState& state, Subsystem traced) {
  const std::size_t da = state.dim_a();
  const std::size_t db = state.dim_b();
  if (traced == Subsystem::A) {
    CMatrix m(db);
    for (std::size_t b = 0; b < db; ++b)
      for (std::size_t bp = 0; bp < db; ++bp) {
        Complex s = 0.0;
        for (std::size_t a = 0; a < da; ++a) s += state(a, b) * std::conj(state(a, bp));
        m(b, bp) = s;
      }
    return HermitianOperator(std::move(m));
  }
  CMatrix m(da);
  for (std::size_t a = 0; a < da; ++a)
    for (std::size_t ap = 0; ap < da; ++ap) {
      Complex s = 0.0;
      for (std::size_t b = 0; b < db; ++b) s += state(a, b) * std::conj(state(ap, b));
      m(a, ap) = s;
    }
  return HermitianOperator(std::move(m));
}

HermitianOperator steer(const PureBipartiteState& state, const HermitianOperator& m_a) {
  const std::size_t da = state.dim_a();
  const std::size_t db = state.dim_b();
  if (m_a.dim() != da) throw DimensionError("steer: measurement dimension differs from dimA");
  // phi = (M (x) I) psi
  ComplexVector phi(da * db);
  for (std::size_t a = 0; a < da; ++a)
    for (std::size_t ap = 0; ap < da; ++ap) {
      const Complex w = m_a(a, ap);
      if (w == Complex{}) continue;
      for (std::size_t b = 0; b < db; ++b) phi[a * db + b] += w * state(ap, b);
    }
  CMatrix m(db);
  for (std::size_t b = 0; b < db; ++b)
    for (std::size_t bp = 0; bp < db; ++bp) {
      Complex s = 0.0;
      for (std::size_t a = 0; a < da; ++a) s += phi[a * db + b] * std::conj(state(a, bp));
      m(b, bp) = s;
    }
  // Hermitian up to rounding for Hermitian M.
  return hermitian_part(m);
}

}  // namespace qsd
