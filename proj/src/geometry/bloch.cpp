#include "qsd/bloch.hpp"

#include "qsd/error.hpp"

namespace qsd {

const std::array<HermitianOperator, 3>& paulis() {
  static const std::array<HermitianOperator, 3> p = [] {
    CMatrix x(2), y(2), z(2);
    x(0, 1) = 1.0;
    x(1, 0) = 1.0;
    y(0, 1) = Complex(0.0, -1.0);
    y(1, 0) = Complex(0.0, 1.0);
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    return std::array<HermitianOperator, 3>{HermitianOperator(x), HermitianOperator(y), HermitianOperator(z)};
  }();
  return p;
}

HermitianOperator bloch_operator(double t, const Vec3& k) {
  CMatrix m(2);
  m(0, 0) = 0.5 * (t + k.z);
  m(1, 1) = 0.5 * (t - k.z);
  m(0, 1) = 0.5 * Complex(k.x, -k.y);
  m(1, 0) = 0.5 * Complex(k.x, k.y);
  return HermitianOperator(std::move(m));
}

BlochComponents bloch_components(const HermitianOperator& h) {
  if (h.dim() != 2) throw DimensionError("bloch_components: operator is not 2x2");
  const Complex h01 = h(0, 1);
  return {h.trace(), {2.0 * h01.real(), -2.0 * h01.imag(), h(0, 0).real() - h(1, 1).real()}};
}

BlochVector to_bloch(const DensityOperator& rho) {
  if (rho.dim() != 2) throw DimensionError("to_bloch: state is not a qubit");
  return bloch_components(rho.op()).k;
}

DensityOperator from_bloch(const BlochVector& v) {
  if (norm(v) > 1.0 + 1e-10) throw InvalidArgument("from_bloch: Bloch vector longer than 1");
  return DensityOperator(bloch_operator(1.0, v));
}

}  // namespace qsd
