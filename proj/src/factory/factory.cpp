#include "qsd/factory.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "qsd/bipartite.hpp"
#include "qsd/error.hpp"
#include "qsd/real_linalg.hpp"

namespace qsd {

SteeringMeasurement::SteeringMeasurement(HermitianOperator m0) : m0_(std::move(m0)) {
  const auto spec = hermitian_eigen(m0_);
  if (spec.eigenvalues.back() < -kTolerance || spec.eigenvalues.front() > 1.0 + kTolerance)
    throw InvalidArgument("SteeringMeasurement: M0 must satisfy 0 <= M0 <= I");
}

namespace {

HermitianOperator normalized(const HermitianOperator& h) { return h * (1.0 / h.trace()); }

std::vector<HermitianOperator> qubit_povm(const HermitianOperator& k, const WeightedEnsemble& e) {
  const auto c = bloch_components(k);
  return reconstruct_povm(c.t, c.k, e);
}

// M_x = a_x P_x with P_x the kernel projector of K - q_x rho_x and a_x >= 0
// from nonnegative least squares on sum_x M_x = I.
std::vector<HermitianOperator> kernel_povm(const HermitianOperator& k, const WeightedEnsemble& e) {
  const std::size_t n = e.size();
  const std::size_t d = e.dim();
  std::vector<HermitianOperator> proj;
  for (std::size_t x = 0; x < n; ++x) {
    const auto spec = hermitian_eigen(k - e.weighted(x));
    proj.push_back(spectral_projector(spec, -std::numeric_limits<double>::infinity(), 1e-9));
  }
  linalg::RMatrix a(2 * d * d, n);
  std::vector<double> b(2 * d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const std::size_t row = 2 * (i * d + j);
      b[row] = i == j ? 1.0 : 0.0;
      for (std::size_t x = 0; x < n; ++x) {
        a(row, x) = proj[x](i, j).real();
        a(row + 1, x) = proj[x](i, j).imag();
      }
    }
  const auto w = linalg::nnls(a, b);
  std::vector<HermitianOperator> povm;
  for (std::size_t x = 0; x < n; ++x) povm.push_back(proj[x] * w[x]);
  return povm;
}

}  // namespace

FactoryOutput generate_from_symmetry_operator(const HermitianOperator& k,
                                              const std::vector<SteeringMeasurement>& measurements) {
  if (measurements.empty()) throw InvalidArgument("generate_from_symmetry_operator: no steering measurements");
  if (!is_psd(k, 1e-10)) throw InvalidArgument("generate_from_symmetry_operator: K is not PSD");
  const double tr = k.trace();
  if (!(tr > 0.0) || tr > 1.0 + 1e-10)
    throw InvalidArgument("generate_from_symmetry_operator: tr K must lie in (0, 1]");

  const HermitianOperator kt = normalized(k);
  const PureBipartiteState psi = purify(DensityOperator::from_approximate(kt, 1e-9));

  std::vector<double> p;
  std::vector<HermitianOperator> steered;
  for (const auto& m : measurements) {
    if (m.m0().dim() != k.dim())
      throw DimensionError("generate_from_symmetry_operator: measurement dimension differs from K");
    HermitianOperator r = steer(psi, m.m0());
    const double px = r.trace();
    if (px <= 1e-12) throw DegenerateError("generate_from_symmetry_operator: steering outcome never fires");
    p.push_back(px);
    steered.push_back(std::move(r));
  }
  const double psum = std::accumulate(p.begin(), p.end(), 0.0);

  std::vector<double> q;
  std::vector<DensityOperator> rho;
  ComplementarySet comp;
  for (std::size_t x = 0; x < p.size(); ++x) {
    q.push_back(p[x] / psum);
    rho.push_back(DensityOperator::from_approximate(steered[x] * (1.0 / p[x]), 1e-9));
    ComplementaryState cs;
    cs.weight = (1.0 - p[x]) / psum;
    if (1.0 - p[x] > 1e-12)
      cs.state.emplace(DensityOperator::from_approximate(positive_part(kt - steered[x]) * (1.0 / (1.0 - p[x])), 1e-9));
    comp.push_back(std::move(cs));
  }
  // Renormalize priors exactly so the ensemble invariant holds.
  const double qsum = std::accumulate(q.begin(), q.end(), 0.0);
  for (auto& v : q) v /= qsum;
  WeightedEnsemble e(std::move(q), std::move(rho));

  HermitianOperator natural = kt * (1.0 / psum);
  std::vector<HermitianOperator> povm;
  try {
    povm = e.dim() == 2 ? qubit_povm(natural, e) : kernel_povm(natural, e);
  } catch (const Error&) {
    povm.assign(e.size(), HermitianOperator::zero(e.dim()));
  }
  KktCertificate cert = verify_kkt(e, k, povm, kFactoryTolerance);
  const bool ok = cert.pass;
  return FactoryOutput{std::move(e), std::move(comp), std::move(p), std::move(natural), std::move(povm),
                       std::move(cert), ok};
}

FactoryOutput generate_qubit_class_element(const QubitClassSpec& s) {
  const std::size_t n = s.directions.size();
  if (n == 0 || s.weights.size() != n || s.priors.size() != n)
    throw InvalidArgument("generate_qubit_class_element: directions, weights and priors differ in length");
  double asum = 0.0;
  Vec3 bal;
  for (std::size_t x = 0; x < n; ++x) {
    if (std::abs(norm(s.directions[x]) - 1.0) > 1e-9)
      throw InvalidArgument("generate_qubit_class_element: directions must be unit vectors");
    if (s.weights[x] < 0.0) throw InvalidArgument("generate_qubit_class_element: weights must be nonnegative");
    asum += s.weights[x];
    bal += s.weights[x] * s.directions[x];
  }
  if (std::abs(asum - 2.0) > 1e-9) throw InvalidArgument("generate_qubit_class_element: weights must sum to 2");
  if (norm(bal) > 1e-9) throw InvalidArgument("generate_qubit_class_element: sum a_x u_x must vanish");

  std::vector<DensityOperator> rho;
  std::vector<HermitianOperator> povm;
  ComplementarySet comp;
  std::vector<double> p;
  for (std::size_t x = 0; x < n; ++x) {
    const double q = s.priors[x];
    const double r = s.t - q;
    if (!(q > 0.0)) throw InvalidArgument("generate_qubit_class_element: priors must be positive");
    if (!(r > 0.0)) throw InfeasibleError("generate_qubit_class_element: need t > q_x for every x");
    const Vec3 v = (s.k - r * s.directions[x]) / q;
    if (norm(v) > 1.0 + 1e-10)
      throw InfeasibleError("generate_qubit_class_element: q_x rho_x is not PSD for x = " + std::to_string(x));
    // Clamp the 1e-10 slack so the state is exactly physical.
    const Vec3 vc = norm(v) > 1.0 ? v / norm(v) : v;
    rho.push_back(from_bloch(vc));
    povm.push_back(bloch_operator(s.weights[x], -s.weights[x] * s.directions[x]));
    comp.push_back({r, from_bloch(s.directions[x])});
    p.push_back(q / s.t);
  }
  WeightedEnsemble e(s.priors, std::move(rho));
  HermitianOperator k = bloch_operator(s.t, s.k);
  KktCertificate cert = verify_kkt(e, k, povm, kFactoryTolerance);
  const bool ok = cert.pass;
  return FactoryOutput{std::move(e), std::move(comp), std::move(p), std::move(k), std::move(povm),
                       std::move(cert), ok};
}

FactoryOutput identity_class_example(std::size_t d) {
  if (d < 2) throw InvalidArgument("identity_class_example: d must be >= 2");
  std::vector<SteeringMeasurement> m;
  for (std::size_t x = 0; x < d; ++x) {
    ComplexVector e(d);
    e[x] = 1.0;
    m.emplace_back(HermitianOperator::projector(e));
  }
  return generate_from_symmetry_operator(HermitianOperator::identity(d) * (1.0 / static_cast<double>(d)), m);
}

SteeringMeasurement steering_measurement_for(const HermitianOperator& k, const HermitianOperator& target) {
  if (k.dim() != target.dim()) throw DimensionError("steering_measurement_for: dimensions differ");
  const auto spec = hermitian_eigen(normalized(k));
  const std::size_t d = k.dim();
  if (spec.eigenvalues.back() <= 1e-12) throw DegenerateError("steering_measurement_for: K is rank deficient");
  // Steering maps M to V sqrt(L) M^T sqrt(L) V^dagger, with V the
  // eigenvectors of K/tr K as columns; invert that map.
  CMatrix w(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t a = 0; a < d; ++a) w(i, a) = spec.eigenvectors[a][i] / std::sqrt(spec.eigenvalues[a]);
  const CMatrix mt = w.adjoint() * target.matrix() * w;
  return SteeringMeasurement(hermitian_part(mt.transpose()));
}

}  // namespace qsd
