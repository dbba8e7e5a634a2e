#include "qsd/certificate.hpp"

#include <algorithm>
#include <cmath>

#include "qsd/error.hpp"

namespace qsd {

namespace {

void check_shapes(const WeightedEnsemble& e, const std::vector<HermitianOperator>& povm, double tol) {
  if (!(tol >= 0.0)) throw InvalidArgument("certificate: tolerance must be nonnegative");
  if (povm.size() != e.size()) throw DimensionError("certificate: POVM length differs from ensemble size");
  for (const auto& m : povm)
    if (m.dim() != e.dim()) throw DimensionError("certificate: POVM element dimension differs from states");
}

void povm_residuals(const std::vector<HermitianOperator>& povm, KktCertificate& c) {
  const std::size_t d = povm.front().dim();
  CMatrix sum(d);
  double neg = 0.0;
  for (const auto& m : povm) {
    sum += m.matrix();
    neg = std::max(neg, -min_eigenvalue(m));
  }
  c.completeness = max_abs_diff(sum, CMatrix::identity(d));
  c.povm_positivity = neg;
}

void decide(KktCertificate& c, double tol) {
  c.tolerance = tol;
  c.pass = c.worst() <= tol;
}

}  // namespace

double KktCertificate::worst() const {
  double w = std::max(completeness, povm_positivity);
  for (const auto& r : {symmetry, dual_feasibility, orthogonality, legacy_pairwise, legacy_operator})
    if (r) w = std::max(w, *r);
  return w;
}

KktCertificate verify_kkt(const WeightedEnsemble& e, const HermitianOperator& k,
                          const std::vector<HermitianOperator>& povm, double tol) {
  if (k.dim() != e.dim()) throw DimensionError("verify_kkt: K and states differ in dimension");
  check_shapes(e, povm, tol);
  KktCertificate c;
  const double tr = k.trace();
  double sym = 0.0, feas = 0.0, orth = 0.0;
  for (std::size_t x = 0; x < e.size(); ++x) {
    const HermitianOperator gap = k - e.weighted(x);
    feas = std::max(feas, -min_eigenvalue(gap));
    const double r = tr - e.prior(x);
    // sigma_x is the unit-trace PSD part of the gap, absent for r_x ~ 0.
    CMatrix rs(e.dim());
    if (r > 1e-12) {
      const HermitianOperator clipped = positive_part(gap);
      const double ct = clipped.trace();
      if (ct > 0.0) rs = (clipped * (r / ct)).matrix();
    }
    sym = std::max(sym, max_abs_diff(gap.matrix(), rs));
    orth = std::max(orth, std::abs(trace_product(povm[x], gap)));
  }
  c.symmetry = sym;
  c.dual_feasibility = feas;
  c.orthogonality = orth;
  povm_residuals(povm, c);
  decide(c, tol);
  return c;
}

KktCertificate verify_legacy_conditions(const WeightedEnsemble& e, const std::vector<HermitianOperator>& povm,
                                        double tol) {
  check_shapes(e, povm, tol);
  const std::size_t n = e.size();
  const std::size_t d = e.dim();
  KktCertificate c;

  std::vector<HermitianOperator> w;
  for (std::size_t x = 0; x < n; ++x) w.push_back(e.weighted(x));

  double pair = 0.0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) continue;
      const CMatrix prod = povm[x].matrix() * (w[x] - w[y]).matrix() * povm[y].matrix();
      pair = std::max(pair, prod.max_abs());
    }

  CMatrix gamma(d);
  for (std::size_t x = 0; x < n; ++x) gamma += w[x].matrix() * povm[x].matrix();
  // Optimal candidates make gamma Hermitian; its anti-Hermitian part counts
  // against the operator condition.
  const double skew = 0.5 * (gamma - gamma.adjoint()).max_abs();
  const HermitianOperator g = hermitian_part(gamma);
  double op = skew;
  for (std::size_t y = 0; y < n; ++y) op = std::max(op, -min_eigenvalue(g - w[y]));

  c.legacy_pairwise = pair;
  c.legacy_operator = std::max(0.0, op);
  povm_residuals(povm, c);
  decide(c, tol);
  return c;
}

ProbabilityForms probability_forms(const WeightedEnsemble& e, const DiscriminationSolution& s) {
  const auto& k = s.symmetry_operator;
  if (k.dim() != e.dim()) throw DimensionError("probability_forms: K and states differ in dimension");
  check_shapes(e, s.povm, 0.0);
  const double n = static_cast<double>(e.size());
  ProbabilityForms f;
  f.p_dual = k.trace();
  double rsum = 0.0, dsum = 0.0, psum = 0.0;
  for (std::size_t x = 0; x < e.size(); ++x) {
    f.p_primal += e.prior(x) * trace_product(s.povm[x], e.state(x).op());
    rsum += f.p_dual - e.prior(x);
    dsum += trace_norm(k - e.weighted(x));
    const double px = e.prior(x) / f.p_dual;
    f.steering_probs.push_back(px);
    psum += px;
  }
  f.p_average = 1.0 / n + rsum / n;
  f.p_distance = 1.0 / n + dsum / n;
  f.p_steering = 1.0 / psum;
  const auto v = {f.p_primal, f.p_dual, f.p_average, f.p_distance, f.p_steering};
  f.spread = std::max(v) - std::min(v);
  return f;
}

bool equivalence_check(const HermitianOperator& k1, const HermitianOperator& k2, double tol) {
  if (k1.dim() != k2.dim()) throw DimensionError("equivalence_check: operators differ in dimension");
  const auto a = hermitian_eigen(k1).eigenvalues;
  const auto b = hermitian_eigen(k2).eigenvalues;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol) return false;
  return true;
}

}  // namespace qsd
