#include "qsd/solver.hpp"

#include <cmath>
#include <limits>

#include "qsd/enclosing_ball.hpp"
#include "qsd/error.hpp"

namespace qsd {

std::string_view to_string(SolverPath p) {
  switch (p) {
    case SolverPath::Trivial: return "trivial";
    case SolverPath::Helstrom: return "helstrom";
    case SolverPath::Geometric: return "geometric";
    case SolverPath::Shifted: return "shifted";
  }
  return "unknown";
}

double path_tolerance(SolverPath p) { return p == SolverPath::Shifted ? 1e-6 : 1e-8; }

namespace {

constexpr double kDegenerateWeight = 1e-12;
constexpr double kFeasibilityTolerance = 1e-8;
constexpr double kSupportTolerance = 1e-7;

std::vector<std::size_t> nonzero_elements(const std::vector<HermitianOperator>& povm) {
  std::vector<std::size_t> s;
  for (std::size_t x = 0; x < povm.size(); ++x)
    if (povm[x].max_abs() > 1e-14) s.push_back(x);
  return s;
}

DiscriminationSolution finish(double p_guess, HermitianOperator k, std::vector<HermitianOperator> povm,
                              const WeightedEnsemble& e, SolverPath path) {
  DiscriminationSolution sol;
  sol.p_guess = p_guess;
  sol.complementary = complementary_states(k, e);
  sol.symmetry_operator = std::move(k);
  sol.support = nonzero_elements(povm);
  sol.povm = std::move(povm);
  sol.path = path;
  return sol;
}

std::vector<Vec3> bloch_vectors(const WeightedEnsemble& e) {
  std::vector<Vec3> v;
  for (const auto& s : e.states()) v.push_back(to_bloch(s));
  return v;
}

void require_qubits(const WeightedEnsemble& e, const char* who) {
  if (e.dim() != 2) throw DimensionError(std::string(who) + ": states are not qubits");
}

DiscriminationSolution trivial(const WeightedEnsemble& e) {
  std::vector<HermitianOperator> povm{HermitianOperator::identity(e.dim())};
  return finish(1.0, e.state(0).op(), std::move(povm), e, SolverPath::Trivial);
}

}  // namespace

ComplementarySet complementary_states(const HermitianOperator& k, const WeightedEnsemble& e) {
  if (k.dim() != e.dim()) throw DimensionError("complementary_states: K and states differ in dimension");
  const double tr = k.trace();
  ComplementarySet out;
  out.reserve(e.size());
  for (std::size_t x = 0; x < e.size(); ++x) {
    const HermitianOperator gap = k - e.weighted(x);
    const auto spec = hermitian_eigen(gap);
    if (spec.eigenvalues.back() < -kFeasibilityTolerance)
      throw InfeasibleError("complementary_states: K - q_x rho_x is not PSD for x = " + std::to_string(x));
    ComplementaryState cs;
    cs.weight = tr - e.prior(x);
    if (cs.weight > kDegenerateWeight) {
      HermitianOperator clipped = positive_part(gap);
      const double ct = clipped.trace();
      if (ct > 0.0) cs.state.emplace(clipped * (1.0 / ct));
    }
    out.push_back(std::move(cs));
  }
  return out;
}

std::vector<HermitianOperator> reconstruct_povm(double t, const Vec3& k, const WeightedEnsemble& e) {
  require_qubits(e, "reconstruct_povm");
  const std::size_t n = e.size();
  std::vector<HermitianOperator> povm(n, HermitianOperator::zero(2));

  for (std::size_t x = 0; x < n; ++x)
    if (t - e.prior(x) <= kDegenerateWeight) {
      // K = q_x rho_x: always guessing x is optimal.
      povm[x] = HermitianOperator::identity(2);
      return povm;
    }

  const auto v = bloch_vectors(e);
  std::vector<std::size_t> support;
  std::vector<Vec3> dirs;
  for (std::size_t x = 0; x < n; ++x) {
    // Active constraint t - q_x = |k - q_x v_x|. The slack is absolute below
    // r_x = 0.01 so that tiny complementary weights do not amplify rounding.
    const double r = t - e.prior(x);
    const Vec3 w = k - e.prior(x) * v[x];
    const double len = norm(w);
    if (r - len <= kSupportTolerance * std::max(r, 1e-2) && len > 0.0) {
      support.push_back(x);
      dirs.push_back(w / len);
    }
  }
  if (support.empty()) throw InfeasibleError("reconstruct_povm: no state touches the dual boundary");
  std::vector<double> lambda;
  try {
    lambda = convex_weights_for_center(dirs, Vec3{});
  } catch (const InfeasibleError& ex) {
    throw InternalError(std::string("reconstruct_povm: ") + ex.what());
  }
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (lambda[i] == 0.0) continue;
    const double a = 2.0 * lambda[i];
    povm[support[i]] = bloch_operator(a, -a * dirs[i]);
  }
  return povm;
}

DiscriminationSolution helstrom_two_state(const WeightedEnsemble& e) {
  if (e.size() != 2) throw InvalidArgument("helstrom_two_state: ensemble must have exactly two states");
  const HermitianOperator a = e.weighted(0);
  const HermitianOperator delta = a - e.weighted(1);
  const auto spec = hermitian_eigen(delta);
  const double scale = std::max(1.0, delta.max_abs());
  // Kernel directions go to M1; any split of the kernel is optimal.
  HermitianOperator m1 = spectral_projector(spec, -1e-14 * scale, std::numeric_limits<double>::infinity());
  HermitianOperator m2 = HermitianOperator::identity(e.dim()) - m1;
  double tnorm = 0.0;
  for (double l : spec.eigenvalues) tnorm += std::abs(l);
  HermitianOperator k = a + negative_part(delta);
  return finish(0.5 * (1.0 + tnorm), std::move(k), {std::move(m1), std::move(m2)}, e, SolverPath::Helstrom);
}

DiscriminationSolution solve_qubit_equal_priors(const WeightedEnsemble& e, std::uint64_t seed) {
  require_qubits(e, "solve_qubit_equal_priors");
  if (!e.is_uniform()) throw InvalidArgument("solve_qubit_equal_priors: priors are not uniform");
  const double inv_n = 1.0 / static_cast<double>(e.size());
  std::vector<Vec3> pts = bloch_vectors(e);
  for (auto& p : pts) p *= inv_n;
  const BallResult ball = min_enclosing_ball(pts, seed);
  const double t = inv_n + ball.radius;
  auto povm = reconstruct_povm(t, ball.center, e);
  return finish(t, bloch_operator(t, ball.center), std::move(povm), e, SolverPath::Geometric);
}

DiscriminationSolution solve_qubit(const WeightedEnsemble& e) {
  require_qubits(e, "solve_qubit");
  const auto v = bloch_vectors(e);
  std::vector<Vec3> pts;
  for (std::size_t x = 0; x < e.size(); ++x) pts.push_back(e.prior(x) * v[x]);
  const ShiftedBallResult r = shifted_ball_dual(pts, e.priors());
  auto povm = reconstruct_povm(r.value, r.center, e);
  return finish(r.value, bloch_operator(r.value, r.center), std::move(povm), e, SolverPath::Shifted);
}

DiscriminationSolution solve(const WeightedEnsemble& e) {
  if (e.size() == 1) return trivial(e);
  if (e.size() == 2) return helstrom_two_state(e);
  if (e.dim() == 2) return e.is_uniform() ? solve_qubit_equal_priors(e) : solve_qubit(e);
  throw UnsupportedInstance(
      "solve: no closed-form solver for N >= 3 states in dimension >= 3; build a candidate and use verify_kkt");
}

}  // namespace qsd
