#include <doctest.h>

#include <numbers>

#include "qsd/certificate.hpp"
#include "qsd/error.hpp"
#include "qsd/families.hpp"
#include "qsd/oracle.hpp"
#include "qsd/solver.hpp"
#include "support.hpp"

using namespace qsd;

namespace {

constexpr double pi = std::numbers::pi;

double primal(const WeightedEnsemble& e, const std::vector<HermitianOperator>& povm) {
  double p = 0.0;
  for (std::size_t x = 0; x < e.size(); ++x) p += e.prior(x) * trace_product(povm[x], e.state(x).op());
  return p;
}

void check_solution_invariants(const WeightedEnsemble& e, const DiscriminationSolution& s, double tol) {
  const double tk = s.symmetry_operator.trace();
  CHECK(s.p_guess == doctest::Approx(tk).epsilon(1e-12));
  CHECK(std::abs(primal(e, s.povm) - s.p_guess) <= tol);
  REQUIRE(s.povm.size() == e.size());
  REQUIRE(s.complementary.size() == e.size());

  HermitianOperator sum = HermitianOperator::zero(e.dim());
  for (const auto& m : s.povm) {
    CHECK(min_eigenvalue(m) >= -tol);
    sum = sum + m;
  }
  CHECK(max_abs_diff(sum.matrix(), CMatrix::identity(e.dim())) <= tol);

  for (std::size_t x = 0; x < e.size(); ++x) {
    const auto& c = s.complementary[x];
    CHECK(c.weight == doctest::Approx(tk - e.prior(x)).epsilon(1e-12));
    CHECK(c.weight >= -1e-12);
    HermitianOperator rebuilt = e.weighted(x);
    if (c.state) {
      CHECK(c.state->op().trace() == doctest::Approx(1.0));
      rebuilt = rebuilt + c.state->op() * c.weight;
    }
    CHECK(max_abs_diff(rebuilt.matrix(), s.symmetry_operator.matrix()) <= tol);
    CHECK(min_eigenvalue(s.symmetry_operator - e.weighted(x)) >= -tol);
  }
  for (std::size_t x = 0; x < e.size(); ++x) {
    const bool listed = std::find(s.support.begin(), s.support.end(), x) != s.support.end();
    CHECK(listed == (s.povm[x].max_abs() > 1e-14));
  }
}

/// Best of a few random projective measurements; a lower bound on p_guess.
double random_primal(const WeightedEnsemble& e, std::mt19937_64& rng, int tries) {
  double best = 0.0;
  const std::size_t d = e.dim();
  for (int t = 0; t < tries; ++t) {
    const CMatrix u = test::random_unitary(rng, d);
    std::vector<HermitianOperator> povm(e.size(), HermitianOperator::zero(d));
    std::uniform_int_distribution<std::size_t> pick(0, e.size() - 1);
    for (std::size_t j = 0; j < d; ++j) {
      ComplexVector col(d);
      for (std::size_t i = 0; i < d; ++i) col[i] = u(i, j);
      const std::size_t x = pick(rng);
      povm[x] = povm[x] + HermitianOperator::projector(col);
    }
    best = std::max(best, primal(e, povm));
  }
  return best;
}

}  // namespace

TEST_CASE("helstrom examples") {
  // |0> vs |+> with equal priors.
  auto e = test::qubit_ensemble({0.5, 0.5}, {{0, 0, 1}, {1, 0, 0}});
  auto s = helstrom_two_state(e);
  CHECK(s.p_guess == doctest::Approx(0.5 * (1 + 1 / std::sqrt(2.0))).epsilon(1e-12));
  CHECK(s.path == SolverPath::Helstrom);
  check_solution_invariants(e, s, 1e-10);

  // Identical states: the larger prior wins.
  e = test::qubit_ensemble({0.7, 0.3}, {{0.1, 0.2, 0.3}, {0.1, 0.2, 0.3}});
  s = helstrom_two_state(e);
  CHECK(s.p_guess == doctest::Approx(0.7));
  CHECK(s.complementary[0].weight == doctest::Approx(0.0));
  CHECK_FALSE(s.complementary[0].state.has_value());
  check_solution_invariants(e, s, 1e-10);

  // Orthogonal states in dimension 4.
  std::vector<DensityOperator> st;
  ComplexVector a(4), b(4);
  a[0] = 1.0;
  b[3] = 1.0;
  st.emplace_back(HermitianOperator::projector(a));
  st.emplace_back(HermitianOperator::projector(b));
  const WeightedEnsemble orth({0.4, 0.6}, st);
  s = helstrom_two_state(orth);
  CHECK(s.p_guess == doctest::Approx(1.0).epsilon(1e-12));
  check_solution_invariants(orth, s, 1e-10);

  CHECK_THROWS_AS(helstrom_two_state(families::isosceles(0.3)), InvalidArgument);
}

TEST_CASE("property: helstrom matches the trace norm in any dimension") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int r = 0; r < 60; ++r) {
    const std::size_t d = 2 + r % 4;
    const double q = u(rng);
    const WeightedEnsemble e({q, 1 - q}, {test::random_density(rng, d), test::random_density(rng, d)});
    const auto s = helstrom_two_state(e);
    CHECK(s.p_guess == doctest::Approx(0.5 * (1 + trace_norm(e.weighted(0) - e.weighted(1)))).epsilon(1e-10));
    check_solution_invariants(e, s, 1e-9);
    CHECK(random_primal(e, rng, 20) <= s.p_guess + 1e-12);
  }
}

TEST_CASE("isosceles pure states") {
  for (double th : {0.2, 0.7, 1.2, pi / 2 - 0.01}) {
    const auto e = families::isosceles(th, 0.3);
    const auto s = solve(e);
    CHECK(s.path == SolverPath::Geometric);
    CHECK(s.p_guess == doctest::Approx((1 + std::sin(th)) / 3).epsilon(1e-10));
    CHECK(s.support == std::vector<std::size_t>{0, 2});
    CHECK(s.povm[1].max_abs() == 0.0);
    for (std::size_t x : {0u, 2u}) {
      const auto sp = hermitian_eigen(s.povm[x]).eigenvalues;
      CHECK(sp[0] == doctest::Approx(1.0));
      CHECK(std::abs(sp[1]) < 1e-10);
    }
    check_solution_invariants(e, s, 1e-8);
  }
  for (double th : {pi / 2 + 0.05, 2 * pi / 3, 3.0}) {
    const auto s = solve(families::isosceles(th));
    CHECK(s.p_guess == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
    CHECK(s.support.size() == 3);
  }
}

TEST_CASE("trine, rectangle and tetrahedron") {
  const auto trine = families::isosceles(2 * pi / 3);
  auto s = solve(trine);
  CHECK(s.p_guess == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(max_abs_diff(s.symmetry_operator.matrix(), CMatrix::identity(2) * (1.0 / 3.0)) < 1e-12);
  for (const auto& m : s.povm) CHECK(m.trace() == doctest::Approx(2.0 / 3.0));
  check_solution_invariants(trine, s, 1e-8);

  for (double th : {0.1, 0.5, 1.0, pi / 2 - 0.1}) {
    const auto e = families::rectangle(th, 0.2);
    s = solve(e);
    CHECK(s.p_guess == doctest::Approx(0.5).epsilon(1e-10));
    check_solution_invariants(e, s, 1e-8);
  }

  for (double f : {0.1, 0.5, 1.0}) {
    const auto e = families::tetrahedron(f);
    s = solve(e);
    CHECK(s.p_guess == doctest::Approx(0.25 * (1 + f)).epsilon(1e-10));
    CHECK(s.support.size() == 4);
    check_solution_invariants(e, s, 1e-8);
  }
}

TEST_CASE("single state and trivial inputs") {
  const auto e = test::qubit_ensemble({1.0}, {{0.3, 0.1, -0.2}});
  const auto s = solve(e);
  CHECK(s.path == SolverPath::Trivial);
  CHECK(s.p_guess == 1.0);
  check_solution_invariants(e, s, 1e-12);
}

TEST_CASE("unsupported instances are rejected") {
  std::mt19937_64 rng(12);
  std::vector<DensityOperator> st;
  for (int i = 0; i < 3; ++i) st.push_back(test::random_density(rng, 3));
  const WeightedEnsemble e({0.2, 0.3, 0.5}, st);
  CHECK_THROWS_AS(solve(e), UnsupportedInstance);
  CHECK_THROWS_AS(solve_qubit(e), DimensionError);
  CHECK_THROWS_AS(solve_qubit_equal_priors(test::qubit_ensemble({0.2, 0.8}, {{0, 0, 1}, {1, 0, 0}})),
                  InvalidArgument);
}

TEST_CASE("property: general-prior path agrees with helstrom and the enclosing ball") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int r = 0; r < 100; ++r) {
    const double q = u(rng);
    const auto e = test::qubit_ensemble({q, 1 - q}, {test::random_ball(rng), test::random_ball(rng)});
    CHECK(std::abs(solve_qubit(e).p_guess - helstrom_two_state(e).p_guess) < 1e-7);
  }
  for (int r = 0; r < 100; ++r) {
    const std::size_t n = 2 + r % 7;
    std::vector<Vec3> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(r % 2 ? test::random_unit(rng) : test::random_ball(rng));
    const auto e = families::uniform_qubits(v);
    const auto a = solve_qubit(e), b = solve_qubit_equal_priors(e);
    CHECK(std::abs(a.p_guess - b.p_guess) < 1e-7);
    check_solution_invariants(e, b, 1e-8);
    check_solution_invariants(e, a, 1e-6);
  }
}

TEST_CASE("property: qubit solutions satisfy the invariants and bound every measurement") {
  for (bool pure : {true, false})
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      const std::size_t n = 2 + seed % 6;
      const auto e = random_ensemble(2, n, pure, seed);
      const auto s = solve(e);
      check_solution_invariants(e, s, s.tolerance());
      std::mt19937_64 rng(seed);
      CHECK(random_primal(e, rng, 30) <= s.p_guess + 1e-9);
      CHECK(s.p_guess >= e.max_prior() - 1e-12);
      CHECK(s.p_guess <= 1.0 + 1e-12);
    }
}

TEST_CASE("property: priors near uniform stay close to the equal-prior optimum") {
  std::mt19937_64 rng(14);
  const double eps = 1e-3;
  for (int r = 0; r < 40; ++r) {
    const std::size_t n = 3 + r % 4;
    std::vector<Vec3> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(test::random_ball(rng));
    std::vector<double> q(n, 1.0 / static_cast<double>(n));
    q[0] += eps;
    q[1] -= eps;
    const auto near = test::qubit_ensemble(q, v);
    const auto s = solve(near);
    CHECK(s.path == SolverPath::Shifted);
    check_solution_invariants(near, s, s.tolerance());
    const double base = solve(families::uniform_qubits(v)).p_guess;
    // Both objectives differ by at most 2 eps pointwise.
    CHECK(std::abs(s.p_guess - base) <= 2 * eps + 1e-9);
  }
}

TEST_CASE("property: unitary covariance") {
  std::mt19937_64 rng(15);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto e = random_ensemble(2, 2 + seed % 5, seed % 2 == 0, 100 + seed);
    const CMatrix u = test::random_unitary(rng, 2);
    std::vector<DensityOperator> rotated;
    for (const auto& st : e.states()) rotated.emplace_back(test::conjugate(u, st.op()));
    const WeightedEnsemble f(e.priors(), rotated);
    const auto a = solve(e), b = solve(f);
    CHECK(std::abs(a.p_guess - b.p_guess) < 1e-7);
    CHECK(max_abs_diff(test::conjugate(u, a.symmetry_operator).matrix(), b.symmetry_operator.matrix()) < 1e-6);
  }
}

TEST_CASE("complementary states") {
  const auto trine = families::isosceles(2 * pi / 3);
  const auto c = complementary_states(HermitianOperator::identity(2) * (1.0 / 3.0), trine);
  for (std::size_t x = 0; x < 3; ++x) {
    CHECK(c[x].weight == doctest::Approx(1.0 / 3.0));
    REQUIRE(c[x].state.has_value());
    // sigma_x is the pure state orthogonal to rho_x.
    CHECK(std::abs(trace_product(c[x].state->op(), trine.state(x).op())) < 1e-12);
  }
  CHECK_THROWS_AS(complementary_states(HermitianOperator::identity(2) * 0.3, trine), InfeasibleError);
  CHECK_THROWS_AS(complementary_states(HermitianOperator::identity(3), trine), DimensionError);
}

TEST_CASE("povm reconstruction from a dual optimum") {
  const auto e = families::tetrahedron(0.6);
  const auto povm = reconstruct_povm(0.4, Vec3{}, e);
  for (std::size_t x = 0; x < 4; ++x) {
    CHECK(povm[x].trace() == doctest::Approx(0.5));
    CHECK(std::abs(hermitian_eigen(povm[x]).eigenvalues[1]) < 1e-10);
  }
  // A non-optimal dual point has no valid measurement.
  CHECK_THROWS_AS(reconstruct_povm(0.5, Vec3{}, e), InfeasibleError);
}
