#include <doctest.h>

#include <numbers>

#include "qsd/bipartite.hpp"
#include "qsd/error.hpp"
#include "qsd/factory.hpp"
#include "qsd/families.hpp"
#include "support.hpp"

using namespace qsd;

namespace {

constexpr double pi = std::numbers::pi;

HermitianOperator basis_projector(std::size_t d, std::size_t i) {
  ComplexVector v(d);
  v[i] = 1.0;
  return HermitianOperator::projector(v);
}

/// K/tr K = p_x rho_x + (1 - p_x) sigma_x for every x.
void check_steering_identity(const HermitianOperator& k, const FactoryOutput& out) {
  const HermitianOperator kt = k * (1.0 / k.trace());
  for (std::size_t x = 0; x < out.ensemble.size(); ++x) {
    const double p = out.steering_probs[x];
    HermitianOperator rebuilt = out.ensemble.state(x).op() * p;
    if (out.complementary[x].state) rebuilt = rebuilt + out.complementary[x].state->op() * (1.0 - p);
    CHECK(max_abs_diff(rebuilt.matrix(), kt.matrix()) < 1e-9);
  }
}

}  // namespace

TEST_CASE("steering measurement validation") {
  CHECK_NOTHROW(SteeringMeasurement(HermitianOperator::identity(2) * 0.5));
  CHECK_THROWS_AS(SteeringMeasurement(HermitianOperator::identity(2) * 1.1), InvalidArgument);
  CHECK_THROWS_AS(SteeringMeasurement(HermitianOperator::identity(2) * -0.1), InvalidArgument);
  const SteeringMeasurement m(basis_projector(3, 1));
  CHECK(max_abs_diff(m.m1().matrix(), (basis_projector(3, 0) + basis_projector(3, 2)).matrix()) == 0.0);
}

TEST_CASE("identity class examples") {
  for (std::size_t d = 2; d <= 8; ++d) {
    const auto out = identity_class_example(d);
    CHECK(out.certified);
    CHECK(out.ensemble.size() == d);
    const HermitianOperator k = HermitianOperator::identity(d) * (1.0 / static_cast<double>(d));
    const auto c = verify_kkt(out.ensemble, k, out.povm, 1e-10);
    CHECK(c.pass);
    for (std::size_t x = 0; x < d; ++x) {
      CHECK(out.ensemble.prior(x) == doctest::Approx(1.0 / static_cast<double>(d)).epsilon(1e-12));
      CHECK(max_abs_diff(out.ensemble.state(x).op().matrix(), basis_projector(d, x).matrix()) < 1e-12);
      CHECK(out.steering_probs[x] == doctest::Approx(1.0 / static_cast<double>(d)).epsilon(1e-12));
      // sigma_x is the normalized projector onto the other basis vectors.
      REQUIRE(out.complementary[x].state.has_value());
      HermitianOperator rest = (HermitianOperator::identity(d) - basis_projector(d, x)) *
                               (1.0 / static_cast<double>(d - 1));
      CHECK(max_abs_diff(out.complementary[x].state->op().matrix(), rest.matrix()) < 1e-12);
    }
    double p = 0.0;
    for (std::size_t x = 0; x < d; ++x) p += out.ensemble.prior(x) * trace_product(out.povm[x], out.ensemble.state(x).op());
    CHECK(p == doctest::Approx(1.0).epsilon(1e-12));
    check_steering_identity(k, out);
  }
  CHECK_THROWS_AS(identity_class_example(1), InvalidArgument);
}

TEST_CASE("K = I/2 steered along +z and -z") {
  const auto k = HermitianOperator::identity(2) * 0.5;
  const std::vector<SteeringMeasurement> m{SteeringMeasurement(from_bloch({0, 0, 1}).op()),
                                          SteeringMeasurement(from_bloch({0, 0, -1}).op())};
  const auto out = generate_from_symmetry_operator(k, m);
  CHECK(out.certified);
  CHECK(out.ensemble.prior(0) == doctest::Approx(0.5));
  CHECK(std::abs(trace_product(out.ensemble.state(0).op(), out.ensemble.state(1).op())) < 1e-12);
}

TEST_CASE("generate rejects bad inputs") {
  const std::vector<SteeringMeasurement> m{SteeringMeasurement(basis_projector(2, 0))};
  CHECK_THROWS_AS(generate_from_symmetry_operator(HermitianOperator::identity(2) * 0.5, {}), InvalidArgument);
  CHECK_THROWS_AS(generate_from_symmetry_operator(from_bloch({0, 0, 1}).op() - from_bloch({0, 0, -1}).op() * 0.1, m),
                  InvalidArgument);
  CHECK_THROWS_AS(generate_from_symmetry_operator(HermitianOperator::identity(2), m), InvalidArgument);
  CHECK_THROWS_AS(generate_from_symmetry_operator(HermitianOperator::identity(3) * 0.2, m), DimensionError);
  // Outcome 0 never fires on the kernel of K.
  const std::vector<SteeringMeasurement> never{SteeringMeasurement(basis_projector(2, 1))};
  CHECK_THROWS_AS(generate_from_symmetry_operator(basis_projector(2, 0) * 0.5, never), DegenerateError);
}

TEST_CASE("property: random steering of a trace 0.7 qubit operator") {
  std::mt19937_64 rng(31);
  int certified = 0;
  for (int r = 0; r < 100; ++r) {
    const Vec3 kv = 0.7 * test::random_ball(rng);
    const auto k = bloch_operator(0.7, kv);
    std::vector<SteeringMeasurement> m;
    for (int i = 0; i < 3; ++i) m.emplace_back(from_bloch(test::random_unit(rng)).op());
    const auto out = generate_from_symmetry_operator(k, m);
    check_steering_identity(k, out);
    if (!out.certified) continue;
    ++certified;
    const auto s = solve(out.ensemble);
    CHECK(max_abs_diff(s.symmetry_operator.matrix(), k.matrix()) < 1e-7);
  }
  // Random measurements essentially never give sum p_x = 1/tr K.
  CHECK(certified < 100);
}

TEST_CASE("property: steering measurements built for a target ensemble certify") {
  std::mt19937_64 rng(32);
  int done = 0;
  while (done < 50) {
    const auto spec = test::random_class_spec(rng);
    if (!spec) continue;
    const auto designed = generate_qubit_class_element(*spec);
    REQUIRE(designed.certified);
    const auto& k = designed.symmetry_operator;
    std::vector<SteeringMeasurement> m;
    for (std::size_t x = 0; x < designed.ensemble.size(); ++x)
      m.push_back(steering_measurement_for(k, designed.ensemble.weighted(x) * (1.0 / k.trace())));
    const auto out = generate_from_symmetry_operator(k, m);
    CHECK(out.certified);
    check_steering_identity(k, out);
    for (std::size_t x = 0; x < out.ensemble.size(); ++x) {
      CHECK(out.ensemble.prior(x) == doctest::Approx(spec->priors[x]).epsilon(1e-9));
      CHECK(out.steering_probs[x] == doctest::Approx(out.ensemble.prior(x) / k.trace()).epsilon(1e-9));
      CHECK(max_abs_diff(out.ensemble.state(x).op().matrix(), designed.ensemble.state(x).op().matrix()) < 1e-9);
    }
    ++done;
  }
}

TEST_CASE("qubit class examples") {
  // Trine: t = 2/3, k = 0, trine directions, a_x = 2/3.
  QubitClassSpec trine;
  trine.t = 2.0 / 3.0;
  for (int x = 0; x < 3; ++x) trine.directions.push_back(families::xz_direction(2 * pi * x / 3));
  trine.weights.assign(3, 2.0 / 3.0);
  trine.priors.assign(3, 1.0 / 3.0);
  auto out = generate_qubit_class_element(trine);
  CHECK(out.certified);
  const auto s = solve(out.ensemble);
  CHECK(s.p_guess == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  for (std::size_t x = 0; x < 3; ++x) {
    // rho_x is the pure state opposite to u_x.
    CHECK(norm(to_bloch(out.ensemble.state(x)) + trine.directions[x]) < 1e-12);
  }

  // Antipodal pair with t = 1.
  QubitClassSpec pair;
  pair.t = 1.0;
  pair.directions = {{0, 0, 1}, {0, 0, -1}};
  pair.weights = {1.0, 1.0};
  pair.priors = {0.5, 0.5};
  out = generate_qubit_class_element(pair);
  CHECK(out.certified);
  CHECK(solve(out.ensemble).p_guess == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(trace_product(out.ensemble.state(0).op(), out.ensemble.state(1).op())) < 1e-12);

  QubitClassSpec bad = trine;
  bad.weights = {1.0, 0.5, 0.5};
  CHECK_THROWS_AS(generate_qubit_class_element(bad), InvalidArgument);
  bad = trine;
  bad.t = 0.2;
  CHECK_THROWS_AS(generate_qubit_class_element(bad), InfeasibleError);
  bad = trine;
  bad.priors = {0.7, 0.2, 0.1};
  CHECK_THROWS_AS(generate_qubit_class_element(bad), InfeasibleError);
}

TEST_CASE("property: qubit class elements are certified and round trip") {
  std::mt19937_64 rng(33);
  int done = 0, draws = 0;
  while (done < 100) {
    ++draws;
    const auto spec = test::random_class_spec(rng);
    if (!spec) continue;
    const auto out = generate_qubit_class_element(*spec);
    CHECK(out.certified);
    check_steering_identity(out.symmetry_operator, out);
    const auto s = solve(out.ensemble);
    CHECK(max_abs_diff(s.symmetry_operator.matrix(), out.symmetry_operator.matrix()) < 1e-6);
    CHECK(std::abs(s.p_guess - spec->t) < 1e-7);
    for (std::size_t x = 0; x < out.ensemble.size(); ++x)
      CHECK(out.steering_probs[x] == doctest::Approx(out.ensemble.prior(x) / spec->t).epsilon(1e-12));
    ++done;
  }
  CHECK(draws < 100000);
}

TEST_CASE("qutrit steering certifies through kernel projectors") {
  // K = I/3 steered along a rotated orthonormal basis.
  std::mt19937_64 rng(34);
  const CMatrix u = test::random_unitary(rng, 3);
  std::vector<SteeringMeasurement> m;
  for (std::size_t x = 0; x < 3; ++x) m.emplace_back(test::conjugate(u, basis_projector(3, x)));
  const auto k = HermitianOperator::identity(3) * (1.0 / 3.0);
  const auto out = generate_from_symmetry_operator(k, m);
  CHECK(out.certified);
  check_steering_identity(k, out);

  // A skewed pair of measurements is reported honestly.
  const std::vector<SteeringMeasurement> skew{SteeringMeasurement(basis_projector(3, 0) * 0.9),
                                             SteeringMeasurement(basis_projector(3, 1) * 0.4)};
  const auto bad = generate_from_symmetry_operator(k, skew);
  CHECK_FALSE(bad.certified);
  CHECK_FALSE(bad.certificate.pass);
  check_steering_identity(k, bad);
}

TEST_CASE("steering measurement for a full-rank target") {
  std::mt19937_64 rng(35);
  for (int r = 0; r < 20; ++r) {
    const std::size_t d = 2 + r % 3;
    const auto rho = test::random_density(rng, d);
    const auto k = rho.op() * 0.6;
    const auto target = rho.op() * 0.3;
    const auto m = steering_measurement_for(k, target);
    const auto psi = purify(rho);
    CHECK(max_abs_diff(steer(psi, m.m0()).matrix(), target.matrix()) < 1e-9);
  }
  CHECK_THROWS_AS(steering_measurement_for(basis_projector(2, 0), basis_projector(2, 0) * 0.5), DegenerateError);
}
