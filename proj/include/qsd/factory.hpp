#pragma once

#include <vector>

#include "qsd/bloch.hpp"
#include "qsd/certificate.hpp"
#include "qsd/ensemble.hpp"
#include "qsd/solver.hpp"

namespace qsd {

/// Two-outcome measurement {M0, I - M0} on the purifying system.
class SteeringMeasurement {
 public:
  static constexpr double kTolerance = 1e-10;

  explicit SteeringMeasurement(HermitianOperator m0);

  const HermitianOperator& m0() const { return m0_; }
  HermitianOperator m1() const { return HermitianOperator::identity(m0_.dim()) - m0_; }

 private:
  HermitianOperator m0_;
};

struct FactoryOutput {
  WeightedEnsemble ensemble;
  /// K_tilde = p_x rho_x + (1 - p_x) sigma_x, expressed for the ensemble's own
  /// dual operator: r_x = (1 - p_x)/sum_y p_y.
  ComplementarySet complementary;
  std::vector<double> steering_probs;
  /// tr[K]-scaled dual operator that the ensemble actually satisfies; equals
  /// the prescribed K on certified outputs.
  HermitianOperator symmetry_operator;
  std::vector<HermitianOperator> povm;
  KktCertificate certificate;
  bool certified = false;
};

/// Tolerance used to decide the certified flag.
inline constexpr double kFactoryTolerance = 1e-9;

/// Steers the purification of K/tr K. The certified flag records whether a
/// POVM could be built that makes K itself the optimal dual (qubits: geometric
/// reconstruction; otherwise nonnegative weights on kernel projectors of
/// K - q_x rho_x).
FactoryOutput generate_from_symmetry_operator(const HermitianOperator& k,
                                              const std::vector<SteeringMeasurement>& measurements);

struct QubitClassSpec {
  double t = 0.0;
  Vec3 k;
  std::vector<Vec3> directions;  // u_x, unit
  std::vector<double> weights;   // a_x >= 0, sum 2, sum a_x u_x = 0
  std::vector<double> priors;    // q_x > 0, sum 1, q_x < t
};

/// Builds rho_x with K = q_x rho_x + (t - q_x)(I + u_x.sigma)/2 and the POVM
/// M_x = a_x (I - u_x.sigma)/2, which satisfy the optimality conditions by
/// construction. Throws InfeasibleError when some rho_x would not be PSD.
FactoryOutput generate_qubit_class_element(const QubitClassSpec& spec);

/// {1/d, |x><x|} from K = I/d with basis steering.
FactoryOutput identity_class_example(std::size_t d);

/// The steering measurement whose outcome 0 prepares the unnormalized
/// operator `target` (0 <= target <= K/tr K) from the purification of K/tr K.
/// K must be full rank.
SteeringMeasurement steering_measurement_for(const HermitianOperator& k, const HermitianOperator& target);

}  // namespace qsd
