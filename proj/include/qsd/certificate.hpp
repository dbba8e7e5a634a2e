#pragma once

#include <optional>
#include <vector>

#include "qsd/ensemble.hpp"
#include "qsd/solver.hpp"

namespace qsd {

/// Residuals of the optimality conditions. Fields that a given check does not
/// compute stay empty; `pass` holds iff every computed residual <= tolerance.
struct KktCertificate {
  // KKT form
  std::optional<double> symmetry;          // max_x |K - q_x rho_x - r_x sigma_x|_max
  std::optional<double> dual_feasibility;  // max_x -lambda_min(K - q_x rho_x), floored at 0
  std::optional<double> orthogonality;     // max_x |tr[M_x (K - q_x rho_x)]|
  // legacy form
  std::optional<double> legacy_pairwise;   // max_{x,y} |M_x (q_x rho_x - q_y rho_y) M_y|_max
  std::optional<double> legacy_operator;   // max_y -lambda_min(sum q_x rho_x M_x - q_y rho_y)
  // common
  double completeness = 0.0;     // |sum M_x - I|_max
  double povm_positivity = 0.0;  // max_x -lambda_min(M_x), floored at 0
  double tolerance = 0.0;
  bool pass = false;

  /// Largest computed residual.
  double worst() const;
};

KktCertificate verify_kkt(const WeightedEnsemble& e, const HermitianOperator& k,
                          const std::vector<HermitianOperator>& povm, double tol);

KktCertificate verify_legacy_conditions(const WeightedEnsemble& e, const std::vector<HermitianOperator>& povm,
                                        double tol);

struct ProbabilityForms {
  double p_primal = 0.0;    // sum q_x tr[M_x rho_x]
  double p_dual = 0.0;      // tr K
  double p_average = 0.0;   // 1/N + (1/N) sum r_x
  double p_distance = 0.0;  // 1/N + (1/N) sum |K - q_x rho_x|_1
  double p_steering = 0.0;  // 1 / sum p_x
  std::vector<double> steering_probs;  // p_x = q_x / tr K
  double spread = 0.0;      // max - min of the five values
};

ProbabilityForms probability_forms(const WeightedEnsemble& e, const DiscriminationSolution& s);

/// Same equivalence class: sorted spectra agree within tol.
bool equivalence_check(const HermitianOperator& k1, const HermitianOperator& k2, double tol);

}  // namespace qsd
