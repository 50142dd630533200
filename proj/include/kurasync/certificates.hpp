#pragma once

#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "kurasync/dynamics.hpp"
#include "kurasync/network.hpp"
#include "kurasync/tree.hpp"

namespace kurasync {

/// J_av = -Bt_intra^T B_intra W_intra R1, block diagonal by cluster.
Eigen::MatrixXd average_jacobian(const Decomposition& dec);

/// J_inter = -Bt_intra^T B_inter W_inter R3 (the coefficient of cos(z) in
/// the two-cluster Jacobian).
Eigen::MatrixXd inter_jacobian(const Decomposition& dec);

/// Jacobian of f with respect to x at (0, z):
///   J_av - Bt_intra^T B_inter W_inter diag(cos(R4 z)) R3
/// (equal to diag(R4 cos z) whenever R4 has no -1 entries).
Eigen::MatrixXd jacobian_at(const Decomposition& dec, const Eigen::VectorXd& z);

/// Averaging deviation constant
///   gamma = ||Bt_intra^T B_inter W_inter||_2 ||R3||_2 max{2, ||Psi||_inf},
///   Psi   = Bt_inter^T B_inter W_inter R4.
/// When R4 does not have single +-1 rows the result is multiplied by
/// ||R4||_inf.
double gamma_bound(const Decomposition& dec);

/// Analytic bound on sup ||J(tau, eps)||_2:
///   ||J_av||_2 + ||Bt_intra^T B_inter W_inter||_2 ||R3||_2
double rho_bound(const Decomposition& dec);

/// kappa = exp(-lambda2 eps T) + gamma eps T (1/T + eps) + 2 (exp(rho eps T) - 1 - rho eps T)
double kappa(double gamma, double epsilon, double T, double rho, double lambda2);

struct KappaMinimum {
  double T_star = 0.0;
  double kappa = 0.0;
};

/// Minimizes kappa over T in [1e-3/eps, 1e3/eps]: 200-point log grid, then
/// golden-section refinement in log T around the best grid point.
KappaMinimum minimize_kappa(double gamma, double epsilon, double rho, double lambda2);

enum class Verdict { Certified, NotCertified };
std::string_view to_string(Verdict v);

struct StabilityCertificate {
  double gamma = 0.0;
  double rho = 0.0;
  double lambda2 = 0.0;
  double epsilon = 0.0;
  double T_star = 0.0;  // in tau = t / eps units
  double kappa_value = 0.0;
  Verdict verdict = Verdict::NotCertified;
};

/// Throws AssumptionViolated when frequencies differ inside a cluster or
/// the partition is not an exact EEP.
StabilityCertificate certify(const WeightedNetwork& net, const Partition& part,
                             const Eigen::VectorXd& omega);

struct TradeoffPoint {
  double gamma = 0.0;
  double epsilon_star = 0.0;  // +inf when every epsilon is certified
};

/// eps*(gamma) = sup{eps : min_T kappa(gamma, eps, T) < 1}, bisection to
/// relative tolerance 1e-4. The curve is checked to be nonincreasing.
std::vector<TradeoffPoint> tradeoff_curve(double rho, double lambda2,
                                          const std::vector<double>& gamma_grid);
std::vector<TradeoffPoint> tradeoff_curve(const WeightedNetwork& net, const Partition& part,
                                          const std::vector<double>& gamma_grid);

enum class TwoClusterVerdict { CertifiedCommuting, NotApplicable, NotCertified };
std::string_view to_string(TwoClusterVerdict v);

struct TwoClusterResult {
  TwoClusterVerdict verdict = TwoClusterVerdict::NotApplicable;
  double omega_bar = 0.0;
  double a_bar = 0.0;
  Eigen::MatrixXd j_intra;
  Eigen::MatrixXd j_inter;
  double commutator_norm = 0.0;      // ||J_intra J_inter - J_inter J_intra||_F
  double relative_commutator = 0.0;  // commutator_norm / (1 + ||J_intra||_F ||J_inter||_F)
};

/// Commutation test for two clusters. NotApplicable when r != 2 or
/// omega_bar <= a_bar; throws AssumptionViolated like certify().
TwoClusterResult two_cluster_test(const WeightedNetwork& net, const Partition& part,
                                  const Eigen::VectorXd& omega);

/// T2 = 2 pi omega_bar / sqrt(omega_bar^2 - a_bar^2), the tau-period of
/// dz/dtau = 1 - eps a_bar sin z. Throws FrequencyDominanceViolated when
/// omega_bar <= a_bar.
double period_T2(double omega_bar, double a_bar);

/// Solves A^T P + P A = -I (dense Kronecker solve; meant for small n).
Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& a);

struct LyapunovReport {
  Eigen::MatrixXd P;
  std::vector<double> sample_times;
  std::vector<double> values;       // V(x(t_k))
  std::vector<double> differences;  // (V_{k+1} - V_k) / (t_{k+1} - t_k)
  double c3_empirical = 0.0;        // min_k -(diff_k) / ||x_k||^2 over informative samples
  int violations = 0;               // informative samples with diff_k >= 0
  int informative = 0;              // samples with ||x_k|| above the noise floor
};

/// Samples V(x) = x^T P x (P from the Lyapunov equation of J_av) along the
/// record at t_k = k * interval and checks the sampled decrease condition.
/// x is taken as Bt_intra^T theta wrapped to (-pi, pi]. Samples with
/// ||x_k|| below noise_floor are skipped.
LyapunovReport lyapunov_sampled_check(const Decomposition& dec, const SimulationRecord& record,
                                      double interval, double noise_floor = 1e-9);

}  // namespace kurasync
