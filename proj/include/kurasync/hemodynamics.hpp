#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace kurasync::hemo {

/// Balloon-Windkessel parameters (Friston et al. 2000 estimates). Names
/// carry a suffix to keep them apart from the averaging quantities:
/// kappa_s = signal decay, gamma_s = autoregulatory elimination,
/// tau_b = hemodynamic transit time, alpha_s = Grubb stiffness exponent.
struct Params {
  double kappa_s = 0.65;
  double gamma_s = 0.41;
  double tau_b = 0.98;
  double alpha_s = 0.33;
  double E0 = 0.34;
  double V0 = 0.02;

  double k1() const { return 7.0 * E0; }
  double k2() const { return 2.0; }
  double k3() const { return 2.0 * E0 - 0.2; }

  /// [E0 + (1 - E0) ln(1 - E0)] / (tau_b E0), the q-input gain of the
  /// linearized volume/content stage.
  double beta() const;

  /// Throws InvalidInput unless all positive, 0 < E0 < 1, 0 < alpha_s < 1.
  void validate() const;
};

/// Vasodilatory signal s, inflow f, volume v, deoxyhemoglobin q.
struct State {
  double s = 0.0;
  double f = 1.0;
  double v = 1.0;
  double q = 1.0;
};

/// Time derivative of the state driven by neural activity z. Throws
/// NonPhysiologicalState when f, v or q is not positive.
State rhs(const State& x, double z, const Params& p);

/// BOLD readout V0 (k1 (1 - q) + k2 (1 - q/v) + k3 (1 - v)).
double bold(const State& x, const Params& p);

/// 4x4 Jacobian d(rhs)/d(s, f, v, q) at the resting equilibrium (0, 1, 1, 1).
Eigen::Matrix4d equilibrium_jacobian(const Params& p);

/// Linearized cascade around (0, 1, 1, 1): (s, f) driven by z feeding f
/// into the (v, q) stage whose output is y.
struct LinearCascade {
  Eigen::Matrix2d a1;
  Eigen::Vector2d b1;
  Eigen::RowVector2d c1;
  Eigen::Matrix2d a2;
  Eigen::Vector2d b2;
  Eigen::RowVector2d c2;
};

LinearCascade linear_cascade(const Params& p);

/// Gain of the linearized cascade at frequency_hz (s = j 2 pi f).
std::complex<double> linearized_response(double frequency_hz, const Params& p);

/// Runs RK4 with step dt from the resting state for each column of
/// `neural` (one column per region, rows on a uniform grid of spacing
/// sample_dt), holding the input constant between samples. Returns BOLD on
/// the input grid. Throws NonPhysiologicalState with the time of the first
/// violation.
Eigen::MatrixXd simulate_bold(const Eigen::Ref<const Eigen::MatrixXd>& neural, double sample_dt,
                              const Params& p, double dt = 1e-3);

}  // namespace kurasync::hemo
