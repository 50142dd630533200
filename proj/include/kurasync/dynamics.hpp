#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "kurasync/network.hpp"
#include "kurasync/tree.hpp"

namespace kurasync {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Throws IntraFrequencyMismatch unless natural frequencies are equal
/// within every cluster (tolerance 1e-9 * (1 + max|omega|)).
void require_equal_intra_frequencies(const Partition& part, const Eigen::VectorXd& omega);

/// Time-scale separation of the inter-cluster dynamics.
///   epsilon = 1 / min_{(i,j) in E_inter} |omega_i - omega_j|
///   eta     = epsilon * Bt_inter^T omega      (|eta_k| >= 1)
struct FrequencyGap {
  double epsilon = 0.0;
  Eigen::VectorXd eta;
};

FrequencyGap frequency_gap(const Decomposition& dec, const Partition& part,
                           const Eigen::VectorXd& omega);

/// theta_dot = omega - B W sin(B^T theta)
Eigen::VectorXd kuramoto_rhs(const Eigen::VectorXd& theta, const Eigen::VectorXd& omega,
                             const OrientedIncidence& incidence);

/// Dense Kuramoto vector field evaluated through
///   sum_j a_ij sin(theta_j - theta_i) = cos(theta_i) (A sin theta)_i - sin(theta_i) (A cos theta)_i
/// which costs two mat-vecs and 2N trig calls per evaluation.
class KuramotoSystem {
 public:
  KuramotoSystem(const WeightedNetwork& net, Eigen::VectorXd omega);

  void operator()(double t, const Eigen::VectorXd& theta, Eigen::VectorXd& dtheta) const;
  Eigen::VectorXd rhs(const Eigen::VectorXd& theta) const;

  /// max|omega| + 2 max weighted degree, the step-size scale of the field.
  double stiffness() const { return stiffness_; }
  const Eigen::VectorXd& omega() const { return omega_; }

 private:
  Eigen::MatrixXd adjacency_;
  Eigen::VectorXd omega_;
  double stiffness_ = 0.0;
  mutable Eigen::VectorXd sin_, cos_, a_cos_;
};

struct OscillatorConfig {
  Eigen::VectorXd omega;   // rad/s
  Eigen::VectorXd theta0;  // rad
  double dt = 1e-3;
  double t_end = 10.0;
  int output_stride = 1;  // store every k-th step
};

/// Phases are stored unwrapped, one row per stored sample.
struct SimulationRecord {
  std::vector<double> times;
  RowMatrix thetas;
  std::optional<RowMatrix> x_traj;
  std::optional<RowMatrix> z_traj;

  Eigen::Index n_samples() const { return static_cast<Eigen::Index>(times.size()); }
  Eigen::VectorXd theta(Eigen::Index k) const { return thetas.row(k).transpose(); }
};

/// Fixed-step RK4. Throws StepTooLarge when dt * stiffness > 0.5 and
/// InvalidInput on malformed configs.
SimulationRecord simulate(const OscillatorConfig& config, const WeightedNetwork& net);

/// Adds x = Bt_intra^T theta and z = Bt_inter^T theta trajectories.
void attach_coordinates(SimulationRecord& record, const Decomposition& dec);

/// Per-cluster common phase uniform on [0, 2 pi) plus i.i.d. offsets
/// uniform on [-spread, spread]. When max_distance is given the offsets are
/// shrunk so the manifold distance does not exceed it.
Eigen::VectorXd phases_near_manifold(const Partition& part, std::uint64_t seed,
                                     double spread = 0.1,
                                     std::optional<double> max_distance = std::nullopt);

/// Vector fields of the slow/fast split
///   x_dot = f(x, z),   eps z_dot = eta + eps g(x, z)
/// with x = Bt_intra^T theta, z = Bt_inter^T theta.
class PerturbationFields {
 public:
  PerturbationFields(const Decomposition& dec, FrequencyGap gap);

  Eigen::VectorXd f(const Eigen::VectorXd& x, const Eigen::VectorXd& z) const;
  Eigen::VectorXd g(const Eigen::VectorXd& x, const Eigen::VectorXd& z) const;

  /// dz/dtau = eta + eps g(0, z), the inter dynamics frozen on x = 0.
  Eigen::VectorXd frozen_inter_rhs(const Eigen::VectorXd& z) const;

  /// Integrates the frozen inter dynamics with RK4 in tau; returns one row
  /// per step including z0 (rows = steps + 1).
  RowMatrix frozen_inter_trajectory(const Eigen::VectorXd& z0, double dtau, int steps) const;

  double epsilon() const { return gap_.epsilon; }
  const Eigen::VectorXd& eta() const { return gap_.eta; }
  const Decomposition& decomposition() const { return dec_; }

 private:
  Decomposition dec_;
  FrequencyGap gap_;
  Eigen::MatrixXd intra_from_intra_;  // Bt_intra^T B_intra W_intra
  Eigen::MatrixXd intra_from_inter_;  // Bt_intra^T B_inter W_inter
  Eigen::MatrixXd inter_from_intra_;  // Bt_inter^T B_intra W_intra
  Eigen::MatrixXd inter_from_inter_;  // Bt_inter^T B_inter W_inter
};

}  // namespace kurasync
