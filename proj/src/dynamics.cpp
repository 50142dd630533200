#include "kurasync/dynamics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "kurasync/error.hpp"
#include "kurasync/integrator.hpp"
#include "kurasync/metrics.hpp"

namespace kurasync {

void require_equal_intra_frequencies(const Partition& part, const Eigen::VectorXd& omega) {
  if (omega.size() != part.n_nodes()) {
    throw Error(ErrorKind::InvalidInput, "frequency vector length does not match the network");
  }
  const double tol = 1e-9 * (1.0 + omega.cwiseAbs().maxCoeff());
  for (int p = 0; p < part.n_clusters(); ++p) {
    const auto& c = part.cluster(p);
    for (int i : c) {
      if (std::abs(omega(i) - omega(c.front())) > tol) {
        throw Error(ErrorKind::IntraFrequencyMismatch,
                    "natural frequencies differ inside cluster " + std::to_string(p));
      }
    }
  }
}

FrequencyGap frequency_gap(const Decomposition& dec, const Partition& part,
                           const Eigen::VectorXd& omega) {
  require_equal_intra_frequencies(part, omega);
  const auto& edges = dec.incidence.edges;
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t e = dec.incidence.n_intra; e < edges.size(); ++e) {
    min_gap = std::min(min_gap, std::abs(omega(edges[e].i) - omega(edges[e].j)));
  }
  const double tol = 1e-9 * (1.0 + omega.cwiseAbs().maxCoeff());
  if (!(min_gap > tol)) {
    throw Error(ErrorKind::ZeroInterFrequencyGap,
                "an inter-cluster edge joins nodes with equal natural frequencies");
  }
  FrequencyGap gap;
  gap.epsilon = 1.0 / min_gap;
  gap.eta = gap.epsilon * (dec.tree.inter().transpose() * omega);
  if (gap.eta.size() > 0 && gap.eta.cwiseAbs().minCoeff() < 1.0 - 1e-12) {
    throw Error(ErrorKind::AssumptionViolated, "|eta| < 1 for a tree inter edge");
  }
  return gap;
}

Eigen::VectorXd kuramoto_rhs(const Eigen::VectorXd& theta, const Eigen::VectorXd& omega,
                             const OrientedIncidence& incidence) {
  const Eigen::VectorXd diffs = incidence.matrix.transpose() * theta;
  return omega - incidence.matrix * (incidence.weights.array() * diffs.array().sin()).matrix();
}

KuramotoSystem::KuramotoSystem(const WeightedNetwork& net, Eigen::VectorXd omega)
    : adjacency_(net.adjacency()), omega_(std::move(omega)) {
  if (omega_.size() != net.size()) {
    throw Error(ErrorKind::InvalidInput, "frequency vector length does not match the network");
  }
  stiffness_ = omega_.cwiseAbs().maxCoeff() + 2.0 * net.weighted_degrees().maxCoeff();
}

void KuramotoSystem::operator()(double /*t*/, const Eigen::VectorXd& theta,
                                Eigen::VectorXd& dtheta) const {
  sin_ = theta.array().sin();
  cos_ = theta.array().cos();
  dtheta.noalias() = adjacency_ * sin_;
  dtheta.array() *= cos_.array();
  dtheta.array() += omega_.array();
  a_cos_.noalias() = adjacency_ * cos_;
  dtheta.array() -= sin_.array() * a_cos_.array();
}

Eigen::VectorXd KuramotoSystem::rhs(const Eigen::VectorXd& theta) const {
  Eigen::VectorXd out(theta.size());
  (*this)(0.0, theta, out);
  return out;
}

SimulationRecord simulate(const OscillatorConfig& config, const WeightedNetwork& net) {
  const int n = net.size();
  if (config.theta0.size() != n || config.omega.size() != n) {
    throw Error(ErrorKind::InvalidInput, "initial phases / frequencies do not match the network");
  }
  if (!config.theta0.allFinite() || !config.omega.allFinite()) {
    throw Error(ErrorKind::InvalidInput, "non-finite initial phases or frequencies");
  }
  if (!(config.dt > 0.0) || !(config.t_end > 0.0) || config.output_stride < 1) {
    throw Error(ErrorKind::InvalidInput, "dt, t_end and output_stride must be positive");
  }
  KuramotoSystem system(net, config.omega);
  if (config.dt * system.stiffness() > 0.5) {
    std::ostringstream msg;
    msg << "dt = " << config.dt << " too large: dt * (max|omega| + 2 max degree) = "
        << config.dt * system.stiffness() << " > 0.5";
    throw Error(ErrorKind::StepTooLarge, msg.str());
  }

  const auto steps = static_cast<long>(std::llround(config.t_end / config.dt));
  const long n_out = steps / config.output_stride + 1 + (steps % config.output_stride != 0);
  SimulationRecord rec;
  rec.times.reserve(static_cast<std::size_t>(n_out));
  rec.thetas.resize(n_out, n);

  Eigen::VectorXd theta = config.theta0;
  Rk4 rk4(n);
  long row = 0;
  rec.times.push_back(0.0);
  rec.thetas.row(row++) = theta.transpose();
  for (long k = 1; k <= steps; ++k) {
    const double t = static_cast<double>(k - 1) * config.dt;
    rk4.step(system, t, theta, config.dt);
    if (k % config.output_stride == 0 || k == steps) {
      rec.times.push_back(static_cast<double>(k) * config.dt);
      rec.thetas.row(row++) = theta.transpose();
    }
  }
  return rec;
}

void attach_coordinates(SimulationRecord& record, const Decomposition& dec) {
  record.x_traj = record.thetas * dec.tree.intra();
  record.z_traj = record.thetas * dec.tree.inter();
}

Eigen::VectorXd phases_near_manifold(const Partition& part, std::uint64_t seed, double spread,
                                     std::optional<double> max_distance) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> common(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> offset(-spread, spread);
  Eigen::VectorXd base(part.n_nodes());
  Eigen::VectorXd delta(part.n_nodes());
  for (const auto& c : part.clusters()) {
    const double phase = common(rng);
    for (int i : c) base(i) = phase;
  }
  for (Eigen::Index i = 0; i < delta.size(); ++i) delta(i) = offset(rng);
  if (max_distance) {
    const double d = manifold_distance(base + delta, part);
    if (d > *max_distance && d > 0.0) delta *= *max_distance / d;
  }
  return base + delta;
}

PerturbationFields::PerturbationFields(const Decomposition& dec, FrequencyGap gap)
    : dec_(dec), gap_(std::move(gap)) {
  const auto& inc = dec.incidence;
  const Eigen::MatrixXd bt_intra_t = dec.tree.intra().transpose();
  const Eigen::MatrixXd bt_inter_t = dec.tree.inter().transpose();
  const Eigen::MatrixXd b_intra_w = inc.intra() * inc.intra_weights().asDiagonal();
  const Eigen::MatrixXd b_inter_w = inc.inter() * inc.inter_weights().asDiagonal();
  intra_from_intra_ = bt_intra_t * b_intra_w;
  intra_from_inter_ = bt_intra_t * b_inter_w;
  inter_from_intra_ = bt_inter_t * b_intra_w;
  inter_from_inter_ = bt_inter_t * b_inter_w;
}

Eigen::VectorXd PerturbationFields::f(const Eigen::VectorXd& x, const Eigen::VectorXd& z) const {
  const auto& red = dec_.reduction;
  const Eigen::VectorXd s_intra = (red.r1 * x).array().sin();
  const Eigen::VectorXd s_inter = (red.r3 * x + red.r4 * z).array().sin();
  return -intra_from_intra_ * s_intra - intra_from_inter_ * s_inter;
}

Eigen::VectorXd PerturbationFields::g(const Eigen::VectorXd& x, const Eigen::VectorXd& z) const {
  const auto& red = dec_.reduction;
  const Eigen::VectorXd s_intra = (red.r1 * x).array().sin();
  const Eigen::VectorXd s_inter = (red.r3 * x + red.r4 * z).array().sin();
  return -inter_from_intra_ * s_intra - inter_from_inter_ * s_inter;
}

Eigen::VectorXd PerturbationFields::frozen_inter_rhs(const Eigen::VectorXd& z) const {
  const Eigen::VectorXd s_inter = (dec_.reduction.r4 * z).array().sin();
  return gap_.eta - gap_.epsilon * (inter_from_inter_ * s_inter);
}

RowMatrix PerturbationFields::frozen_inter_trajectory(const Eigen::VectorXd& z0, double dtau,
                                                      int steps) const {
  RowMatrix out(steps + 1, z0.size());
  Eigen::VectorXd z = z0;
  out.row(0) = z.transpose();
  Rk4 rk4(z.size());
  auto rhs = [this](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) { dy = frozen_inter_rhs(y); };
  for (int k = 1; k <= steps; ++k) {
    rk4.step(rhs, (k - 1) * dtau, z, dtau);
    out.row(k) = z.transpose();
  }
  return out;
}

}  // namespace kurasync
