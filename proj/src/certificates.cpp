#include "kurasync/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/LU>

#include "kurasync/error.hpp"
#include "kurasync/metrics.hpp"

namespace kurasync {

namespace {

double spectral_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

double inf_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

Eigen::MatrixXd intra_from_inter(const Decomposition& dec) {
  const auto& inc = dec.incidence;
  return dec.tree.intra().transpose() * inc.inter() * inc.inter_weights().asDiagonal();
}

// Multiplier applied when R4 lacks the single +-1 row structure.
double r4_factor(const Decomposition& dec) {
  return dec.r4_signed_unit_rows ? 1.0 : std::max(1.0, inf_norm(dec.reduction.r4));
}

void require_assumptions(const WeightedNetwork& net, const Partition& part,
                         const Eigen::VectorXd& omega) {
  try {
    require_equal_intra_frequencies(part, omega);
  } catch (const Error& e) {
    throw Error(ErrorKind::AssumptionViolated,
                std::string("equal intra-cluster natural frequencies: ") + e.what());
  }
  const EepReport eep = check_partition(net, part);
  if (!eep.is_exact) {
    std::ostringstream msg;
    msg << "partition is not an external equitable partition (deviation K = " << eep.deviation_K
        << " between nodes " << eep.worst_i << " and " << eep.worst_j << " toward cluster "
        << eep.worst_q << ")";
    throw Error(ErrorKind::AssumptionViolated, msg.str());
  }
}

}  // namespace

Eigen::MatrixXd average_jacobian(const Decomposition& dec) {
  const auto& inc = dec.incidence;
  return -dec.tree.intra().transpose() * inc.intra() * inc.intra_weights().asDiagonal() *
         dec.reduction.r1;
}

Eigen::MatrixXd inter_jacobian(const Decomposition& dec) {
  return -intra_from_inter(dec) * dec.reduction.r3;
}

Eigen::MatrixXd jacobian_at(const Decomposition& dec, const Eigen::VectorXd& z) {
  const Eigen::VectorXd c = (dec.reduction.r4 * z).array().cos().matrix();
  return average_jacobian(dec) - intra_from_inter(dec) * c.asDiagonal() * dec.reduction.r3;
}

double gamma_bound(const Decomposition& dec) {
  const auto& inc = dec.incidence;
  const Eigen::MatrixXd psi =
      dec.tree.inter().transpose() * inc.inter() * inc.inter_weights().asDiagonal() * dec.reduction.r4;
  return spectral_norm(intra_from_inter(dec)) * spectral_norm(dec.reduction.r3) *
         std::max(2.0, inf_norm(psi)) * r4_factor(dec);
}

double rho_bound(const Decomposition& dec) {
  return spectral_norm(average_jacobian(dec)) +
         spectral_norm(intra_from_inter(dec)) * spectral_norm(dec.reduction.r3);
}

double kappa(double gamma, double epsilon, double T, double rho, double lambda2) {
  const double u = epsilon * T;
  return std::exp(-lambda2 * u) + gamma * u * (1.0 / T + epsilon) +
         2.0 * (std::expm1(rho * u) - rho * u);
}

KappaMinimum minimize_kappa(double gamma, double epsilon, double rho, double lambda2) {
  const double lo = std::log(1e-3 / epsilon);
  const double hi = std::log(1e3 / epsilon);
  constexpr int grid = 200;
  auto k_at = [&](double log_t) { return kappa(gamma, epsilon, std::exp(log_t), rho, lambda2); };

  int best = 0;
  double best_val = std::numeric_limits<double>::infinity();
  const double step = (hi - lo) / (grid - 1);
  for (int k = 0; k < grid; ++k) {
    const double v = k_at(lo + k * step);
    if (v < best_val) {
      best_val = v;
      best = k;
    }
  }
  double a = lo + std::max(best - 1, 0) * step;
  double b = lo + std::min(best + 1, grid - 1) * step;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = k_at(c), fd = k_at(d);
  for (int it = 0; it < 200 && (b - a) > 1e-12; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = k_at(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = k_at(d);
    }
  }
  const double mid = 0.5 * (a + b);
  KappaMinimum out{std::exp(lo + best * step), best_val};
  if (const double v = k_at(mid); v < out.kappa) out = {std::exp(mid), v};
  return out;
}

std::string_view to_string(Verdict v) {
  return v == Verdict::Certified ? "CERTIFIED" : "NOT_CERTIFIED";
}

StabilityCertificate certify(const WeightedNetwork& net, const Partition& part,
                             const Eigen::VectorXd& omega) {
  require_assumptions(net, part, omega);
  const Decomposition dec = decompose(net, part);
  const FrequencyGap gap = frequency_gap(dec, part, omega);

  StabilityCertificate cert;
  cert.gamma = gamma_bound(dec);
  cert.rho = rho_bound(dec);
  cert.lambda2 = algebraic_connectivity(net, part);
  cert.epsilon = gap.epsilon;
  const KappaMinimum best = minimize_kappa(cert.gamma, cert.epsilon, cert.rho, cert.lambda2);
  cert.T_star = best.T_star;
  cert.kappa_value = best.kappa;
  cert.verdict = best.kappa < 1.0 ? Verdict::Certified : Verdict::NotCertified;
  return cert;
}

std::vector<TradeoffPoint> tradeoff_curve(double rho, double lambda2,
                                          const std::vector<double>& gamma_grid) {
  auto certified = [&](double gamma, double eps) {
    return minimize_kappa(gamma, eps, rho, lambda2).kappa < 1.0;
  };
  std::vector<TradeoffPoint> curve;
  curve.reserve(gamma_grid.size());
  for (double gamma : gamma_grid) {
    if (gamma < 0.0) throw Error(ErrorKind::InvalidInput, "gamma grid must be nonnegative");
    TradeoffPoint pt{gamma, std::numeric_limits<double>::infinity()};
    // kappa depends on (gamma, eps) only through gamma * eps once T is
    // searched over a fixed range of eps * T
    double eps_hi = 1.0;
    while (certified(gamma, eps_hi) && eps_hi < 1e12) eps_hi *= 2.0;
    if (!certified(gamma, eps_hi)) {
      double eps_lo = eps_hi / 2.0;
      while (!certified(gamma, eps_lo)) {
        eps_lo /= 2.0;
        if (eps_lo < 1e-300) {
          throw Error(ErrorKind::NoFeasibleEpsilon,
                      "no epsilon certifies gamma = " + std::to_string(gamma));
        }
      }
      while ((eps_hi - eps_lo) > 1e-4 * eps_lo) {
        const double mid = std::sqrt(eps_lo * eps_hi);
        (certified(gamma, mid) ? eps_lo : eps_hi) = mid;
      }
      pt.epsilon_star = eps_lo;
    }
    curve.push_back(pt);
  }
  for (std::size_t k = 1; k < curve.size(); ++k) {
    if (curve[k].gamma >= curve[k - 1].gamma &&
        curve[k].epsilon_star > curve[k - 1].epsilon_star * (1.0 + 2e-4)) {
      throw Error(ErrorKind::ReconstructionFailure, "tradeoff curve is not nonincreasing");
    }
  }
  return curve;
}

std::vector<TradeoffPoint> tradeoff_curve(const WeightedNetwork& net, const Partition& part,
                                          const std::vector<double>& gamma_grid) {
  const Decomposition dec = decompose(net, part);
  return tradeoff_curve(rho_bound(dec), algebraic_connectivity(net, part), gamma_grid);
}

std::string_view to_string(TwoClusterVerdict v) {
  switch (v) {
    case TwoClusterVerdict::CertifiedCommuting: return "CERTIFIED_COMMUTING";
    case TwoClusterVerdict::NotApplicable: return "NOT_APPLICABLE";
    case TwoClusterVerdict::NotCertified: return "NOT_CERTIFIED";
  }
  return "NOT_APPLICABLE";
}

TwoClusterResult two_cluster_test(const WeightedNetwork& net, const Partition& part,
                                  const Eigen::VectorXd& omega) {
  TwoClusterResult res;
  if (part.n_clusters() != 2) return res;
  require_assumptions(net, part, omega);

  const int i = part.cluster(0).front();
  const int j = part.cluster(1).front();
  res.omega_bar = std::abs(omega(i) - omega(j));
  for (int k : part.cluster(1)) res.a_bar += net.weight(i, k);
  for (int k : part.cluster(0)) res.a_bar += net.weight(j, k);

  const Decomposition dec = decompose(net, part);
  res.j_intra = average_jacobian(dec);
  res.j_inter = inter_jacobian(dec);
  const Eigen::MatrixXd comm = res.j_intra * res.j_inter - res.j_inter * res.j_intra;
  res.commutator_norm = comm.norm();
  res.relative_commutator = res.commutator_norm / (1.0 + res.j_intra.norm() * res.j_inter.norm());
  if (!(res.omega_bar > res.a_bar)) return res;
  res.verdict = res.relative_commutator <= 1e-9 ? TwoClusterVerdict::CertifiedCommuting
                                                : TwoClusterVerdict::NotCertified;
  return res;
}

double period_T2(double omega_bar, double a_bar) {
  if (!(a_bar >= 0.0) || !(omega_bar > a_bar)) {
    throw Error(ErrorKind::FrequencyDominanceViolated,
                "period requires omega_bar > a_bar >= 0");
  }
  return 2.0 * std::numbers::pi * omega_bar / std::sqrt(omega_bar * omega_bar - a_bar * a_bar);
}

Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw Error(ErrorKind::InvalidInput, "Lyapunov equation needs a square matrix");
  if (n > 60) throw Error(ErrorKind::InvalidInput, "dense Lyapunov solve limited to n <= 60");
  // column-major vec: vec(A^T P) = (I kron A^T) vec(P), vec(P A) = (A^T kron I) vec(P)
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd op = Eigen::MatrixXd::Zero(n * n, n * n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      op.block(r * n, c * n, n, n) += id(r, c) * a.transpose();
      op.block(r * n, c * n, n, n) += a(c, r) * id;
    }
  }
  const Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(id.data(), n * n);
  const Eigen::VectorXd vec_p = op.partialPivLu().solve(rhs);
  Eigen::MatrixXd p = Eigen::Map<const Eigen::MatrixXd>(vec_p.data(), n, n);
  return 0.5 * (p + p.transpose());
}

LyapunovReport lyapunov_sampled_check(const Decomposition& dec, const SimulationRecord& record,
                                      double interval, double noise_floor) {
  if (!(interval > 0.0) || record.times.empty()) {
    throw Error(ErrorKind::InvalidInput, "sampling interval must be positive and record nonempty");
  }
  LyapunovReport rep;
  rep.P = solve_lyapunov(average_jacobian(dec));
  const Eigen::MatrixXd bt_intra = dec.tree.intra();

  std::vector<double> norms_sq;
  const double t_last = record.times.back();
  for (int k = 0;; ++k) {
    const double target = k * interval;
    if (target > t_last + 1e-12) break;
    const auto it = std::lower_bound(record.times.begin(), record.times.end(), target - 1e-12);
    auto idx = static_cast<Eigen::Index>(it - record.times.begin());
    if (idx > 0 && (it == record.times.end() ||
                    std::abs(record.times[idx - 1] - target) < std::abs(record.times[idx] - target))) {
      --idx;
    }
    Eigen::VectorXd x = bt_intra.transpose() * record.theta(idx);
    for (Eigen::Index e = 0; e < x.size(); ++e) x(e) = wrap_to_pi(x(e));
    rep.sample_times.push_back(record.times[idx]);
    rep.values.push_back(x.dot(rep.P * x));
    norms_sq.push_back(x.squaredNorm());
  }

  rep.c3_empirical = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < rep.values.size(); ++k) {
    const double dt = rep.sample_times[k + 1] - rep.sample_times[k];
    const double diff = dt > 0.0 ? (rep.values[k + 1] - rep.values[k]) / dt : 0.0;
    rep.differences.push_back(diff);
    if (norms_sq[k] <= noise_floor * noise_floor) continue;
    ++rep.informative;
    if (diff >= 0.0) ++rep.violations;
    rep.c3_empirical = std::min(rep.c3_empirical, -diff / norms_sq[k]);
  }
  if (rep.informative == 0) rep.c3_empirical = 0.0;
  return rep;
}

}  // namespace kurasync
