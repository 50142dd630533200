#include "kurasync/metrics.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "kurasync/error.hpp"

namespace kurasync {

double wrap_to_pi(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::fmod(angle + std::numbers::pi, two_pi);
  if (w <= 0.0) w += two_pi;
  return w - std::numbers::pi;
}

double manifold_distance(const Eigen::VectorXd& theta, const Partition& part) {
  double sq = 0.0;
  for (const auto& c : part.clusters()) {
    Eigen::VectorXd d(static_cast<Eigen::Index>(c.size()));
    for (std::size_t k = 0; k < c.size(); ++k) d(k) = wrap_to_pi(theta(c[k]) - theta(c.front()));
    d.array() -= d.mean();
    sq += d.squaredNorm();
  }
  return std::sqrt(sq);
}

double max_intra_difference(const Eigen::VectorXd& theta, const std::vector<int>& cluster) {
  double worst = 0.0;
  for (std::size_t a = 0; a < cluster.size(); ++a) {
    for (std::size_t b = a + 1; b < cluster.size(); ++b) {
      worst = std::max(worst, std::abs(wrap_to_pi(theta(cluster[a]) - theta(cluster[b]))));
    }
  }
  return worst;
}

double max_intra_difference(const Eigen::VectorXd& theta, const Partition& part) {
  double worst = 0.0;
  for (const auto& c : part.clusters()) worst = std::max(worst, max_intra_difference(theta, c));
  return worst;
}

double order_parameter(const Eigen::VectorXd& theta, const std::vector<int>& nodes) {
  std::complex<double> sum = 0.0;
  for (int i : nodes) sum += std::polar(1.0, theta(i));
  return std::abs(sum) / static_cast<double>(nodes.size());
}

double order_parameter(const Eigen::VectorXd& theta) {
  const double c = theta.array().cos().sum();
  const double s = theta.array().sin().sum();
  return std::hypot(c, s) / static_cast<double>(theta.size());
}

double OrderParameterSeries::mean_global(double t_from) const {
  double sum = 0.0;
  int count = 0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (times[k] >= t_from) {
      sum += global[k];
      ++count;
    }
  }
  return count ? sum / count : std::numeric_limits<double>::quiet_NaN();
}

double OrderParameterSeries::mean_cluster(int p, double t_from) const {
  double sum = 0.0;
  int count = 0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (times[k] >= t_from) {
      sum += clusters(static_cast<Eigen::Index>(k), p);
      ++count;
    }
  }
  return count ? sum / count : std::numeric_limits<double>::quiet_NaN();
}

OrderParameterSeries order_parameters(const std::vector<double>& times,
                                      const Eigen::Ref<const Eigen::MatrixXd>& phases,
                                      const Partition& part) {
  if (phases.rows() != static_cast<Eigen::Index>(times.size()) || times.empty()) {
    throw Error(ErrorKind::InvalidInput, "order parameters need a nonempty, consistent record");
  }
  OrderParameterSeries out;
  out.times = times;
  out.global.resize(times.size());
  out.clusters.resize(phases.rows(), part.n_clusters());
  for (Eigen::Index k = 0; k < phases.rows(); ++k) {
    const Eigen::VectorXd theta = phases.row(k).transpose();
    out.global[k] = order_parameter(theta);
    for (int p = 0; p < part.n_clusters(); ++p) out.clusters(k, p) = order_parameter(theta, part.cluster(p));
  }
  return out;
}

CorrelationMatrix pearson_matrix(const std::vector<double>& times,
                                 const Eigen::Ref<const Eigen::MatrixXd>& signals,
                                 double burn_in) {
  if (signals.rows() != static_cast<Eigen::Index>(times.size())) {
    throw Error(ErrorKind::InvalidInput, "signal rows do not match the time grid");
  }
  Eigen::Index first = 0;
  while (first < signals.rows() && times[first] < burn_in) ++first;
  const Eigen::Index len = signals.rows() - first;
  if (len < 2) throw Error(ErrorKind::InvalidInput, "fewer than two samples after burn-in");

  Eigen::MatrixXd centered = signals.bottomRows(len);
  centered.rowwise() -= centered.colwise().mean();
  const Eigen::VectorXd norms = centered.colwise().norm().transpose();

  CorrelationMatrix out;
  out.burn_in = burn_in;
  const Eigen::Index n = signals.cols();
  for (Eigen::Index i = 0; i < n; ++i) {
    // relative to the signal's own magnitude so that offsets do not mask constancy
    const double scale = signals.bottomRows(len).col(i).cwiseAbs().maxCoeff();
    if (!(norms(i) > 1e-14 * std::max(scale, 1e-300) * std::sqrt(static_cast<double>(len)))) {
      out.constant_signals.push_back(static_cast<int>(i));
    }
  }
  if (static_cast<Eigen::Index>(out.constant_signals.size()) == n) {
    throw Error(ErrorKind::ConstantSignal, "every signal is constant after burn-in");
  }
  Eigen::VectorXd inv = norms.cwiseInverse();
  for (int c : out.constant_signals) inv(c) = std::numeric_limits<double>::quiet_NaN();
  const Eigen::MatrixXd normalized = centered * inv.asDiagonal();
  out.matrix = normalized.transpose() * normalized;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!std::isnan(inv(i))) out.matrix(i, i) = 1.0;
  }
  // symmetric to round-off by construction; make it exact
  out.matrix = (0.5 * (out.matrix + out.matrix.transpose())).eval();
  out.matrix = out.matrix.cwiseMax(-1.0).cwiseMin(1.0);
  for (int c : out.constant_signals) {
    out.matrix.row(c).setConstant(std::numeric_limits<double>::quiet_NaN());
    out.matrix.col(c).setConstant(std::numeric_limits<double>::quiet_NaN());
  }
  return out;
}

BlockContrast block_contrast(const Eigen::MatrixXd& corr, const Partition& part) {
  double intra = 0.0, inter = 0.0;
  long n_intra = 0, n_inter = 0;
  for (Eigen::Index i = 0; i < corr.rows(); ++i) {
    for (Eigen::Index j = 0; j < corr.cols(); ++j) {
      if (i == j || std::isnan(corr(i, j))) continue;
      if (part.same_cluster(static_cast<int>(i), static_cast<int>(j))) {
        intra += corr(i, j);
        ++n_intra;
      } else {
        inter += corr(i, j);
        ++n_inter;
      }
    }
  }
  BlockContrast out;
  out.mean_intra = n_intra ? intra / static_cast<double>(n_intra) : 0.0;
  out.mean_inter = n_inter ? inter / static_cast<double>(n_inter) : 0.0;
  return out;
}

}  // namespace kurasync
