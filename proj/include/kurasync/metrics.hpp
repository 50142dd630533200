#pragma once

#include <vector>

#include <Eigen/Dense>

#include "kurasync/network.hpp"

namespace kurasync {

/// Wraps an angle to (-pi, pi].
double wrap_to_pi(double angle);

/// Euclidean distance from theta to the cluster synchronization manifold,
/// computed per cluster on pairwise differences to the first member wrapped
/// to (-pi, pi], after removing the cluster mean. Zero iff all intra
/// differences vanish modulo 2 pi; invariant under theta + c 1.
double manifold_distance(const Eigen::VectorXd& theta, const Partition& part);

/// max_{p, i, j in C_p} |wrap(theta_i - theta_j)|
double max_intra_difference(const Eigen::VectorXd& theta, const Partition& part);
double max_intra_difference(const Eigen::VectorXd& theta, const std::vector<int>& cluster);

/// |(1/|S|) sum_{i in S} exp(j theta_i)|
double order_parameter(const Eigen::VectorXd& theta, const std::vector<int>& nodes);
double order_parameter(const Eigen::VectorXd& theta);

struct OrderParameterSeries {
  std::vector<double> times;
  std::vector<double> global;
  Eigen::MatrixXd clusters;  // samples x r

  /// Mean over samples with t >= t_from.
  double mean_global(double t_from) const;
  double mean_cluster(int p, double t_from) const;
};

/// Row k of `phases` is the phase vector at times[k].
OrderParameterSeries order_parameters(const std::vector<double>& times,
                                      const Eigen::Ref<const Eigen::MatrixXd>& phases,
                                      const Partition& part);

struct CorrelationMatrix {
  Eigen::MatrixXd matrix;  // NaN where a signal is constant
  double burn_in = 0.0;
  std::vector<int> constant_signals;
};

/// Pearson coefficients between the columns of `signals`, using only the
/// samples with time >= burn_in. Throws InvalidInput with fewer than two
/// samples in the window and ConstantSignal when every signal is constant.
CorrelationMatrix pearson_matrix(const std::vector<double>& times,
                                 const Eigen::Ref<const Eigen::MatrixXd>& signals,
                                 double burn_in);

struct BlockContrast {
  double mean_intra = 0.0;  // off-diagonal entries inside clusters
  double mean_inter = 0.0;
  double contrast() const { return mean_intra - mean_inter; }
};

BlockContrast block_contrast(const Eigen::MatrixXd& corr, const Partition& part);

}  // namespace kurasync
