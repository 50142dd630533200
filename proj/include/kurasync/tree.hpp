#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kurasync/network.hpp"

namespace kurasync {

/// Moore-Penrose inverse via SVD; singular values below rel_tol * sigma_max
/// are treated as zero.
Eigen::MatrixXd pseudoinverse(const Eigen::MatrixXd& m, double rel_tol = 1e-12);

/// Numerical rank with the same cutoff as pseudoinverse().
int numerical_rank(const Eigen::MatrixXd& m, double rel_tol = 1e-12);

/// Pseudoinverse of [M1 M2] assembled blockwise as [(P2 M1)^+; (P1 M2)^+]
/// with P_i = I - M_i M_i^+. Valid only when the column spaces intersect
/// trivially; throws ImageOverlap otherwise.
Eigen::MatrixXd partitioned_pinv(const Eigen::MatrixXd& m1, const Eigen::MatrixXd& m2);

/// Spanning tree made of one BFS tree per cluster plus r - 1 inter-cluster
/// edges. Incidence columns: intra tree edges (cluster-blocked,
/// lexicographic) followed by inter tree edges (lexicographic).
struct SpanningTree {
  Eigen::MatrixXd incidence;  // N x (N-1)
  std::vector<Edge> edges;
  int n_intra = 0;  // n = sum_p (|C_p| - 1)
  int n_inter = 0;  // m = r - 1

  Eigen::MatrixXd intra() const { return incidence.leftCols(n_intra); }
  Eigen::MatrixXd inter() const { return incidence.rightCols(n_inter); }
};

SpanningTree build_spanning_tree(const WeightedNetwork& net, const Partition& part);

/// Blocks of R in B^T = R Btilde^T, split conformally with
/// [B_intra B_inter] and [Btilde_intra Btilde_inter].
struct ReductionMatrices {
  Eigen::MatrixXd r1;  // |E_intra| x n
  Eigen::MatrixXd r2;  // |E_intra| x m, zero up to round-off
  Eigen::MatrixXd r3;  // |E_inter| x n
  Eigen::MatrixXd r4;  // |E_inter| x m
  Eigen::MatrixXd p_intra;  // I - Bt_intra Bt_intra^+
  Eigen::MatrixXd p_inter;  // I - Bt_inter Bt_inter^+
  double reconstruction_error = 0.0;  // max |B^T - R Btilde^T|
};

/// Throws ReconstructionFailure when B^T = R Btilde^T fails to 1e-9 or
/// when the R2 block is not numerically zero.
ReductionMatrices reduction_matrices(const OrientedIncidence& incidence, const SpanningTree& tree);

/// True when every row has exactly one entry equal to +-1 and zeros elsewhere.
bool has_signed_unit_rows(const Eigen::MatrixXd& m, double tol = 1e-9);

/// Everything the averaging analysis needs about (net, partition).
struct Decomposition {
  OrientedIncidence incidence;
  SpanningTree tree;
  ReductionMatrices reduction;
  bool r4_signed_unit_rows = true;
  std::vector<std::string> warnings;

  int n() const { return tree.n_intra; }
  int m() const { return tree.n_inter; }

  /// x = Bt_intra^T theta
  Eigen::VectorXd intra_coordinates(const Eigen::VectorXd& theta) const;
  /// z = Bt_inter^T theta
  Eigen::VectorXd inter_coordinates(const Eigen::VectorXd& theta) const;
};

Decomposition decompose(const WeightedNetwork& net, const Partition& part);

}  // namespace kurasync
