#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace kurasync {

/// Undirected weighted edge with i < j.
struct Edge {
  int i = 0;
  int j = 0;
  double w = 0.0;
};

/// Connected, undirected, positively weighted graph on nodes 0..N-1.
///
/// The adjacency matrix is the single source of truth; the edge list is
/// derived from it in lexicographic (i, j) order.
class WeightedNetwork {
 public:
  /// Throws InvalidInput on bad indices, self loops, duplicate or
  /// non-positive weights and GraphDisconnected when the graph is not
  /// connected.
  static WeightedNetwork from_edges(int n_nodes, const std::vector<Edge>& edges);

  /// Accepts a square nonnegative matrix. Asymmetric input is symmetrized
  /// as (A + A^T)/2; a warning is appended when the relative asymmetry
  /// exceeds 1e-6. The diagonal is ignored.
  static WeightedNetwork from_adjacency(const Eigen::MatrixXd& adjacency,
                                        std::vector<std::string>* warnings = nullptr);

  int size() const { return static_cast<int>(adjacency_.rows()); }
  const Eigen::MatrixXd& adjacency() const { return adjacency_; }
  const std::vector<Edge>& edges() const { return edges_; }
  double weight(int i, int j) const { return adjacency_(i, j); }
  double max_weight() const;

  Eigen::VectorXd weighted_degrees() const;
  Eigen::MatrixXd laplacian() const;

 private:
  explicit WeightedNetwork(Eigen::MatrixXd adjacency);

  Eigen::MatrixXd adjacency_;
  std::vector<Edge> edges_;
};

/// Connected components of the graph defined by a symmetric adjacency
/// restricted to `nodes`; returns one label per entry of `nodes`.
std::vector<int> component_labels(const Eigen::MatrixXd& adjacency,
                                  const std::vector<int>& nodes);

/// Nontrivial partition: r >= 2 disjoint clusters of size >= 2 covering
/// 0..N-1. Cluster contents are kept sorted.
class Partition {
 public:
  Partition(std::vector<std::vector<int>> clusters, int n_nodes);

  int n_clusters() const { return static_cast<int>(clusters_.size()); }
  int n_nodes() const { return static_cast<int>(cluster_of_.size()); }
  const std::vector<std::vector<int>>& clusters() const { return clusters_; }
  const std::vector<int>& cluster(int p) const { return clusters_[p]; }
  int cluster_of(int node) const { return cluster_of_[node]; }
  bool same_cluster(int i, int j) const { return cluster_of_[i] == cluster_of_[j]; }

  /// Contiguous blocks of the given sizes: {0..s0-1}, {s0..s0+s1-1}, ...
  static Partition contiguous(const std::vector<int>& sizes);

 private:
  std::vector<std::vector<int>> clusters_;
  std::vector<int> cluster_of_;
};

/// Throws ClusterNotConnected naming the first disconnected cluster.
void require_connected_clusters(const WeightedNetwork& net, const Partition& part);

/// Oriented incidence matrix B (N x |E|) and edge weights.
///
/// Columns are ordered intra-cluster edges first (cluster by cluster,
/// lexicographic within a cluster) and then inter-cluster edges
/// (lexicographic). Each column has -1 at the smaller node index and +1 at
/// the larger, so B^T theta yields theta_j - theta_i.
struct OrientedIncidence {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd weights;
  std::vector<Edge> edges;
  int n_intra = 0;

  int n_edges() const { return static_cast<int>(edges.size()); }
  int n_inter() const { return n_edges() - n_intra; }
  Eigen::MatrixXd intra() const { return matrix.leftCols(n_intra); }
  Eigen::MatrixXd inter() const { return matrix.rightCols(n_inter()); }
  Eigen::VectorXd intra_weights() const { return weights.head(n_intra); }
  Eigen::VectorXd inter_weights() const { return weights.tail(n_inter()); }
  Eigen::MatrixXd weight_matrix() const { return weights.asDiagonal(); }
};

/// Lexicographic edge order, all edges counted as intra.
OrientedIncidence build_incidence(const WeightedNetwork& net);
/// Cluster-blocked edge order [B_intra B_inter].
OrientedIncidence build_incidence(const WeightedNetwork& net, const Partition& part);

struct EepReport {
  bool is_exact = true;
  double deviation_K = 0.0;
  double tolerance = 0.0;
  // cluster p holding nodes i, j and the target cluster q of the worst row-sum gap
  int worst_p = -1;
  int worst_i = -1;
  int worst_j = -1;
  int worst_q = -1;
};

double eep_tolerance(const WeightedNetwork& net);

/// Largest gap |sum_{k in C_q} a_ik - sum_{k in C_q} a_jk| over p != q and
/// i, j in C_p. Exact EEP when the gap is within eep_tolerance().
EepReport check_partition(const WeightedNetwork& net, const Partition& part);

/// Second smallest eigenvalue of a symmetric Laplacian.
double fiedler_value(const Eigen::MatrixXd& laplacian);

/// Laplacian of the subgraph induced by `nodes` (intra edges only).
Eigen::MatrixXd induced_laplacian(const WeightedNetwork& net, const std::vector<int>& nodes);

/// Smallest algebraic connectivity over the cluster subgraphs.
double algebraic_connectivity(const WeightedNetwork& net, const Partition& part);

}  // namespace kurasync
