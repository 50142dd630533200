#include "kurasync/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "kurasync/error.hpp"

namespace kurasync {

namespace {

void require_connected(const Eigen::MatrixXd& adjacency) {
  const int n = static_cast<int>(adjacency.rows());
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  const auto labels = component_labels(adjacency, all);
  if (std::any_of(labels.begin(), labels.end(), [](int l) { return l != 0; })) {
    throw Error(ErrorKind::GraphDisconnected, "network is not connected");
  }
}

}  // namespace

WeightedNetwork::WeightedNetwork(Eigen::MatrixXd adjacency) : adjacency_(std::move(adjacency)) {
  const int n = size();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (adjacency_(i, j) > 0.0) edges_.push_back({i, j, adjacency_(i, j)});
    }
  }
}

WeightedNetwork WeightedNetwork::from_edges(int n_nodes, const std::vector<Edge>& edges) {
  if (n_nodes < 1) throw Error(ErrorKind::InvalidInput, "network needs at least one node");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_nodes, n_nodes);
  for (const auto& e : edges) {
    if (e.i < 0 || e.j < 0 || e.i >= n_nodes || e.j >= n_nodes) {
      throw Error(ErrorKind::InvalidInput, "edge index out of range");
    }
    if (e.i == e.j) throw Error(ErrorKind::InvalidInput, "self loops are not allowed");
    if (!(e.w > 0.0) || !std::isfinite(e.w)) {
      throw Error(ErrorKind::InvalidInput, "edge weights must be positive and finite");
    }
    if (a(e.i, e.j) != 0.0) throw Error(ErrorKind::InvalidInput, "duplicate edge");
    a(e.i, e.j) = e.w;
    a(e.j, e.i) = e.w;
  }
  require_connected(a);
  return WeightedNetwork(std::move(a));
}

WeightedNetwork WeightedNetwork::from_adjacency(const Eigen::MatrixXd& adjacency,
                                                std::vector<std::string>* warnings) {
  if (adjacency.rows() != adjacency.cols() || adjacency.rows() < 1) {
    throw Error(ErrorKind::InvalidInput, "adjacency must be a nonempty square matrix");
  }
  if (!adjacency.allFinite() || (adjacency.array() < 0.0).any()) {
    throw Error(ErrorKind::InvalidInput, "adjacency entries must be finite and nonnegative");
  }
  Eigen::MatrixXd a = adjacency;
  a.diagonal().setZero();
  const double scale = a.cwiseAbs().maxCoeff();
  const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (asym > 0.0) {
    if (warnings && asym > 1e-6 * scale) {
      std::ostringstream msg;
      msg << "adjacency asymmetric (max |a_ij - a_ji| = " << asym << "), symmetrized";
      warnings->push_back(msg.str());
    }
    a = 0.5 * (a + a.transpose()).eval();
  }
  require_connected(a);
  return WeightedNetwork(std::move(a));
}

double WeightedNetwork::max_weight() const {
  return edges_.empty() ? 0.0 : adjacency_.maxCoeff();
}

Eigen::VectorXd WeightedNetwork::weighted_degrees() const { return adjacency_.rowwise().sum(); }

Eigen::MatrixXd WeightedNetwork::laplacian() const {
  Eigen::MatrixXd l = -adjacency_;
  l.diagonal() = weighted_degrees();
  return l;
}

std::vector<int> component_labels(const Eigen::MatrixXd& adjacency, const std::vector<int>& nodes) {
  const int k = static_cast<int>(nodes.size());
  std::vector<int> labels(k, -1);
  int next = 0;
  for (int s = 0; s < k; ++s) {
    if (labels[s] >= 0) continue;
    labels[s] = next;
    std::queue<int> frontier;
    frontier.push(s);
    while (!frontier.empty()) {
      const int u = frontier.front();
      frontier.pop();
      for (int v = 0; v < k; ++v) {
        if (labels[v] < 0 && adjacency(nodes[u], nodes[v]) > 0.0) {
          labels[v] = next;
          frontier.push(v);
        }
      }
    }
    ++next;
  }
  return labels;
}

Partition::Partition(std::vector<std::vector<int>> clusters, int n_nodes)
    : clusters_(std::move(clusters)), cluster_of_(static_cast<std::size_t>(std::max(n_nodes, 0)), -1) {
  if (clusters_.size() < 2) throw Error(ErrorKind::InvalidInput, "partition needs at least two clusters");
  for (std::size_t p = 0; p < clusters_.size(); ++p) {
    auto& c = clusters_[p];
    if (c.size() < 2) throw Error(ErrorKind::InvalidInput, "every cluster needs at least two nodes");
    std::sort(c.begin(), c.end());
    for (int node : c) {
      if (node < 0 || node >= n_nodes) throw Error(ErrorKind::InvalidInput, "cluster node out of range");
      if (cluster_of_[node] >= 0) throw Error(ErrorKind::InvalidInput, "clusters overlap");
      cluster_of_[node] = static_cast<int>(p);
    }
  }
  if (std::any_of(cluster_of_.begin(), cluster_of_.end(), [](int c) { return c < 0; })) {
    throw Error(ErrorKind::InvalidInput, "clusters do not cover every node");
  }
}

Partition Partition::contiguous(const std::vector<int>& sizes) {
  std::vector<std::vector<int>> clusters;
  int next = 0;
  for (int s : sizes) {
    std::vector<int> c(static_cast<std::size_t>(std::max(s, 0)));
    for (auto& v : c) v = next++;
    clusters.push_back(std::move(c));
  }
  return Partition(std::move(clusters), next);
}

void require_connected_clusters(const WeightedNetwork& net, const Partition& part) {
  if (part.n_nodes() != net.size()) {
    throw Error(ErrorKind::InvalidInput, "partition and network sizes differ");
  }
  for (int p = 0; p < part.n_clusters(); ++p) {
    const auto labels = component_labels(net.adjacency(), part.cluster(p));
    if (std::any_of(labels.begin(), labels.end(), [](int l) { return l != 0; })) {
      throw Error(ErrorKind::ClusterNotConnected,
                  "cluster " + std::to_string(p) + " induces a disconnected subgraph");
    }
  }
}

namespace {

OrientedIncidence incidence_from_edges(int n, std::vector<Edge> edges, int n_intra) {
  OrientedIncidence inc;
  inc.matrix = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(edges.size()));
  inc.weights.resize(static_cast<Eigen::Index>(edges.size()));
  for (std::size_t e = 0; e < edges.size(); ++e) {
    inc.matrix(edges[e].i, e) = -1.0;
    inc.matrix(edges[e].j, e) = 1.0;
    inc.weights(e) = edges[e].w;
  }
  inc.edges = std::move(edges);
  inc.n_intra = n_intra;
  return inc;
}

}  // namespace

OrientedIncidence build_incidence(const WeightedNetwork& net) {
  return incidence_from_edges(net.size(), net.edges(), static_cast<int>(net.edges().size()));
}

OrientedIncidence build_incidence(const WeightedNetwork& net, const Partition& part) {
  std::vector<std::vector<Edge>> intra(part.n_clusters());
  std::vector<Edge> inter;
  for (const auto& e : net.edges()) {
    if (part.same_cluster(e.i, e.j)) {
      intra[part.cluster_of(e.i)].push_back(e);
    } else {
      inter.push_back(e);
    }
  }
  std::vector<Edge> ordered;
  for (auto& block : intra) ordered.insert(ordered.end(), block.begin(), block.end());
  const int n_intra = static_cast<int>(ordered.size());
  ordered.insert(ordered.end(), inter.begin(), inter.end());
  return incidence_from_edges(net.size(), std::move(ordered), n_intra);
}

double eep_tolerance(const WeightedNetwork& net) { return 1e-9 * (1.0 + net.max_weight()); }

EepReport check_partition(const WeightedNetwork& net, const Partition& part) {
  require_connected_clusters(net, part);
  const int r = part.n_clusters();
  Eigen::MatrixXd indicator = Eigen::MatrixXd::Zero(net.size(), r);
  for (int i = 0; i < net.size(); ++i) indicator(i, part.cluster_of(i)) = 1.0;
  // row_sums(i, q) = sum_{k in C_q} a_ik
  const Eigen::MatrixXd row_sums = net.adjacency() * indicator;

  EepReport report;
  report.tolerance = eep_tolerance(net);
  for (int p = 0; p < r; ++p) {
    const auto& members = part.cluster(p);
    for (int q = 0; q < r; ++q) {
      if (q == p) continue;
      int lo = members.front();
      int hi = members.front();
      for (int i : members) {
        if (row_sums(i, q) < row_sums(lo, q)) lo = i;
        if (row_sums(i, q) > row_sums(hi, q)) hi = i;
      }
      const double gap = row_sums(hi, q) - row_sums(lo, q);
      if (gap > report.deviation_K || report.worst_p < 0) {
        report.deviation_K = gap;
        report.worst_p = p;
        report.worst_q = q;
        report.worst_i = std::min(lo, hi);
        report.worst_j = std::max(lo, hi);
      }
    }
  }
  report.is_exact = report.deviation_K <= report.tolerance;
  return report;
}

double fiedler_value(const Eigen::MatrixXd& laplacian) {
  if (laplacian.rows() < 2) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(1);
}

Eigen::MatrixXd induced_laplacian(const WeightedNetwork& net, const std::vector<int>& nodes) {
  const auto k = static_cast<Eigen::Index>(nodes.size());
  Eigen::MatrixXd sub(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < k; ++b) sub(a, b) = net.weight(nodes[a], nodes[b]);
  }
  Eigen::MatrixXd l = -sub;
  l.diagonal() = sub.rowwise().sum();
  return l;
}

double algebraic_connectivity(const WeightedNetwork& net, const Partition& part) {
  require_connected_clusters(net, part);
  double lambda2 = std::numeric_limits<double>::infinity();
  for (const auto& c : part.clusters()) {
    lambda2 = std::min(lambda2, fiedler_value(induced_laplacian(net, c)));
  }
  return lambda2;
}

}  // namespace kurasync
