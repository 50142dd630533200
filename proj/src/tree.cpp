#include "kurasync/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <sstream>

#include <Eigen/SVD>

#include "kurasync/error.hpp"

namespace kurasync {

Eigen::MatrixXd pseudoinverse(const Eigen::MatrixXd& m, double rel_tol) {
  if (m.size() == 0) return Eigen::MatrixXd::Zero(m.cols(), m.rows());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double cutoff = rel_tol * (s.size() > 0 ? s(0) : 0.0);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) > cutoff) inv(k) = 1.0 / s(k);
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

int numerical_rank(const Eigen::MatrixXd& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const Eigen::VectorXd& s = svd.singularValues();
  const double cutoff = rel_tol * (s.size() > 0 ? s(0) : 0.0);
  return static_cast<int>((s.array() > cutoff).count());
}

Eigen::MatrixXd partitioned_pinv(const Eigen::MatrixXd& m1, const Eigen::MatrixXd& m2) {
  if (m1.rows() != m2.rows()) throw Error(ErrorKind::InvalidInput, "row counts differ");
  const Eigen::Index rows = m1.rows();
  Eigen::MatrixXd joined(rows, m1.cols() + m2.cols());
  joined << m1, m2;
  if (numerical_rank(joined) != numerical_rank(m1) + numerical_rank(m2)) {
    throw Error(ErrorKind::ImageOverlap, "column spaces of the two blocks intersect");
  }
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(rows, rows);
  const Eigen::MatrixXd p1 = id - m1 * pseudoinverse(m1);
  const Eigen::MatrixXd p2 = id - m2 * pseudoinverse(m2);
  Eigen::MatrixXd out(m1.cols() + m2.cols(), rows);
  out << pseudoinverse(p2 * m1), pseudoinverse(p1 * m2);
  return out;
}

namespace {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  bool join(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

bool edge_less(const Edge& a, const Edge& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; }

}  // namespace

SpanningTree build_spanning_tree(const WeightedNetwork& net, const Partition& part) {
  require_connected_clusters(net, part);
  const auto& a = net.adjacency();
  std::vector<Edge> edges;

  for (const auto& members : part.clusters()) {
    std::vector<Edge> block;
    std::vector<bool> seen(net.size(), false);
    std::queue<int> frontier;
    frontier.push(members.front());
    seen[members.front()] = true;
    while (!frontier.empty()) {
      const int u = frontier.front();
      frontier.pop();
      for (int v : members) {
        if (!seen[v] && a(u, v) > 0.0) {
          seen[v] = true;
          block.push_back({std::min(u, v), std::max(u, v), a(u, v)});
          frontier.push(v);
        }
      }
    }
    std::sort(block.begin(), block.end(), edge_less);
    edges.insert(edges.end(), block.begin(), block.end());
  }
  const int n_intra = static_cast<int>(edges.size());

  DisjointSets quotient(part.n_clusters());
  for (const auto& e : net.edges()) {
    if (part.same_cluster(e.i, e.j)) continue;
    if (quotient.join(part.cluster_of(e.i), part.cluster_of(e.j))) edges.push_back(e);
  }
  const int n_inter = static_cast<int>(edges.size()) - n_intra;
  if (n_inter != part.n_clusters() - 1) {
    throw Error(ErrorKind::QuotientDisconnected, "inter-cluster edges do not connect all clusters");
  }

  SpanningTree tree;
  tree.incidence = Eigen::MatrixXd::Zero(net.size(), static_cast<Eigen::Index>(edges.size()));
  for (std::size_t k = 0; k < edges.size(); ++k) {
    tree.incidence(edges[k].i, k) = -1.0;
    tree.incidence(edges[k].j, k) = 1.0;
  }
  tree.edges = std::move(edges);
  tree.n_intra = n_intra;
  tree.n_inter = n_inter;
  return tree;
}

ReductionMatrices reduction_matrices(const OrientedIncidence& incidence, const SpanningTree& tree) {
  const Eigen::Index n_nodes = tree.incidence.rows();
  const Eigen::MatrixXd bt_intra = tree.intra();
  const Eigen::MatrixXd bt_inter = tree.inter();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n_nodes, n_nodes);

  ReductionMatrices red;
  red.p_intra = id - bt_intra * pseudoinverse(bt_intra);
  red.p_inter = id - bt_inter * pseudoinverse(bt_inter);

  // (Bt^T)^+ = (Bt^+)^T = [(Bt_intra^T P_inter)^+  (Bt_inter^T P_intra)^+]
  const Eigen::MatrixXd tree_pinv_t = partitioned_pinv(bt_intra, bt_inter).transpose();
  const Eigen::MatrixXd left = tree_pinv_t.leftCols(tree.n_intra);
  const Eigen::MatrixXd right = tree_pinv_t.rightCols(tree.n_inter);

  const Eigen::MatrixXd b_intra_t = incidence.intra().transpose();
  const Eigen::MatrixXd b_inter_t = incidence.inter().transpose();
  red.r1 = b_intra_t * left;
  red.r2 = b_intra_t * right;
  red.r3 = b_inter_t * left;
  red.r4 = b_inter_t * right;

  Eigen::MatrixXd r(incidence.n_edges(), tree.n_intra + tree.n_inter);
  r << red.r1, red.r2, red.r3, red.r4;
  red.reconstruction_error =
      (incidence.matrix.transpose() - r * tree.incidence.transpose()).cwiseAbs().maxCoeff();
  if (!(red.reconstruction_error <= 1e-9)) {
    std::ostringstream msg;
    msg << "B^T = R Btilde^T violated by " << red.reconstruction_error;
    throw Error(ErrorKind::ReconstructionFailure, msg.str());
  }
  const double r2_norm = red.r2.size() ? red.r2.cwiseAbs().rowwise().sum().maxCoeff() : 0.0;
  if (!(r2_norm < 1e-9)) {
    std::ostringstream msg;
    msg << "R2 block is not zero (inf-norm " << r2_norm << ")";
    throw Error(ErrorKind::ReconstructionFailure, msg.str());
  }
  return red;
}

bool has_signed_unit_rows(const Eigen::MatrixXd& m, double tol) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    int units = 0;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double v = std::abs(m(i, j));
      if (std::abs(v - 1.0) <= tol) {
        ++units;
      } else if (v > tol) {
        return false;
      }
    }
    if (units != 1) return false;
  }
  return true;
}

Eigen::VectorXd Decomposition::intra_coordinates(const Eigen::VectorXd& theta) const {
  return tree.intra().transpose() * theta;
}

Eigen::VectorXd Decomposition::inter_coordinates(const Eigen::VectorXd& theta) const {
  return tree.inter().transpose() * theta;
}

Decomposition decompose(const WeightedNetwork& net, const Partition& part) {
  Decomposition d;
  d.incidence = build_incidence(net, part);
  d.tree = build_spanning_tree(net, part);
  d.reduction = reduction_matrices(d.incidence, d.tree);
  d.r4_signed_unit_rows = has_signed_unit_rows(d.reduction.r4);
  if (!d.r4_signed_unit_rows) {
    d.warnings.push_back(
        "R4 rows are not single +-1 entries; gamma and rho use the ||R4||_inf fallback");
  }
  return d;
}

}  // namespace kurasync
