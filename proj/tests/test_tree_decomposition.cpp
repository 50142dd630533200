#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "kurasync/error.hpp"
#include "kurasync/pipeline.hpp"
#include "kurasync/tree.hpp"
#include "oracles.hpp"

using namespace kurasync;

namespace {

WeightedNetwork to_network(const oracle::RandomClustered& g) {
  std::vector<Edge> edges;
  for (auto [i, j, w] : g.edges) edges.push_back({i, j, w});
  return WeightedNetwork::from_edges(g.n, edges);
}

Eigen::MatrixXd assembled_r(const ReductionMatrices& r) {
  Eigen::MatrixXd out(r.r1.rows() + r.r3.rows(), r.r1.cols() + r.r2.cols());
  out << r.r1, r.r2, r.r3, r.r4;
  return out;
}

}  // namespace

TEST_CASE("partitioned pseudoinverse on small cases") {
  Eigen::MatrixXd m1(2, 1), m2(2, 1);
  m1 << 1, 0;
  m2 << 0, 1;
  CHECK((partitioned_pinv(m1, m2) - Eigen::Matrix2d::Identity()).norm() < 1e-15);
  m1 << 1, 1;
  m2 << 1, -1;
  Eigen::Matrix2d expected;
  expected << 0.5, 0.5, 0.5, -0.5;
  CHECK((partitioned_pinv(m1, m2) - expected).norm() < 1e-15);
}

TEST_CASE("partitioned pseudoinverse matches the direct one") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::MatrixXd m1(8, 5), m2(8, 2);
    for (Eigen::Index k = 0; k < m1.size(); ++k) m1.data()[k] = nd(rng);
    for (Eigen::Index k = 0; k < m2.size(); ++k) m2.data()[k] = nd(rng);
    Eigen::MatrixXd joint(8, 7);
    joint << m1, m2;
    CHECK((partitioned_pinv(m1, m2) - oracle::pinv(joint)).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("overlapping images are rejected") {
  Eigen::MatrixXd m1(3, 1), m2(3, 1);
  m1 << 1, 2, 3;
  m2 << 2, 4, 6;
  try {
    partitioned_pinv(m1, m2);
    FAIL("expected ImageOverlap");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ImageOverlap);
  }
}

TEST_CASE("pseudoinverse of a rank-deficient matrix") {
  Eigen::MatrixXd m(3, 2);
  m << 1, 2, 2, 4, 3, 6;
  CHECK((pseudoinverse(m) - oracle::pinv(m)).norm() < 1e-12);
  CHECK(numerical_rank(m) == 1);
}

TEST_CASE("tree sizes") {
  SUBCASE("example 1") {
    const auto tree = build_spanning_tree(example1_network(), example1_partition());
    CHECK(tree.n_intra == 5);
    CHECK(tree.n_inter == 2);
    CHECK(tree.incidence.cols() == 7);
  }
  SUBCASE("example 2") {
    const auto tree = build_spanning_tree(example2_network(1, 1, 1), example2_partition());
    CHECK(tree.n_intra == 4);
    CHECK(tree.n_inter == 1);
  }
}

TEST_CASE("example 1 reduction") {
  const auto dec = decompose(example1_network(), example1_partition());
  const Eigen::MatrixXd bt = dec.incidence.matrix.transpose();
  const Eigen::MatrixXd rhs = assembled_r(dec.reduction) * dec.tree.incidence.transpose();
  CHECK((bt - rhs).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(oracle::inf_norm(dec.reduction.r2) < 1e-9);
  CHECK(dec.r4_signed_unit_rows);
  CHECK(dec.warnings.empty());
}

TEST_CASE("example 2 has R4 equal to a column of ones") {
  const auto dec = decompose(example2_network(1, 1, 1), example2_partition());
  REQUIRE(dec.reduction.r4.cols() == 1);
  CHECK((dec.reduction.r4 - Eigen::VectorXd::Ones(3)).norm() < 1e-12);
}

TEST_CASE("a tree graph reduces to the identity") {
  const auto net = WeightedNetwork::from_edges(4, {{0, 1, 1}, {2, 3, 2}, {1, 2, 0.5}});
  const auto dec = decompose(net, Partition({{0, 1}, {2, 3}}, 4));
  CHECK((assembled_r(dec.reduction) - Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-12);
}

TEST_CASE("random clustered graphs: reconstruction and projectors") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = oracle::random_clustered(rng);
    const auto net = to_network(g);
    const Partition part(g.clusters, g.n);
    const auto dec = decompose(net, part);
    CHECK(dec.n() + dec.m() == g.n - 1);
    CHECK(dec.m() == part.n_clusters() - 1);
    const Eigen::MatrixXd rhs = assembled_r(dec.reduction) * dec.tree.incidence.transpose();
    CHECK((dec.incidence.matrix.transpose() - rhs).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(oracle::inf_norm(dec.reduction.r2) < 1e-9);
    for (const Eigen::MatrixXd& p : {dec.reduction.p_intra, dec.reduction.p_inter}) {
      CHECK((p * p - p).cwiseAbs().maxCoeff() < 1e-10);
      CHECK((p - p.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    }
    Eigen::MatrixXd joint = dec.tree.incidence;
    CHECK((partitioned_pinv(dec.tree.intra(), dec.tree.inter()) - oracle::pinv(joint)).cwiseAbs().maxCoeff() <
          1e-9);
  }
}

TEST_CASE("coordinates of a synchronized state") {
  const auto dec = decompose(example1_network(), example1_partition());
  Eigen::VectorXd theta(8);
  theta << 0.3, 0.3, 1.1, 1.1, 1.1, -2.0, -2.0, -2.0;
  CHECK(dec.intra_coordinates(theta).norm() < 1e-14);
  CHECK(dec.inter_coordinates(theta).norm() > 0.1);
}
