#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "kurasync/error.hpp"
#include "kurasync/network.hpp"
#include "kurasync/pipeline.hpp"
#include "oracles.hpp"

using namespace kurasync;

namespace {

Eigen::MatrixXd example1_adjacency() {
  // nodes 1..8 of the printed matrix, shifted to 0..7, unit weights
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(8, 8);
  auto set = [&](int i, int j, double w) { a(i - 1, j - 1) = a(j - 1, i - 1) = w; };
  set(1, 2, 1);
  set(3, 4, 1);
  set(4, 5, 1);
  set(6, 7, 1);
  set(6, 8, 1);
  set(7, 8, 1);
  set(1, 3, 1);
  set(2, 5, 1);
  set(1, 4, 0.5);
  set(2, 4, 0.5);
  set(3, 6, 1);
  set(4, 7, 1);
  set(5, 8, 1);
  return a;
}

Eigen::MatrixXd laplacian_of(const Eigen::MatrixXd& a) {
  Eigen::MatrixXd l = -a;
  for (Eigen::Index i = 0; i < a.rows(); ++i) l(i, i) = a.row(i).sum();
  return l;
}

}  // namespace

TEST_CASE("from_edges validates input") {
  CHECK_THROWS_AS(WeightedNetwork::from_edges(3, {{0, 1, 1.0}}), Error);
  try {
    WeightedNetwork::from_edges(3, {{0, 1, 1.0}});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::GraphDisconnected);
  }
  CHECK_THROWS_AS(WeightedNetwork::from_edges(2, {{0, 0, 1.0}}), Error);
  CHECK_THROWS_AS(WeightedNetwork::from_edges(2, {{0, 1, -1.0}}), Error);
  CHECK_THROWS_AS(WeightedNetwork::from_edges(2, {{0, 2, 1.0}}), Error);
  CHECK_THROWS_AS(WeightedNetwork::from_edges(2, {{0, 1, 1.0}, {1, 0, 2.0}}), Error);
}

TEST_CASE("asymmetric adjacency is symmetrized with a warning") {
  Eigen::MatrixXd a(2, 2);
  a << 0, 1, 3, 0;
  std::vector<std::string> warnings;
  const auto net = WeightedNetwork::from_adjacency(a, &warnings);
  CHECK(net.weight(0, 1) == doctest::Approx(2.0));
  CHECK(net.weight(1, 0) == doctest::Approx(2.0));
  CHECK(warnings.size() == 1);
}

TEST_CASE("single edge incidence") {
  const auto net = WeightedNetwork::from_edges(2, {{0, 1, 1.0}});
  const auto inc = build_incidence(net);
  REQUIRE(inc.matrix.cols() == 1);
  CHECK(inc.matrix(0, 0) == -1.0);
  CHECK(inc.matrix(1, 0) == 1.0);
  CHECK(inc.weights(0) == 1.0);
}

TEST_CASE("triangle: B W B^T is the complete-graph Laplacian") {
  const auto net = WeightedNetwork::from_edges(3, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}});
  const auto inc = build_incidence(net);
  const Eigen::MatrixXd expected = 3.0 * Eigen::MatrixXd::Identity(3, 3) - Eigen::MatrixXd::Ones(3, 3);
  CHECK((inc.matrix * inc.weight_matrix() * inc.matrix.transpose() - expected).norm() < 1e-14);
}

TEST_CASE("example 1 incidence matches the printed adjacency") {
  const auto net = example1_network();
  const Eigen::MatrixXd a = example1_adjacency();
  CHECK((net.adjacency() - a).norm() == 0.0);
  const auto inc = build_incidence(net, example1_partition());
  CHECK(inc.n_edges() == 13);
  CHECK(inc.n_intra == 6);
  CHECK(inc.n_inter() == 7);
  for (Eigen::Index c = 0; c < inc.matrix.cols(); ++c) {
    CHECK(inc.matrix.col(c).sum() == 0.0);
    CHECK(inc.matrix.col(c).cwiseAbs().sum() == 2.0);
  }
  CHECK((inc.matrix * inc.weight_matrix() * inc.matrix.transpose() - laplacian_of(a)).norm() < 1e-14);
  CHECK((inc.matrix.transpose() * Eigen::VectorXd::Ones(8)).norm() == 0.0);
  // intra columns first, all of them inside a cluster
  const auto part = example1_partition();
  for (int c = 0; c < inc.n_edges(); ++c) {
    CHECK(part.same_cluster(inc.edges[c].i, inc.edges[c].j) == (c < inc.n_intra));
  }
}

TEST_CASE("B^T theta gives theta_j - theta_i") {
  const auto net = example1_network();
  const auto inc = build_incidence(net, example1_partition());
  Eigen::VectorXd theta = Eigen::VectorXd::LinSpaced(8, 0.1, 2.3);
  const Eigen::VectorXd d = inc.matrix.transpose() * theta;
  for (int c = 0; c < inc.n_edges(); ++c) {
    CHECK(d(c) == doctest::Approx(theta(inc.edges[c].j) - theta(inc.edges[c].i)));
  }
}

TEST_CASE("partition validation") {
  CHECK_THROWS_AS(Partition({{0, 1, 2}}, 3), Error);        // r = 1
  CHECK_THROWS_AS(Partition({{0}, {1, 2}}, 3), Error);      // singleton
  CHECK_THROWS_AS(Partition({{0, 1}, {1, 2}}, 3), Error);   // overlap
  CHECK_THROWS_AS(Partition({{0, 1}, {2, 3}}, 5), Error);   // not covering
  const Partition p({{3, 1}, {0, 2}}, 4);
  CHECK(p.cluster(0) == std::vector<int>{1, 3});
  CHECK(p.cluster_of(2) == 1);
}

TEST_CASE("disconnected cluster is rejected") {
  const auto net = WeightedNetwork::from_edges(4, {{0, 2, 1}, {1, 3, 1}, {0, 1, 1}});
  const Partition part({{0, 1}, {2, 3}}, 4);
  try {
    require_connected_clusters(net, part);
    FAIL("expected ClusterNotConnected");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ClusterNotConnected);
  }
}

TEST_CASE("EEP checks") {
  SUBCASE("example 1 is exact") {
    const auto r = check_partition(example1_network(), example1_partition());
    CHECK(r.is_exact);
    CHECK(r.deviation_K <= r.tolerance);
  }
  SUBCASE("equal inter weights between two clusters") {
    const auto net = WeightedNetwork::from_edges(4, {{0, 1, 1}, {2, 3, 1}, {0, 2, 2}, {1, 3, 2}});
    CHECK(check_partition(net, Partition({{0, 1}, {2, 3}}, 4)).is_exact);
  }
  SUBCASE("a13 = 1.4 gives K = 0.4") {
    Eigen::MatrixXd a = example1_adjacency();
    a(0, 2) = a(2, 0) = 1.4;
    const auto net = WeightedNetwork::from_adjacency(a);
    const auto part = example1_partition();
    const auto r = check_partition(net, part);
    CHECK_FALSE(r.is_exact);
    CHECK(r.deviation_K == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(r.deviation_K == doctest::Approx(oracle::eep_deviation(a, part.clusters())).epsilon(1e-12));
  }
}

TEST_CASE("EEP deviation agrees with brute force on random graphs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = oracle::random_clustered(rng);
    std::vector<Edge> edges;
    for (auto [i, j, w] : g.edges) edges.push_back({i, j, w});
    const auto net = WeightedNetwork::from_edges(g.n, edges);
    const Partition part(g.clusters, g.n);
    CHECK(check_partition(net, part).deviation_K ==
          doctest::Approx(oracle::eep_deviation(net.adjacency(), g.clusters)).epsilon(1e-12));
  }
}

TEST_CASE("algebraic connectivity") {
  const auto tri = WeightedNetwork::from_edges(3, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}});
  CHECK(fiedler_value(tri.laplacian()) == doctest::Approx(3.0));
  const auto pair = WeightedNetwork::from_edges(2, {{0, 1, 1}});
  CHECK(fiedler_value(pair.laplacian()) == doctest::Approx(2.0));
  CHECK(algebraic_connectivity(example1_network(), example1_partition()) == doctest::Approx(1.0));
}

TEST_CASE("B W B^T equals the Laplacian on random graphs") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = oracle::random_clustered(rng);
    std::vector<Edge> edges;
    for (auto [i, j, w] : g.edges) edges.push_back({i, j, w});
    const auto net = WeightedNetwork::from_edges(g.n, edges);
    const auto inc = build_incidence(net, Partition(g.clusters, g.n));
    const Eigen::MatrixXd l = inc.matrix * inc.weight_matrix() * inc.matrix.transpose();
    CHECK((l - laplacian_of(net.adjacency())).norm() < 1e-12);
  }
}
