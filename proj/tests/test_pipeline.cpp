#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include <unistd.h>

#include "kurasync/error.hpp"
#include "kurasync/io.hpp"
#include "kurasync/network.hpp"
#include "kurasync/pipeline.hpp"
#include "oracles.hpp"

using namespace kurasync;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("kurasync_test_" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Io;
}

struct CliRun {
  int status = -1;
  std::string err;
};

// runs the CLI binary named by KURASYNC_CLI, capturing stderr
CliRun run_cli(const std::string& args, const fs::path& dir) {
  const char* exe = std::getenv("KURASYNC_CLI");
  REQUIRE(exe != nullptr);
  const fs::path err = dir / "stderr.txt";
  const std::string cmd = std::string(exe) + " " + args + " > /dev/null 2> " + err.string();
  const int raw = std::system(cmd.c_str());
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(err)};
}

ExperimentConfig example1_config(double t_end) {
  ExperimentConfig cfg;
  cfg.partition = example1_partition().clusters();
  const Eigen::VectorXd w = example1_frequencies();
  cfg.frequencies.explicit_rad.assign(w.data(), w.data() + w.size());
  cfg.t_end = t_end;
  cfg.output_stride = 10;
  return cfg;
}

}  // namespace

TEST_CASE("config round trip and validation") {
  ExperimentConfig cfg = example1_config(12.5);
  cfg.network = "net.json";
  cfg.frequencies.per_cluster = {{50, 0.5}, {60, 0.5}};
  cfg.frequencies.explicit_rad.clear();
  cfg.frequencies.seed = 99;
  cfg.theta0 = {0.1, 0.2};
  cfg.intra_multiplier = 4.0;
  const nlohmann::json a = to_json(cfg);
  const nlohmann::json b = to_json(config_from_json(a));
  CHECK(a == b);
  CHECK(a.dump() == b.dump());

  auto bad = [&](const char* key, const nlohmann::json& value) {
    nlohmann::json j = a;
    j[key] = value;
    return kind_of([&] { config_from_json(j); });
  };
  CHECK(bad("dt", -1.0) == ErrorKind::InvalidInput);
  CHECK(bad("t_end", 0.0) == ErrorKind::InvalidInput);
  CHECK(bad("output_stride", 0) == ErrorKind::InvalidInput);
  CHECK(bad("intra_multiplier", -2.0) == ErrorKind::InvalidInput);
  CHECK(bad("unknown_key", 1) == ErrorKind::InvalidInput);
  CHECK(bad("dt", "fast") == ErrorKind::InvalidInput);
}

TEST_CASE("frequency sampling") {
  const Partition part({{0, 1, 2}, {3, 4, 5}}, 6);
  FrequencySpec spec;
  spec.per_cluster = {{50, 0.5}, {70, 0.5}};
  spec.seed = 5;
  const Eigen::VectorXd a = sample_frequencies(spec, part);
  const Eigen::VectorXd b = sample_frequencies(spec, part);
  CHECK((a - b).norm() == 0.0);
  const double two_pi = 2.0 * std::numbers::pi;
  for (int i = 0; i < 3; ++i) CHECK(std::abs(a(i) / two_pi - 50.0) < 3.0);
  for (int i = 3; i < 6; ++i) CHECK(std::abs(a(i) / two_pi - 70.0) < 3.0);
  spec.seed = 6;
  CHECK((sample_frequencies(spec, part) - a).norm() > 0.0);

  FrequencySpec fixed;
  fixed.explicit_rad = {1, 2, 3, 4, 5, 6};
  CHECK(sample_frequencies(fixed, part)(4) == 5.0);
  fixed.explicit_rad.pop_back();
  CHECK(kind_of([&] { sample_frequencies(fixed, part); }) == ErrorKind::InvalidInput);
}

TEST_CASE("intra weight scaling") {
  const auto part = example1_partition();
  const auto net = example1_network();
  const auto scaled = scale_intra_weights(net, part, 3.0);
  const Eigen::MatrixXd& a = net.adjacency();
  const Eigen::MatrixXd& s = scaled.adjacency();
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const double factor = part.cluster_of(i) == part.cluster_of(j) ? 3.0 : 1.0;
      CHECK(s(i, j) == doctest::Approx(factor * a(i, j)));
    }
  }
}

TEST_CASE("connectome preprocessing") {
  SUBCASE("fully connected") {
    const std::vector<int> region_of{0, 0, 1, 1, 2, 2};
    Eigen::MatrixXd raw = Eigen::MatrixXd::Ones(6, 6);
    const auto r = preprocess_connectome({raw}, region_of);
    CHECK(r.adjacency.rows() == 3);
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) CHECK(r.adjacency(a, b) == doctest::Approx(a == b ? 0.0 : 10.0));
    }
    CHECK(r.warnings.empty());
  }
  SUBCASE("no edges") {
    CHECK(kind_of([] { preprocess_connectome({Eigen::MatrixXd::Identity(6, 6)}, {0, 0, 1, 1, 2, 2}); }) ==
          ErrorKind::DisconnectedResult);
  }
  SUBCASE("empty input") {
    CHECK(kind_of([] { preprocess_connectome({}, {0, 1}); }) == ErrorKind::EmptyInput);
  }
  SUBCASE("random fixture against the block-sum oracle") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::vector<int> region_of{0, 1, 0, 2, 1, 2};
    std::vector<Eigen::MatrixXd> raw;
    for (int s = 0; s < 4; ++s) {
      Eigen::MatrixXd m(6, 6);
      for (Eigen::Index k = 0; k < m.size(); ++k) m.data()[k] = u(rng) < 0.5 ? 0.0 : 3.0 * u(rng);
      raw.push_back(m);
    }
    Eigen::MatrixXd expected = oracle::block_average(raw, region_of, 3);
    expected = 0.5 * (expected + expected.transpose()).eval();
    expected *= 10.0 / expected.maxCoeff();
    const auto r = preprocess_connectome(raw, region_of);
    CHECK((r.adjacency - expected).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("largest component is kept") {
    // regions 0 and 1 linked, region 2 isolated
    Eigen::MatrixXd raw = Eigen::MatrixXd::Zero(3, 3);
    raw(0, 1) = 1.0;
    const auto r = preprocess_connectome({raw}, {0, 1, 2});
    CHECK(r.retained == std::vector<int>{0, 1});
    CHECK(r.adjacency.rows() == 2);
    CHECK(!r.warnings.empty());
  }
  SUBCASE("files") {
    const fs::path dir = scratch("preprocess");
    fs::create_directories(dir / "raw");
    const std::vector<int> region_of{0, 0, 1, 1};
    Eigen::MatrixXd m = Eigen::MatrixXd::Ones(4, 4);
    io::write_csv_matrix(dir / "raw" / "s1.csv", m);
    std::ofstream(dir / "map.csv") << "subregion,region\n0,0\n1,0\n2,1\n3,1\n";
    const auto r = preprocess_connectome_files(dir / "raw", dir / "map.csv");
    CHECK(r.adjacency(0, 1) == doctest::Approx(10.0));
    CHECK_THROWS_AS(preprocess_connectome_files(dir / "missing", dir / "map.csv"), Error);
  }
}

TEST_CASE("synthetic connectome") {
  const auto a = synthetic_connectome(3);
  const auto b = synthetic_connectome(3);
  CHECK(a.size() == 66);
  CHECK((a.adjacency() - b.adjacency()).norm() == 0.0);
  const Eigen::MatrixXd& m = a.adjacency();
  CHECK((m - m.transpose()).norm() == 0.0);
  double intra_min = 1e9, intra_max = 0, inter_min = 1e9, inter_max = 0;
  int intra_edges = 0, inter_edges = 0;
  for (int i = 0; i < 66; ++i) {
    for (int j = i + 1; j < 66; ++j) {
      if (m(i, j) == 0.0) continue;
      if (i / 22 == j / 22) {
        ++intra_edges;
        intra_min = std::min(intra_min, m(i, j));
        intra_max = std::max(intra_max, m(i, j));
      } else {
        ++inter_edges;
        inter_min = std::min(inter_min, m(i, j));
        inter_max = std::max(inter_max, m(i, j));
      }
    }
  }
  CHECK(intra_min >= 5.0);
  CHECK(intra_max <= 10.0);
  CHECK(inter_min >= 0.5);
  CHECK(inter_max <= 2.0);
  // 3 * 231 intra pairs at 0.6, 3 * 484 inter pairs at 0.1
  CHECK(std::abs(intra_edges / 693.0 - 0.6) < 0.08);
  CHECK(std::abs(inter_edges / 1452.0 - 0.1) < 0.04);
}

TEST_CASE("practical sweep on an exact partition") {
  const auto part = example1_partition();
  ExperimentConfig cfg = example1_config(20.0);
  const auto sweep = practical_sweep(example1_network(), part, cfg, {4.0, 1.0, 2.0});
  REQUIRE(sweep.size() == 3);
  CHECK(sweep[0].multiplier == 1.0);
  CHECK(sweep[2].multiplier == 4.0);
  for (const auto& p : sweep) CHECK(p.distance < 1e-3);
  CHECK(kind_of([&] { practical_sweep(example1_network(), part, cfg, {1.0, -1.0}); }) == ErrorKind::InvalidInput);
}

TEST_CASE("example runs write their artifacts") {
  const fs::path dir = scratch("example2");
  const auto rep = run_example("2-stable", dir, 20.0);
  REQUIRE(rep.two_cluster.has_value());
  for (const char* f : {"network.json", "trajectory.csv", "order_parameters.csv", "certificate.json",
                        "two_cluster.json"}) {
    CHECK(fs::exists(dir / f));
  }
  const auto cert = io::read_json(dir / "certificate.json");
  for (const char* key : {"gamma", "rho", "lambda2", "epsilon", "T_star", "kappa", "verdict"}) CHECK(cert.contains(key));
  const auto reloaded = io::load_network(dir / "network.json");
  CHECK((reloaded.network.adjacency() - example2_network(1, 1, 1).adjacency()).norm() == 0.0);
  REQUIRE(reloaded.partition.has_value());
  CHECK(reloaded.partition->clusters() == example2_partition().clusters());
  CHECK(kind_of([] { run_example("3"); }) == ErrorKind::InvalidInput);
}

TEST_CASE("command-line interface") {
  const fs::path dir = scratch("cli");
  const auto part = example1_partition();
  io::save_network_json(dir / "net.json", example1_network(), &part);
  io::write_json(dir / "cfg.json", to_json(example1_config(5.0)));
  const std::string net = "--network " + (dir / "net.json").string();
  const std::string cfg = "--config " + (dir / "cfg.json").string();

  SUBCASE("simulate is deterministic") {
    REQUIRE(run_cli("simulate " + net + " " + cfg + " --out " + (dir / "a").string(), dir).status == 0);
    REQUIRE(run_cli("simulate " + net + " " + cfg + " --out " + (dir / "b").string(), dir).status == 0);
    for (const char* f : {"trajectory.csv", "order_parameters.csv"}) {
      const std::string first = slurp(dir / "a" / f);
      CHECK(!first.empty());
      CHECK(first == slurp(dir / "b" / f));
    }
  }
  SUBCASE("check-partition") {
    CHECK(run_cli("check-partition " + net + " --json", dir).status == 0);
  }
  SUBCASE("certify with tradeoff and decomposition dump") {
    const auto r = run_cli("certify " + net + " " + cfg + " --tradeoff --gamma-grid log:0.1:100:20 --out " +
                               (dir / "c").string() + " --dump-decomposition " + (dir / "dec").string(),
                           dir);
    REQUIRE(r.status == 0);
    CHECK(fs::exists(dir / "c" / "certificate.json"));
    const Eigen::MatrixXd curve = io::read_csv_matrix(dir / "c" / "tradeoff.csv");
    CHECK(curve.rows() == 20);
    for (const char* f : {"B.csv", "Btilde.csv", "R1.csv", "R2.csv", "R3.csv", "R4.csv"}) CHECK(fs::exists(dir / "dec" / f));
    const Eigen::MatrixXd b = io::read_csv_matrix(dir / "dec" / "B.csv");
    CHECK(b.rows() == 8);
    CHECK(b.cols() == 13);
  }
  SUBCASE("sweep-practical") {
    REQUIRE(run_cli("sweep-practical " + net + " " + cfg + " --multipliers 1,2 --out " + (dir / "s").string(), dir)
                .status == 0);
    CHECK(io::read_csv_matrix(dir / "s" / "practical_sweep.csv").rows() == 2);
  }
  SUBCASE("failures emit error JSON") {
    const auto missing = run_cli("simulate --network " + (dir / "nope.json").string() + " " + cfg + " --out x", dir);
    CHECK(missing.status != 0);
    const auto j = nlohmann::json::parse(missing.err.substr(missing.err.find('{')));
    CHECK(j.contains("error"));
    CHECK(j.contains("message"));

    std::ofstream(dir / "bad.json") << R"({"dt": -1})";
    const auto bad = run_cli("simulate " + net + " --config " + (dir / "bad.json").string() + " --out x", dir);
    CHECK(bad.status != 0);
    CHECK(bad.err.find("InvalidInput") != std::string::npos);

    CHECK(run_cli("brain --scenario sideways --seed 1 --out x", dir).status != 0);
    CHECK(run_cli("sweep-practical " + net + " " + cfg + " --multipliers 1,zero --out x", dir).status != 0);
    CHECK(run_cli("", dir).status != 0);
  }
}
