#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "kurasync/certificates.hpp"
#include "kurasync/dynamics.hpp"
#include "kurasync/metrics.hpp"
#include "kurasync/network.hpp"

namespace kurasync {

namespace fs = std::filesystem;

struct GaussianHz {
  double mean_hz = 0.0;
  double sd_hz = 0.0;
};

/// Natural frequencies: an explicit vector in rad/s, or one Gaussian per
/// cluster in Hz (a single entry is shared by every cluster). Samples are
/// converted with omega = 2 pi f.
struct FrequencySpec {
  std::vector<double> explicit_rad;
  std::vector<GaussianHz> per_cluster;
  std::uint64_t seed = 0;
};

struct ExperimentConfig {
  std::string network;  // path; may be empty when the network is supplied directly
  std::vector<std::vector<int>> partition;  // overrides the network file when nonempty
  FrequencySpec frequencies;
  std::vector<double> theta0;  // explicit initial phases; drawn near the manifold when empty
  std::uint64_t initial_seed = 1;
  double initial_spread = 0.1;
  double initial_max_distance = 0.1;
  double dt = 1e-3;
  double t_end = 100.0;
  double burn_in = 0.0;
  int output_stride = 1;
  double intra_multiplier = 1.0;
  std::string output_dir = "out";

  /// Throws InvalidInput on the first bad field.
  void validate() const;
};

nlohmann::json to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const fs::path& path);

Eigen::VectorXd sample_frequencies(const FrequencySpec& spec, const Partition& part);
Eigen::VectorXd initial_phases(const ExperimentConfig& cfg, const Partition& part);

/// Copy of net with every intra-cluster weight multiplied by c.
WeightedNetwork scale_intra_weights(const WeightedNetwork& net, const Partition& part, double c);

/// Worker count: KURASYNC_THREADS when set (>= 1), else hardware concurrency.
int thread_budget();

/// Runs body(0..n-1) on up to thread_budget() threads.
void parallel_for(int n, const std::function<void(int)>& body);

// Example 1: 8 nodes, clusters {0,1}, {2,3,4}, {5,6,7}; a1, a2, a3 intra
// weights, b1 and b2 inter weights (half weight on edges (0,3) and (1,3)).
WeightedNetwork example1_network(double a1 = 1.0, double a2 = 1.0, double a3 = 1.0, double b1 = 1.0,
                                 double b2 = 1.0);
Partition example1_partition();
Eigen::VectorXd example1_frequencies();

// Example 2: 6 nodes, path clusters {0,1,2} (weight a1) and {3,4,5} (a2)
// joined by (0,5), (1,4), (2,3) of weight b.
WeightedNetwork example2_network(double a1, double a2, double b);
Partition example2_partition();
Eigen::VectorXd example2_frequencies();

struct ExampleReport {
  std::string id;
  SimulationRecord record;
  double max_intra_late = 0.0;  // max intra difference over t in [60, t_end]
  std::optional<StabilityCertificate> certificate;
  std::optional<TwoClusterResult> two_cluster;
  std::vector<TradeoffPoint> tradeoff;
};

/// id in {"1", "2-stable", "2-unstable"}; writes artifacts when out_dir is
/// nonempty.
ExampleReport run_example(const std::string& id, const fs::path& out_dir = {}, double t_end = 100.0);

struct SweepPoint {
  double multiplier = 0.0;
  double distance = 0.0;  // sup of the manifold distance over the final 20 % of the run
};

std::vector<SweepPoint> practical_sweep(const WeightedNetwork& net, const Partition& part,
                                        const ExperimentConfig& cfg, std::vector<double> multipliers);
void write_sweep_csv(const fs::path& path, const std::vector<SweepPoint>& sweep);

struct ConnectomeResult {
  Eigen::MatrixXd adjacency;  // region-level, symmetric, max entry 10
  std::vector<int> retained;  // region ids kept in `adjacency`
  std::vector<std::string> warnings;
};

/// Binarizes each subject, sums each (source region, target region) block
/// and divides by the size of the target region, averages over subjects,
/// symmetrizes and rescales to a maximum weight of 10. When the result is
/// disconnected the largest component is kept with a warning; when no
/// component has two regions DisconnectedResult is thrown.
ConnectomeResult preprocess_connectome(const std::vector<Eigen::MatrixXd>& raw,
                                       const std::vector<int>& region_of);

/// Reads every *.csv in raw_dir (sorted by name) and a "subregion,region"
/// CSV map.
ConnectomeResult preprocess_connectome_files(const fs::path& raw_dir, const fs::path& region_map);

/// 66 nodes in three contiguous 22-node modules; intra edges with
/// probability 0.6 and weight U(5, 10), inter edges with probability 0.1 and
/// weight U(0.5, 2). Redraws until the graph and every module are connected.
WeightedNetwork synthetic_connectome(std::uint64_t seed);

enum class BrainScenario { Homogeneous, Heterogeneous, StrongIntra };
BrainScenario parse_scenario(const std::string& name);
std::string_view to_string(BrainScenario s);

struct BrainSettings {
  double t_end = 100.0;
  double burn_in = 40.0;
  double dt = 1e-4;
  double metric_dt = 1e-3;
  double corr_dt = 1e-2;
};

struct BrainReport {
  BrainScenario scenario = BrainScenario::Homogeneous;
  double mean_r_global = 0.0;
  std::vector<double> mean_r_cluster;
  BlockContrast neural_contrast;
  BlockContrast bold_contrast;
  OrderParameterSeries order;
  CorrelationMatrix neural_corr;
  CorrelationMatrix bold_corr;
  std::vector<double> bold_times;
  Eigen::MatrixXd bold;
};

/// Simulates one scenario on a 66-node network with clusters {0-21},
/// {22-43}, {44-65}. Writes order_parameters.csv, neural_correlation.csv,
/// bold_correlation.csv, bold.csv and summary.json when out_dir is nonempty.
BrainReport brain_experiment(BrainScenario scenario, const WeightedNetwork& net, std::uint64_t seed,
                             const fs::path& out_dir = {}, const BrainSettings& settings = {});

nlohmann::json brain_summary(const BrainReport& report);

}  // namespace kurasync
