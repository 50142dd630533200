#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "kurasync/certificates.hpp"
#include "kurasync/dynamics.hpp"
#include "kurasync/metrics.hpp"
#include "kurasync/network.hpp"
#include "kurasync/tree.hpp"

namespace kurasync::io {

namespace fs = std::filesystem;

struct NetworkFile {
  WeightedNetwork network;
  std::optional<Partition> partition;
  std::vector<std::string> warnings;
};

/// {"nodes": N, "edges": [[i, j, w], ...], "partition": [[...], ...]}
/// (0-based, partition optional) or a dense N x N CSV adjacency.
NetworkFile load_network(const fs::path& path);
nlohmann::json network_to_json(const WeightedNetwork& net, const Partition* part = nullptr);
void save_network_json(const fs::path& path, const WeightedNetwork& net, const Partition* part = nullptr);

/// Numeric CSV; a first line that does not parse as numbers is skipped.
Eigen::MatrixXd read_csv_matrix(const fs::path& path);
void write_csv_matrix(const fs::path& path, const Eigen::Ref<const Eigen::MatrixXd>& m,
                      const std::vector<std::string>& header = {});

/// t,theta_0,...,theta_{N-1}
void write_trajectory_csv(const fs::path& path, const SimulationRecord& rec);
/// t,r_global,r_1,...,r_r
void write_order_csv(const fs::path& path, const OrderParameterSeries& series);
/// t,y_0,...,y_{N-1}
void write_bold_csv(const fs::path& path, const std::vector<double>& times,
                    const Eigen::Ref<const Eigen::MatrixXd>& bold);
/// gamma,epsilon_star
void write_tradeoff_csv(const fs::path& path, const std::vector<TradeoffPoint>& curve);
/// f_hz,magnitude,phase
void write_frequency_response_csv(const fs::path& path, const std::vector<double>& freqs_hz);

nlohmann::json certificate_to_json(const StabilityCertificate& cert);
void write_json(const fs::path& path, const nlohmann::json& j);
nlohmann::json read_json(const fs::path& path);

/// B.csv, Btilde.csv, R1.csv ... R4.csv into `dir`.
void dump_decomposition(const fs::path& dir, const Decomposition& dec);

std::vector<std::vector<int>> parse_partition(const nlohmann::json& j);

}  // namespace kurasync::io
