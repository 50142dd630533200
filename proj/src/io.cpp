#include "kurasync/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "kurasync/error.hpp"
#include "kurasync/hemodynamics.hpp"

namespace kurasync::io {

namespace {

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << std::setprecision(17);
  return out;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool parse_row(const std::string& line, std::vector<double>& row) {
  row.clear();
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    cell = trim(cell);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size()) return false;
    row.push_back(v);
  }
  return !row.empty();
}

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t k = 0; k < cells.size(); ++k) out << (k ? "," : "") << cells[k];
  out << '\n';
}

std::vector<std::string> indexed_header(const std::string& first, const std::string& prefix, Eigen::Index n,
                                        int base = 0) {
  std::vector<std::string> h{first};
  for (Eigen::Index i = 0; i < n; ++i) h.push_back(prefix + std::to_string(i + base));
  return h;
}

}  // namespace

std::vector<std::vector<int>> parse_partition(const nlohmann::json& j) {
  if (!j.is_array()) throw Error(ErrorKind::InvalidInput, "partition must be an array of arrays");
  std::vector<std::vector<int>> clusters;
  for (const auto& c : j) {
    if (!c.is_array()) throw Error(ErrorKind::InvalidInput, "partition must be an array of arrays");
    clusters.push_back(c.get<std::vector<int>>());
  }
  return clusters;
}

NetworkFile load_network(const fs::path& path) {
  if (!fs::exists(path)) throw Error(ErrorKind::Io, "no such file: " + path.string());
  if (path.extension() == ".csv") {
    std::vector<std::string> warnings;
    WeightedNetwork net = WeightedNetwork::from_adjacency(read_csv_matrix(path), &warnings);
    return NetworkFile{std::move(net), std::nullopt, std::move(warnings)};
  }
  const nlohmann::json j = read_json(path);
  try {
    const int n = j.at("nodes").get<int>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 3) {
        throw Error(ErrorKind::InvalidInput, "edges must be [i, j, w] triples");
      }
      edges.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<double>()});
    }
    NetworkFile nf{WeightedNetwork::from_edges(n, edges), std::nullopt, {}};
    if (j.contains("partition") && !j["partition"].is_null()) {
      nf.partition = Partition(parse_partition(j["partition"]), n);
    }
    return nf;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidInput, path.string() + ": " + e.what());
  }
}

nlohmann::json network_to_json(const WeightedNetwork& net, const Partition* part) {
  nlohmann::json j;
  j["nodes"] = net.size();
  j["edges"] = nlohmann::json::array();
  for (const Edge& e : net.edges()) j["edges"].push_back({e.i, e.j, e.w});
  if (part) j["partition"] = part->clusters();
  return j;
}

void save_network_json(const fs::path& path, const WeightedNetwork& net, const Partition* part) {
  write_json(path, network_to_json(net, part));
}

Eigen::MatrixXd read_csv_matrix(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string());
  std::vector<std::vector<double>> rows;
  std::vector<double> row;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    if (!parse_row(line, row)) {
      if (first) {
        first = false;
        continue;
      }
      throw Error(ErrorKind::InvalidInput, path.string() + ": non-numeric row '" + line + "'");
    }
    first = false;
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorKind::InvalidInput, path.string() + ": ragged rows");
    }
    rows.push_back(row);
  }
  if (rows.empty()) throw Error(ErrorKind::EmptyInput, path.string() + " holds no data");
  Eigen::MatrixXd m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t k = 0; k < rows[i].size(); ++k) m(i, k) = rows[i][k];
  }
  return m;
}

void write_csv_matrix(const fs::path& path, const Eigen::Ref<const Eigen::MatrixXd>& m,
                      const std::vector<std::string>& header) {
  auto out = open_out(path);
  if (!header.empty()) write_row(out, header);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) out << (k ? "," : "") << m(i, k);
    out << '\n';
  }
}

void write_trajectory_csv(const fs::path& path, const SimulationRecord& rec) {
  auto out = open_out(path);
  write_row(out, indexed_header("t", "theta_", rec.thetas.cols()));
  for (Eigen::Index k = 0; k < rec.n_samples(); ++k) {
    out << rec.times[k];
    for (Eigen::Index i = 0; i < rec.thetas.cols(); ++i) out << ',' << rec.thetas(k, i);
    out << '\n';
  }
}

void write_order_csv(const fs::path& path, const OrderParameterSeries& series) {
  auto out = open_out(path);
  auto header = indexed_header("t", "r_", series.clusters.cols(), 1);
  header.insert(header.begin() + 1, "r_global");
  write_row(out, header);
  for (std::size_t k = 0; k < series.times.size(); ++k) {
    out << series.times[k] << ',' << series.global[k];
    for (Eigen::Index p = 0; p < series.clusters.cols(); ++p) out << ',' << series.clusters(k, p);
    out << '\n';
  }
}

void write_bold_csv(const fs::path& path, const std::vector<double>& times,
                    const Eigen::Ref<const Eigen::MatrixXd>& bold) {
  auto out = open_out(path);
  write_row(out, indexed_header("t", "y_", bold.cols()));
  for (Eigen::Index k = 0; k < bold.rows(); ++k) {
    out << times[k];
    for (Eigen::Index i = 0; i < bold.cols(); ++i) out << ',' << bold(k, i);
    out << '\n';
  }
}

void write_tradeoff_csv(const fs::path& path, const std::vector<TradeoffPoint>& curve) {
  auto out = open_out(path);
  out << "gamma,epsilon_star\n";
  for (const auto& pt : curve) {
    out << pt.gamma << ',';
    if (std::isinf(pt.epsilon_star)) {
      out << "inf";
    } else {
      out << pt.epsilon_star;
    }
    out << '\n';
  }
}

void write_frequency_response_csv(const fs::path& path, const std::vector<double>& freqs_hz) {
  const hemo::Params p;
  auto out = open_out(path);
  out << "f_hz,magnitude,phase\n";
  for (double f : freqs_hz) {
    const auto h = hemo::linearized_response(f, p);
    out << f << ',' << std::abs(h) << ',' << std::arg(h) << '\n';
  }
}

nlohmann::json certificate_to_json(const StabilityCertificate& cert) {
  nlohmann::json j;
  j["gamma"] = cert.gamma;
  j["rho"] = cert.rho;
  j["lambda2"] = cert.lambda2;
  j["epsilon"] = cert.epsilon;
  j["T_star"] = cert.T_star;
  j["kappa"] = cert.kappa_value;
  j["verdict"] = std::string(to_string(cert.verdict));
  return j;
}

void write_json(const fs::path& path, const nlohmann::json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

nlohmann::json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, path.string() + ": " + e.what());
  }
}

void dump_decomposition(const fs::path& dir, const Decomposition& dec) {
  fs::create_directories(dir);
  write_csv_matrix(dir / "B.csv", dec.incidence.matrix);
  write_csv_matrix(dir / "Btilde.csv", dec.tree.incidence);
  write_csv_matrix(dir / "R1.csv", dec.reduction.r1);
  write_csv_matrix(dir / "R2.csv", dec.reduction.r2);
  write_csv_matrix(dir / "R3.csv", dec.reduction.r3);
  write_csv_matrix(dir / "R4.csv", dec.reduction.r4);
}

}  // namespace kurasync::io
