// kurasync command-line front end. Every subcommand writes CSV/JSON
// artifacts; failures print {"error": kind, "message": ...} to stderr.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kurasync/certificates.hpp"
#include "kurasync/error.hpp"
#include "kurasync/io.hpp"
#include "kurasync/metrics.hpp"
#include "kurasync/pipeline.hpp"
#include "kurasync/tree.hpp"

namespace fs = std::filesystem;
using namespace kurasync;

namespace {

struct Loaded {
  WeightedNetwork net;
  Partition part;
  ExperimentConfig cfg;
  std::vector<std::string> warnings;
};

Partition partition_for(const io::NetworkFile& nf, const std::vector<std::vector<int>>& override_part) {
  if (!override_part.empty()) return Partition(override_part, nf.network.size());
  if (nf.partition) return *nf.partition;
  throw Error(ErrorKind::InvalidInput, "no partition in network file or config");
}

Loaded load(const std::string& network_path, const std::string& config_path) {
  ExperimentConfig cfg = load_config(config_path);
  const std::string path = network_path.empty() ? cfg.network : network_path;
  if (path.empty()) throw Error(ErrorKind::InvalidInput, "no network given");
  io::NetworkFile nf = io::load_network(path);
  Partition part = partition_for(nf, cfg.partition);
  WeightedNetwork net = cfg.intra_multiplier == 1.0 ? nf.network
                                                    : scale_intra_weights(nf.network, part, cfg.intra_multiplier);
  return {std::move(net), std::move(part), std::move(cfg), std::move(nf.warnings)};
}

void report_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

std::vector<double> parse_list(const std::string& spec) {
  std::vector<double> out;
  std::stringstream ss(spec);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidInput, "bad number '" + cell + "' in '" + spec + "'");
    }
  }
  if (out.empty()) throw Error(ErrorKind::InvalidInput, "empty list '" + spec + "'");
  return out;
}

// "a,b,c" or "log:lo:hi:count" / "lin:lo:hi:count"
std::vector<double> parse_grid(const std::string& spec) {
  if (spec.rfind("log:", 0) != 0 && spec.rfind("lin:", 0) != 0) return parse_list(spec);
  std::string body = spec.substr(4);
  for (char& c : body) {
    if (c == ':') c = ',';
  }
  const auto v = parse_list(body);
  if (v.size() != 3 || v[2] < 2 || v[2] != std::floor(v[2]) || !(v[0] < v[1])) {
    throw Error(ErrorKind::InvalidInput, "grid spec must be kind:lo:hi:count with lo < hi, count >= 2");
  }
  const bool log = spec[1] == 'o';
  if (log && !(v[0] > 0.0)) throw Error(ErrorKind::InvalidInput, "log grid needs lo > 0");
  const int n = static_cast<int>(v[2]);
  std::vector<double> g(n);
  for (int k = 0; k < n; ++k) {
    const double s = static_cast<double>(k) / (n - 1);
    g[k] = log ? v[0] * std::pow(v[1] / v[0], s) : v[0] + (v[1] - v[0]) * s;
  }
  return g;
}

nlohmann::json eep_json(const EepReport& r, double lambda2) {
  return {{"is_exact", r.is_exact},
          {"deviation_K", r.deviation_K},
          {"tolerance", r.tolerance},
          {"worst", {{"cluster", r.worst_p}, {"i", r.worst_i}, {"j", r.worst_j}, {"target", r.worst_q}}},
          {"lambda2", lambda2}};
}

int fail(ErrorKind kind, const std::string& message) {
  std::cerr << nlohmann::json{{"error", std::string(to_string(kind))}, {"message", message}}.dump() << '\n';
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cluster synchronization toolkit for Kuramoto networks"};
  app.require_subcommand(1);

  std::string network, config, out, dump_dir, gamma_grid, multipliers, scenario, connectome, raw_dir,
      region_map;
  bool as_json = false;
  bool tradeoff = false;
  std::uint64_t seed = 0;

  auto* check = app.add_subcommand("check-partition", "EEP deviation and cluster connectivity");
  check->add_option("--network", network, "network JSON with partition")->required();
  check->add_flag("--json", as_json, "print JSON");

  auto* sim = app.add_subcommand("simulate", "integrate the Kuramoto network");
  sim->add_option("--network", network)->required();
  sim->add_option("--config", config)->required();
  sim->add_option("--out", out)->required();
  sim->add_option("--dump-decomposition", dump_dir, "write B, Btilde and R blocks as CSV");

  auto* cert = app.add_subcommand("certify", "averaging-based stability certificate");
  cert->add_option("--network", network)->required();
  cert->add_option("--config", config)->required();
  cert->add_flag("--tradeoff", tradeoff, "also compute the gamma/epsilon tradeoff curve");
  cert->add_option("--gamma-grid", gamma_grid, "a,b,c or log:lo:hi:count or lin:lo:hi:count");
  cert->add_option("--out", out)->required();
  cert->add_option("--dump-decomposition", dump_dir);

  auto* two = app.add_subcommand("two-cluster", "commutation test for two clusters");
  two->add_option("--network", network)->required();
  two->add_option("--config", config)->required();
  two->add_option("--out", out)->required();

  auto* sweep = app.add_subcommand("sweep-practical", "manifold distance against intra-weight multiplier");
  sweep->add_option("--network", network)->required();
  sweep->add_option("--config", config)->required();
  sweep->add_option("--multipliers", multipliers)->required();
  sweep->add_option("--out", out)->required();

  auto* brain = app.add_subcommand("brain", "66-region brain network experiment");
  brain->add_option("--scenario", scenario)
      ->required()
      ->check(CLI::IsMember({"homogeneous", "heterogeneous", "strong-intra"}));
  brain->add_option("--connectome", connectome, "region adjacency CSV (synthetic when omitted)");
  brain->add_option("--seed", seed)->required();
  brain->add_option("--out", out)->required();

  auto* pre = app.add_subcommand("preprocess", "subregion connectomes to a region network");
  pre->add_option("--raw", raw_dir)->required();
  pre->add_option("--region-map", region_map)->required();
  pre->add_option("--out", out)->required();

  std::string example_id;
  auto* ex = app.add_subcommand("example", "built-in example networks");
  ex->add_option("--id", example_id)->required()->check(CLI::IsMember({"1", "2-stable", "2-unstable"}));
  ex->add_option("--out", out)->required();

  auto* hemo_cmd = app.add_subcommand("hemo-response", "linearized hemodynamic frequency response");
  hemo_cmd->add_option("--out", out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(ErrorKind::InvalidInput, e.what());
  }

  try {
    if (*check) {
      const io::NetworkFile nf = io::load_network(network);
      report_warnings(nf.warnings);
      if (!nf.partition) throw Error(ErrorKind::InvalidInput, "network file has no partition");
      require_connected_clusters(nf.network, *nf.partition);
      const EepReport r = check_partition(nf.network, *nf.partition);
      const double l2 = algebraic_connectivity(nf.network, *nf.partition);
      if (as_json) {
        std::cout << eep_json(r, l2).dump(2) << '\n';
      } else {
        std::cout << (r.is_exact ? "exact EEP" : "approximate EEP") << ", K = " << r.deviation_K
                  << ", lambda2 = " << l2 << '\n';
      }
      return 0;
    }

    if (*sim) {
      Loaded in = load(network, config);
      report_warnings(in.warnings);
      require_connected_clusters(in.net, in.part);
      OscillatorConfig oc;
      oc.omega = sample_frequencies(in.cfg.frequencies, in.part);
      oc.theta0 = initial_phases(in.cfg, in.part);
      oc.dt = in.cfg.dt;
      oc.t_end = in.cfg.t_end;
      oc.output_stride = in.cfg.output_stride;
      const SimulationRecord rec = simulate(oc, in.net);
      const fs::path dir(out);
      io::write_trajectory_csv(dir / "trajectory.csv", rec);
      const auto series = order_parameters(rec.times, rec.thetas, in.part);
      io::write_order_csv(dir / "order_parameters.csv", series);
      nlohmann::json summary{{"samples", rec.n_samples()},
                             {"final_manifold_distance", manifold_distance(rec.theta(rec.n_samples() - 1), in.part)},
                             {"mean_r_global", series.mean_global(in.cfg.burn_in)}};
      io::write_json(dir / "summary.json", summary);
      io::write_json(dir / "config.json", to_json(in.cfg));
      if (!dump_dir.empty()) io::dump_decomposition(dump_dir, decompose(in.net, in.part));
      return 0;
    }

    if (*cert) {
      Loaded in = load(network, config);
      report_warnings(in.warnings);
      const Eigen::VectorXd omega = sample_frequencies(in.cfg.frequencies, in.part);
      const StabilityCertificate c = certify(in.net, in.part, omega);
      const fs::path dir(out);
      io::write_json(dir / "certificate.json", io::certificate_to_json(c));
      if (tradeoff) {
        std::vector<double> grid;
        if (gamma_grid.empty()) {
          const double g = std::max(c.gamma, 1e-6);
          for (int k = 0; k < 20; ++k) grid.push_back(g * 1e-2 * std::pow(1e4, k / 19.0));
        } else {
          grid = parse_grid(gamma_grid);
        }
        io::write_tradeoff_csv(dir / "tradeoff.csv", tradeoff_curve(c.rho, c.lambda2, grid));
      }
      if (!dump_dir.empty()) io::dump_decomposition(dump_dir, decompose(in.net, in.part));
      std::cout << io::certificate_to_json(c).dump() << '\n';
      return 0;
    }

    if (*two) {
      Loaded in = load(network, config);
      report_warnings(in.warnings);
      const Eigen::VectorXd omega = sample_frequencies(in.cfg.frequencies, in.part);
      const TwoClusterResult r = two_cluster_test(in.net, in.part, omega);
      nlohmann::json j{{"verdict", std::string(to_string(r.verdict))},
                       {"omega_bar", r.omega_bar},
                       {"a_bar", r.a_bar},
                       {"commutator_norm", r.commutator_norm},
                       {"relative_commutator", r.relative_commutator}};
      if (r.omega_bar > r.a_bar) j["T2"] = period_T2(r.omega_bar, r.a_bar);
      io::write_json(fs::path(out) / "two_cluster.json", j);
      std::cout << j.dump() << '\n';
      return 0;
    }

    if (*sweep) {
      Loaded in = load(network, config);
      report_warnings(in.warnings);
      const auto result = practical_sweep(in.net, in.part, in.cfg, parse_list(multipliers));
      write_sweep_csv(fs::path(out) / "practical_sweep.csv", result);
      return 0;
    }

    if (*brain) {
      std::vector<std::string> warnings;
      const WeightedNetwork net = connectome.empty()
                                      ? synthetic_connectome(seed)
                                      : WeightedNetwork::from_adjacency(io::read_csv_matrix(connectome), &warnings);
      report_warnings(warnings);
      const BrainReport r = brain_experiment(parse_scenario(scenario), net, seed, out);
      std::cout << brain_summary(r).dump() << '\n';
      return 0;
    }

    if (*pre) {
      const ConnectomeResult r = preprocess_connectome_files(raw_dir, region_map);
      report_warnings(r.warnings);
      const fs::path path(out);
      if (path.extension() == ".json") {
        io::save_network_json(path, WeightedNetwork::from_adjacency(r.adjacency));
      } else {
        io::write_csv_matrix(path, r.adjacency);
      }
      return 0;
    }

    if (*ex) {
      const ExampleReport r = run_example(example_id, out);
      std::cout << io::certificate_to_json(*r.certificate).dump() << '\n';
      return 0;
    }

    if (*hemo_cmd) {
      std::vector<double> freqs;
      for (int k = 0; k <= 200; ++k) freqs.push_back(1e-3 * std::pow(1e5, k / 200.0));
      io::write_frequency_response_csv(fs::path(out) / "frequency_response.csv", freqs);
      return 0;
    }
  } catch (const Error& e) {
    return fail(e.kind(), e.what());
  } catch (const std::exception& e) {
    return fail(ErrorKind::InvalidInput, e.what());
  }
  return 0;
}
