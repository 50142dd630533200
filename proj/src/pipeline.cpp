#include "kurasync/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <thread>

#include "kurasync/error.hpp"
#include "kurasync/hemodynamics.hpp"
#include "kurasync/io.hpp"

namespace kurasync {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::InvalidInput, what);
}

bool finite_all(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

Eigen::VectorXd to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

// ---------------------------------------------------------------- config

void ExperimentConfig::validate() const {
  require(std::isfinite(dt) && dt > 0.0, "dt must be positive");
  require(std::isfinite(t_end) && t_end >= dt, "t_end must be at least dt");
  require(std::isfinite(burn_in) && burn_in >= 0.0 && burn_in < t_end, "burn_in must lie in [0, t_end)");
  require(output_stride >= 1, "output_stride must be >= 1");
  require(std::isfinite(intra_multiplier) && intra_multiplier > 0.0, "intra_multiplier must be positive");
  require(std::isfinite(initial_spread) && initial_spread >= 0.0, "initial_spread must be nonnegative");
  require(std::isfinite(initial_max_distance), "initial_max_distance must be finite");
  require(finite_all(theta0), "theta0 must be finite");
  const bool has_explicit = !frequencies.explicit_rad.empty();
  const bool has_gauss = !frequencies.per_cluster.empty();
  require(has_explicit != has_gauss, "frequencies need exactly one of 'omega' or 'gaussian_hz'");
  require(finite_all(frequencies.explicit_rad), "omega must be finite");
  for (const auto& g : frequencies.per_cluster) {
    require(std::isfinite(g.mean_hz) && std::isfinite(g.sd_hz) && g.sd_hz >= 0.0,
            "gaussian_hz entries need finite mean and sd >= 0");
  }
}

nlohmann::json to_json(const ExperimentConfig& cfg) {
  nlohmann::json freq;
  if (!cfg.frequencies.explicit_rad.empty()) freq["omega"] = cfg.frequencies.explicit_rad;
  if (!cfg.frequencies.per_cluster.empty()) {
    freq["gaussian_hz"] = nlohmann::json::array();
    for (const auto& g : cfg.frequencies.per_cluster) {
      freq["gaussian_hz"].push_back({{"mean", g.mean_hz}, {"sd", g.sd_hz}});
    }
  }
  freq["seed"] = cfg.frequencies.seed;

  nlohmann::json j;
  j["network"] = cfg.network;
  j["partition"] = cfg.partition;
  j["frequencies"] = freq;
  j["theta0"] = cfg.theta0;
  j["initial_seed"] = cfg.initial_seed;
  j["initial_spread"] = cfg.initial_spread;
  j["initial_max_distance"] = cfg.initial_max_distance;
  j["dt"] = cfg.dt;
  j["t_end"] = cfg.t_end;
  j["burn_in"] = cfg.burn_in;
  j["output_stride"] = cfg.output_stride;
  j["intra_multiplier"] = cfg.intra_multiplier;
  j["output_dir"] = cfg.output_dir;
  return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  try {
    require(j.is_object(), "config must be a JSON object");
    static const char* known[] = {"network", "partition", "frequencies", "theta0", "initial_seed",
                                  "initial_spread", "initial_max_distance", "dt", "t_end", "burn_in",
                                  "output_stride", "intra_multiplier", "output_dir"};
    for (const auto& [key, _] : j.items()) {
      require(std::find(std::begin(known), std::end(known), key) != std::end(known),
              "unknown config key '" + key + "'");
    }
    cfg.network = j.value("network", cfg.network);
    if (j.contains("partition")) cfg.partition = io::parse_partition(j["partition"]);
    if (j.contains("frequencies")) {
      const auto& f = j["frequencies"];
      require(f.is_object(), "frequencies must be an object");
      if (f.contains("omega")) cfg.frequencies.explicit_rad = f["omega"].get<std::vector<double>>();
      if (f.contains("gaussian_hz")) {
        for (const auto& g : f["gaussian_hz"]) {
          cfg.frequencies.per_cluster.push_back({g.at("mean").get<double>(), g.at("sd").get<double>()});
        }
      }
      cfg.frequencies.seed = f.value("seed", cfg.frequencies.seed);
    }
    if (j.contains("theta0")) cfg.theta0 = j["theta0"].get<std::vector<double>>();
    cfg.initial_seed = j.value("initial_seed", cfg.initial_seed);
    cfg.initial_spread = j.value("initial_spread", cfg.initial_spread);
    cfg.initial_max_distance = j.value("initial_max_distance", cfg.initial_max_distance);
    cfg.dt = j.value("dt", cfg.dt);
    cfg.t_end = j.value("t_end", cfg.t_end);
    cfg.burn_in = j.value("burn_in", cfg.burn_in);
    cfg.output_stride = j.value("output_stride", cfg.output_stride);
    cfg.intra_multiplier = j.value("intra_multiplier", cfg.intra_multiplier);
    cfg.output_dir = j.value("output_dir", cfg.output_dir);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const fs::path& path) { return config_from_json(io::read_json(path)); }

Eigen::VectorXd sample_frequencies(const FrequencySpec& spec, const Partition& part) {
  const int n = part.n_nodes();
  if (!spec.explicit_rad.empty()) {
    require(static_cast<int>(spec.explicit_rad.size()) == n, "omega has wrong length");
    return to_vector(spec.explicit_rad);
  }
  const auto k = static_cast<int>(spec.per_cluster.size());
  require(k == 1 || k == part.n_clusters(), "gaussian_hz needs one entry or one per cluster");
  std::mt19937_64 rng(spec.seed);
  Eigen::VectorXd omega(n);
  for (int i = 0; i < n; ++i) {
    const GaussianHz& g = spec.per_cluster[k == 1 ? 0 : part.cluster_of(i)];
    std::normal_distribution<double> dist(g.mean_hz, g.sd_hz);
    omega(i) = kTwoPi * (g.sd_hz > 0.0 ? dist(rng) : g.mean_hz);
  }
  return omega;
}

Eigen::VectorXd initial_phases(const ExperimentConfig& cfg, const Partition& part) {
  if (!cfg.theta0.empty()) {
    require(static_cast<int>(cfg.theta0.size()) == part.n_nodes(), "theta0 has wrong length");
    return to_vector(cfg.theta0);
  }
  std::optional<double> cap;
  if (cfg.initial_max_distance > 0.0) cap = cfg.initial_max_distance;
  return phases_near_manifold(part, cfg.initial_seed, cfg.initial_spread, cap);
}

WeightedNetwork scale_intra_weights(const WeightedNetwork& net, const Partition& part, double c) {
  require(std::isfinite(c) && c > 0.0, "intra multiplier must be positive");
  std::vector<Edge> edges = net.edges();
  for (Edge& e : edges) {
    if (part.same_cluster(e.i, e.j)) e.w *= c;
  }
  return WeightedNetwork::from_edges(net.size(), edges);
}

// ---------------------------------------------------------------- threads

int thread_budget() {
  if (const char* env = std::getenv("KURASYNC_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<int>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(int n, const std::function<void(int)>& body) {
  const int workers = std::min(n, thread_budget());
  if (workers <= 1) {
    for (int k = 0; k < n; ++k) body(k);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int k = next++; k < n; k = next++) {
        try {
          body(k);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

// ---------------------------------------------------------------- examples

WeightedNetwork example1_network(double a1, double a2, double a3, double b1, double b2) {
  return WeightedNetwork::from_edges(8, {{0, 1, a1},
                                         {2, 3, a2},
                                         {3, 4, a2},
                                         {5, 6, a3},
                                         {5, 7, a3},
                                         {6, 7, a3},
                                         {0, 2, b1},
                                         {1, 4, b1},
                                         {0, 3, 0.5 * b1},
                                         {1, 3, 0.5 * b1},
                                         {2, 5, b2},
                                         {3, 6, b2},
                                         {4, 7, b2}});
}

Partition example1_partition() { return Partition({{0, 1}, {2, 3, 4}, {5, 6, 7}}, 8); }

Eigen::VectorXd example1_frequencies() {
  Eigen::VectorXd omega(8);
  omega << 0, 0, 5, 5, 5, 10, 10, 10;
  return omega;
}

WeightedNetwork example2_network(double a1, double a2, double b) {
  return WeightedNetwork::from_edges(
      6, {{0, 1, a1}, {1, 2, a1}, {3, 4, a2}, {4, 5, a2}, {0, 5, b}, {1, 4, b}, {2, 3, b}});
}

Partition example2_partition() { return Partition::contiguous({3, 3}); }

Eigen::VectorXd example2_frequencies() {
  Eigen::VectorXd omega(6);
  omega << 5, 5, 5, 1, 1, 1;
  return omega;
}

namespace {

double max_intra_after(const SimulationRecord& rec, const Partition& part, double t_from) {
  double worst = 0.0;
  for (Eigen::Index k = 0; k < rec.n_samples(); ++k) {
    if (rec.times[k] >= t_from) worst = std::max(worst, max_intra_difference(rec.theta(k), part));
  }
  return worst;
}

std::vector<double> log_grid(double lo, double hi, int count) {
  std::vector<double> g(count);
  for (int k = 0; k < count; ++k) {
    g[k] = lo * std::pow(hi / lo, static_cast<double>(k) / (count - 1));
  }
  return g;
}

}  // namespace

ExampleReport run_example(const std::string& id, const fs::path& out_dir, double t_end) {
  WeightedNetwork net = example1_network();
  Partition part = example1_partition();
  Eigen::VectorXd omega = example1_frequencies();
  if (id == "2-stable" || id == "2-unstable") {
    net = example2_network(id == "2-stable" ? 1.0 : 0.01, 1.0, 1.0);
    part = example2_partition();
    omega = example2_frequencies();
  } else if (id != "1") {
    throw Error(ErrorKind::InvalidInput, "unknown example '" + id + "'");
  }

  ExampleReport rep;
  rep.id = id;
  OscillatorConfig oc;
  oc.omega = omega;
  oc.theta0 = phases_near_manifold(part, 1, 0.1, 0.1);
  oc.dt = 1e-3;
  oc.t_end = t_end;
  oc.output_stride = 10;
  rep.record = simulate(oc, net);
  rep.max_intra_late = max_intra_after(rep.record, part, std::min(60.0, 0.6 * t_end));

  rep.certificate = certify(net, part, omega);
  if (id == "1") {
    const double g = std::max(rep.certificate->gamma, 1e-6);
    rep.tradeoff = tradeoff_curve(rep.certificate->rho, rep.certificate->lambda2, log_grid(g * 1e-2, g * 1e2, 20));
  } else {
    rep.two_cluster = two_cluster_test(net, part, omega);
  }

  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    io::save_network_json(out_dir / "network.json", net, &part);
    io::write_trajectory_csv(out_dir / "trajectory.csv", rep.record);
    io::write_order_csv(out_dir / "order_parameters.csv",
                        order_parameters(rep.record.times, rep.record.thetas, part));
    io::write_json(out_dir / "certificate.json", io::certificate_to_json(*rep.certificate));
    if (!rep.tradeoff.empty()) io::write_tradeoff_csv(out_dir / "tradeoff.csv", rep.tradeoff);
    if (rep.two_cluster) {
      nlohmann::json j;
      j["verdict"] = std::string(to_string(rep.two_cluster->verdict));
      j["omega_bar"] = rep.two_cluster->omega_bar;
      j["a_bar"] = rep.two_cluster->a_bar;
      j["commutator_norm"] = rep.two_cluster->commutator_norm;
      j["relative_commutator"] = rep.two_cluster->relative_commutator;
      io::write_json(out_dir / "two_cluster.json", j);
    }
  }
  return rep;
}

// ---------------------------------------------------------------- practical sweep

std::vector<SweepPoint> practical_sweep(const WeightedNetwork& net, const Partition& part,
                                        const ExperimentConfig& cfg, std::vector<double> multipliers) {
  cfg.validate();
  require(!multipliers.empty(), "no multipliers given");
  std::sort(multipliers.begin(), multipliers.end());
  const Eigen::VectorXd omega = sample_frequencies(cfg.frequencies, part);
  const Eigen::VectorXd theta0 = initial_phases(cfg, part);

  std::vector<SweepPoint> out(multipliers.size());
  parallel_for(static_cast<int>(multipliers.size()), [&](int k) {
    const double c = multipliers[k];
    OscillatorConfig oc;
    oc.omega = omega;
    oc.theta0 = theta0;
    oc.dt = cfg.dt;
    oc.t_end = cfg.t_end;
    oc.output_stride = cfg.output_stride;
    const SimulationRecord rec = simulate(oc, scale_intra_weights(net, part, c));
    const double t_from = 0.8 * cfg.t_end;
    double sup = 0.0;
    for (Eigen::Index s = 0; s < rec.n_samples(); ++s) {
      if (rec.times[s] >= t_from) sup = std::max(sup, manifold_distance(rec.theta(s), part));
    }
    out[k] = {c, sup};
  });
  return out;
}

void write_sweep_csv(const fs::path& path, const std::vector<SweepPoint>& sweep) {
  Eigen::MatrixXd m(sweep.size(), 2);
  for (std::size_t k = 0; k < sweep.size(); ++k) m.row(k) << sweep[k].multiplier, sweep[k].distance;
  io::write_csv_matrix(path, m, {"c", "distance"});
}

// ---------------------------------------------------------------- connectome

ConnectomeResult preprocess_connectome(const std::vector<Eigen::MatrixXd>& raw,
                                       const std::vector<int>& region_of) {
  if (raw.empty()) throw Error(ErrorKind::EmptyInput, "no raw connectivity matrices");
  const auto n0 = static_cast<Eigen::Index>(region_of.size());
  if (n0 == 0) throw Error(ErrorKind::EmptyInput, "empty region map");
  for (const auto& m : raw) {
    require(m.rows() == n0 && m.cols() == n0, "raw matrix size does not match the region map");
    require(m.allFinite(), "raw matrix has non-finite entries");
  }
  require(*std::min_element(region_of.begin(), region_of.end()) >= 0, "negative region id");
  const int regions = *std::max_element(region_of.begin(), region_of.end()) + 1;
  std::vector<int> region_size(regions, 0);
  for (int r : region_of) ++region_size[r];
  for (int r = 0; r < regions; ++r) {
    require(region_size[r] > 0, "region " + std::to_string(r) + " has no subregions");
  }

  Eigen::MatrixXd avg = Eigen::MatrixXd::Zero(regions, regions);
  for (const auto& m : raw) {
    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(regions, regions);
    for (Eigen::Index i = 0; i < n0; ++i) {
      for (Eigen::Index j = 0; j < n0; ++j) {
        if (i != j && m(i, j) > 0.0) block(region_of[i], region_of[j]) += 1.0;
      }
    }
    for (int b = 0; b < regions; ++b) block.col(b) /= region_size[b];
    avg += block;
  }
  avg /= static_cast<double>(raw.size());
  avg.diagonal().setZero();

  ConnectomeResult res;
  const Eigen::MatrixXd sym = 0.5 * (avg + avg.transpose());

  std::vector<int> all(regions);
  for (int r = 0; r < regions; ++r) all[r] = r;
  const std::vector<int> labels = component_labels(sym, all);
  std::map<int, int> sizes;
  for (int l : labels) ++sizes[l];
  const auto best = std::max_element(sizes.begin(), sizes.end(),
                                     [](const auto& a, const auto& b) { return a.second < b.second; });
  if (best->second < 2) {
    throw Error(ErrorKind::DisconnectedResult, "preprocessed connectome has no edges");
  }
  for (int r = 0; r < regions; ++r) {
    if (labels[r] == best->first) res.retained.push_back(r);
  }
  if (sizes.size() > 1) {
    res.warnings.push_back("connectome is disconnected (" + std::to_string(sizes.size()) +
                           " components); kept the largest with " + std::to_string(best->second) + " of " +
                           std::to_string(regions) + " regions");
  }
  const auto kept = static_cast<Eigen::Index>(res.retained.size());
  res.adjacency.resize(kept, kept);
  for (Eigen::Index a = 0; a < kept; ++a) {
    for (Eigen::Index b = 0; b < kept; ++b) res.adjacency(a, b) = sym(res.retained[a], res.retained[b]);
  }
  res.adjacency *= 10.0 / res.adjacency.maxCoeff();
  return res;
}

ConnectomeResult preprocess_connectome_files(const fs::path& raw_dir, const fs::path& region_map) {
  if (!fs::is_directory(raw_dir)) throw Error(ErrorKind::Io, "not a directory: " + raw_dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(raw_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<Eigen::MatrixXd> raw;
  for (const auto& f : files) raw.push_back(io::read_csv_matrix(f));

  const Eigen::MatrixXd map = io::read_csv_matrix(region_map);
  require(map.cols() == 2, "region map needs two columns: subregion,region");
  std::vector<int> region_of(map.rows(), -1);
  for (Eigen::Index k = 0; k < map.rows(); ++k) {
    const auto sub = static_cast<Eigen::Index>(map(k, 0));
    require(sub >= 0 && sub < map.rows() && map(k, 0) == static_cast<double>(sub),
            "region map subregion ids must be 0..n-1");
    require(region_of[sub] < 0, "subregion listed twice in region map");
    region_of[sub] = static_cast<int>(map(k, 1));
    require(map(k, 1) == static_cast<double>(region_of[sub]), "region ids must be integers");
  }
  return preprocess_connectome(raw, region_of);
}

WeightedNetwork synthetic_connectome(std::uint64_t seed) {
  constexpr int kNodes = 66;
  constexpr int kModule = 22;
  const Partition part = Partition::contiguous({kModule, kModule, kModule});
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution intra_edge(0.6);
  std::bernoulli_distribution inter_edge(0.1);
  std::uniform_real_distribution<double> intra_w(5.0, 10.0);
  std::uniform_real_distribution<double> inter_w(0.5, 2.0);
  for (;;) {
    std::vector<Edge> edges;
    for (int i = 0; i < kNodes; ++i) {
      for (int j = i + 1; j < kNodes; ++j) {
        const bool same = part.same_cluster(i, j);
        if (same ? intra_edge(rng) : inter_edge(rng)) {
          edges.push_back({i, j, same ? intra_w(rng) : inter_w(rng)});
        }
      }
    }
    try {
      WeightedNetwork net = WeightedNetwork::from_edges(kNodes, edges);
      require_connected_clusters(net, part);
      return net;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::GraphDisconnected && e.kind() != ErrorKind::ClusterNotConnected) throw;
    }
  }
}

// ---------------------------------------------------------------- brain

BrainScenario parse_scenario(const std::string& name) {
  if (name == "homogeneous") return BrainScenario::Homogeneous;
  if (name == "heterogeneous") return BrainScenario::Heterogeneous;
  if (name == "strong-intra") return BrainScenario::StrongIntra;
  throw Error(ErrorKind::InvalidInput, "unknown scenario '" + name + "'");
}

std::string_view to_string(BrainScenario s) {
  switch (s) {
    case BrainScenario::Homogeneous:
      return "homogeneous";
    case BrainScenario::Heterogeneous:
      return "heterogeneous";
    case BrainScenario::StrongIntra:
      return "strong-intra";
  }
  return "unknown";
}

BrainReport brain_experiment(BrainScenario scenario, const WeightedNetwork& net, std::uint64_t seed,
                             const fs::path& out_dir, const BrainSettings& settings) {
  require(net.size() == 66, "brain experiment expects a 66-region network");
  const Partition part = Partition::contiguous({22, 22, 22});
  const auto metric_stride = static_cast<int>(std::lround(settings.metric_dt / settings.dt));
  const auto corr_stride = static_cast<int>(std::lround(settings.corr_dt / settings.metric_dt));
  require(metric_stride >= 1 && corr_stride >= 1, "brain sampling steps must be multiples of dt");

  FrequencySpec freq;
  freq.seed = seed;
  if (scenario == BrainScenario::Homogeneous) {
    freq.per_cluster = {{60.0, 0.5}};
  } else {
    freq.per_cluster = {{50.0, 0.5}, {60.0, 0.5}, {70.0, 0.5}};
  }
  const WeightedNetwork coupled =
      scenario == BrainScenario::StrongIntra ? scale_intra_weights(net, part, 2.0) : net;

  OscillatorConfig oc;
  oc.omega = sample_frequencies(freq, part);
  oc.theta0.resize(66);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> uniform(0.0, kTwoPi);
  for (Eigen::Index i = 0; i < 66; ++i) oc.theta0(i) = uniform(rng);
  oc.dt = settings.dt;
  oc.t_end = settings.t_end;
  oc.output_stride = metric_stride;
  const SimulationRecord rec = simulate(oc, coupled);

  BrainReport rep;
  rep.scenario = scenario;
  rep.order = order_parameters(rec.times, rec.thetas, part);
  rep.mean_r_global = rep.order.mean_global(settings.burn_in);
  for (int p = 0; p < 3; ++p) rep.mean_r_cluster.push_back(rep.order.mean_cluster(p, settings.burn_in));

  const Eigen::MatrixXd neural = rec.thetas.array().sin().matrix();
  const Eigen::MatrixXd bold_fine = hemo::simulate_bold(neural, settings.metric_dt, hemo::Params{},
                                                        settings.metric_dt);

  const Eigen::Index coarse = (rec.n_samples() + corr_stride - 1) / corr_stride;
  Eigen::MatrixXd neural_coarse(coarse, 66);
  rep.bold.resize(coarse, 66);
  for (Eigen::Index k = 0; k < coarse; ++k) {
    rep.bold_times.push_back(rec.times[k * corr_stride]);
    neural_coarse.row(k) = neural.row(k * corr_stride);
    rep.bold.row(k) = bold_fine.row(k * corr_stride);
  }
  rep.neural_corr = pearson_matrix(rep.bold_times, neural_coarse, settings.burn_in);
  rep.bold_corr = pearson_matrix(rep.bold_times, rep.bold, settings.burn_in);
  rep.neural_contrast = block_contrast(rep.neural_corr.matrix, part);
  rep.bold_contrast = block_contrast(rep.bold_corr.matrix, part);

  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    io::write_order_csv(out_dir / "order_parameters.csv", rep.order);
    io::write_csv_matrix(out_dir / "neural_correlation.csv", rep.neural_corr.matrix);
    io::write_csv_matrix(out_dir / "bold_correlation.csv", rep.bold_corr.matrix);
    io::write_bold_csv(out_dir / "bold.csv", rep.bold_times, rep.bold);
    io::write_json(out_dir / "summary.json", brain_summary(rep));
  }
  return rep;
}

nlohmann::json brain_summary(const BrainReport& report) {
  nlohmann::json j;
  j["scenario"] = std::string(to_string(report.scenario));
  j["mean_r_global"] = report.mean_r_global;
  j["mean_r_cluster"] = report.mean_r_cluster;
  j["neural_intra"] = report.neural_contrast.mean_intra;
  j["neural_inter"] = report.neural_contrast.mean_inter;
  j["bold_intra"] = report.bold_contrast.mean_intra;
  j["bold_inter"] = report.bold_contrast.mean_inter;
  j["constant_bold_signals"] = report.bold_corr.constant_signals;
  return j;
}

}  // namespace kurasync
