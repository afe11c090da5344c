// sfvsim: command-line entry point for scenario runs, sweeps, detection
// tables, key-space arithmetic and single handshake transcripts.

#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sfv/adversary.hpp"
#include "sfv/analytics.hpp"
#include "sfv/config.hpp"
#include "sfv/csv.hpp"
#include "sfv/protocol.hpp"
#include "sfv/simulator.hpp"

namespace {

using namespace sfv;

struct CommonOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<std::string> mode;
  std::optional<double> duration;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config, "Scenario configuration file (key = value)");
  cmd->add_option("--seed", o.seed, "Master seed (overrides the config)");
  cmd->add_option("--out", o.out, "Output CSV path (default: stdout)");
  cmd->add_option("--mode", o.mode, "SFV mode: off, sfv or sfv-ranging");
  cmd->add_option("--duration", o.duration, "Simulated seconds");
}

Scenario load_scenario(const CommonOptions& o) {
  Scenario sc = o.config.empty() ? Scenario{} : load_scenario_config(o.config);
  if (o.seed) sc.master_seed = *o.seed;
  if (o.mode) sc.sfv_mode = parse_sfv_mode(*o.mode);
  if (o.duration) sc.duration = *o.duration;
  sc.validate();
  return sc;
}

void emit(const CsvTable& table, const std::string& out) {
  if (out.empty()) {
    std::cout << to_csv(table);
  } else {
    write_csv(table, out);
  }
}

struct ProfileOptions {
  std::optional<double> p_wh;
  std::optional<double> p_i;
  std::optional<double> p_r;
  double detection_p = kCalibratedDetection;
};

void add_profile(CLI::App* cmd, ProfileOptions& o) {
  cmd->add_option("--p-wh", o.p_wh, "Probability a wormhole replay goes unnoticed");
  cmd->add_option("--p-i", o.p_i, "Probability an id replay goes unnoticed");
  cmd->add_option("--p-r", o.p_r, "Probability a local rtt replay goes unnoticed");
  cmd->add_option("--detection-p", o.detection_p,
                  "Per-id detection probability used when no --p-* option is given")
      ->capture_default_str();
}

DetectionModel model_from(const ProfileOptions& o) {
  DetectionModel m;
  if (o.p_wh || o.p_i || o.p_r) {
    m.p_wh = o.p_wh.value_or(0.0);
    m.p_i = o.p_i.value_or(0.0);
    m.p_r = o.p_r.value_or(0.0);
  } else {
    m = DetectionModel::calibrated(o.detection_p, 1);
  }
  m.validate();
  return m;
}

std::vector<SfvMode> parse_modes(const std::string& text) {
  std::vector<SfvMode> modes;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    modes.push_back(parse_sfv_mode(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return modes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strict friendliness verification MANET simulator"};
  app.require_subcommand(1);

  CommonOptions run_opts;
  std::string clusters_out;
  auto* run = app.add_subcommand("run", "Run one scenario and write its metrics");
  add_common(run, run_opts);
  run->add_option("--clusters-out", clusters_out, "Per-cluster friendly/suspicious counts CSV");

  CommonOptions sweep_opts;
  std::string variable = "tx_rate";
  std::string values;
  std::string modes_text;
  int repetitions = 1;
  unsigned threads = 0;
  std::string summary_out;
  std::uint64_t attempts = 10000;
  ProfileOptions sweep_profile;
  auto* sweep = app.add_subcommand("sweep", "Sweep tx_rate, node_speed or n_ids and write a curve CSV");
  add_common(sweep, sweep_opts);
  sweep->add_option("--variable", variable, "tx_rate, node_speed or n_ids")->capture_default_str();
  sweep->add_option("--values", values, "Comma separated sweep values")->required();
  sweep->add_option("--modes", modes_text, "Comma separated modes (default: the --mode or config mode)");
  sweep->add_option("--repetitions", repetitions, "Seeds per point")->capture_default_str();
  sweep->add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();
  sweep->add_option("--summary-out", summary_out, "Per-point mean CSV");
  sweep->add_option("--attempts", attempts, "Attacker attempts per point (n_ids sweeps)")->capture_default_str();
  add_profile(sweep, sweep_profile);

  ProfileOptions detect_profile;
  int n_max = 10;
  std::string detect_out;
  auto* detect = app.add_subcommand("detect", "Tabulate detection probability and detection rate");
  add_profile(detect, detect_profile);
  detect->add_option("--n-max", n_max, "Largest number of symmetric ids")->capture_default_str();
  detect->add_option("--out", detect_out, "Output CSV path (default: stdout)");

  unsigned bits = 90;
  std::string keyspace_out;
  auto* keyspace = app.add_subcommand("keyspace", "Exact key-space and brute-force arithmetic");
  keyspace->add_option("--bits", bits, "Key length in bits")->capture_default_str();
  keyspace->add_option("--out", keyspace_out, "Output CSV path (default: stdout)");

  CommonOptions hs_opts;
  double hs_distance = 150.0;
  std::string hs_role = "honest";
  std::optional<double> hs_latency;
  auto* handshake = app.add_subcommand("handshake", "Run one verbose SFV handshake and print its transcript");
  add_common(handshake, hs_opts);
  handshake->add_option("--distance", hs_distance, "Initiator-responder distance in meters")->capture_default_str();
  handshake->add_option("--role", hs_role, "Initiator role: honest, sybil or wormhole")->capture_default_str();
  handshake->add_option("--tunnel-latency", hs_latency, "Wormhole tunnel latency in seconds");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const Scenario sc = load_scenario(run_opts);
      Simulation sim(sc);
      sim.run();
      const ScenarioMetrics m = sim.measure_metrics();
      emit(metrics_table(m, sc), run_opts.out);
      if (!clusters_out.empty()) {
        write_csv(cluster_table(m), clusters_out);
      }
    } else if (*sweep) {
      const Scenario sc = load_scenario(sweep_opts);
      SweepSpec spec;
      spec.variable = parse_sweep_variable(variable);
      spec.values = parse_number_list(values);
      spec.repetitions = repetitions;
      spec.validate();
      if (spec.variable == SweepVariable::kNIds) {
        std::vector<int> ns;
        for (const double v : spec.values) ns.push_back(static_cast<int>(v));
        const auto rows = compare_analytic_empirical(model_from(sweep_profile), ns, attempts, sc.handshake, sc.master_seed);
        emit(comparison_table(rows), sweep_opts.out);
      } else {
        const std::vector<SfvMode> modes = modes_text.empty() ? std::vector<SfvMode>{sc.sfv_mode} : parse_modes(modes_text);
        const auto records = run_sweep(sc, spec, modes, threads);
        emit(sweep_table(records, spec.variable), sweep_opts.out);
        if (!summary_out.empty()) {
          write_csv(sweep_summary_table(records, spec.variable), summary_out);
        }
      }
    } else if (*detect) {
      emit(detection_table(model_from(detect_profile), n_max), detect_out);
    } else if (*keyspace) {
      emit(keyspace_table(bits), keyspace_out);
    } else if (*handshake) {
      const Scenario sc = load_scenario(hs_opts);
      RandomStream rng(derive_seed(sc.master_seed, 0x4853));
      const IdPool shared(draw_distinct_ids(static_cast<std::size_t>(sc.n_ids), rng));
      IdPool initiator = shared;
      IdPool responder = shared;
      const EvidencePair clean =
          make_link_evidence({0.0, 0.0}, {hs_distance, 0.0}, sc.radio_ranges.back(), sc, rng);
      EvidencePair ev = clean;
      if (hs_role == "sybil") {
        initiator = IdPool(draw_distinct_ids(1, rng, {shared.ids().begin(), shared.ids().end()}));
      } else if (hs_role == "wormhole") {
        WormholeTunnel tunnel{NodeId{0}, NodeId{1}, hs_latency.value_or(sc.tunnel_latency), std::nullopt, {}};
        tunnel.validate();
        ev = {wormhole_perturb(clean.initiator, tunnel), wormhole_perturb(clean.responder, tunnel)};
      } else if (hs_role != "honest") {
        throw ConfigError("unknown role '" + hs_role + "' (expected honest, sybil or wormhole)");
      }
      Transcript transcript;
      const Verdict v = run_handshake(initiator, responder, [&ev](int) { return ev; }, sc.handshake, rng, &transcript);
      const std::string text = transcript.to_text();
      if (hs_opts.out.empty()) {
        std::cout << text;
      } else {
        std::ofstream(hs_opts.out, std::ios::binary) << text;
      }
      std::cerr << "verdict: " << (v.friendly() ? "friendly" : "suspicious");
      for (const Reason& r : v.reasons) std::cerr << ' ' << r.to_string();
      std::cerr << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "sfvsim: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
