// Tick-driven MANET simulator: clustered deployment, random-waypoint
// mobility, single-hop CBR flows over FIFO queues, SFV-gated links and
// metric collection.
//
// Link model. Every flow rescans its neighbor at a fixed interval. The scan
// selects a radio range (full power, or power-stepped in ranging mode) and,
// under SFV, runs a fresh handshake whose cost blocks the flow's channel
// share. Between scans the sender trusts the last result: packets it sends
// to a receiver that has left the selected range are lost (dropped-range).
// A scan that finds no reachable, verified receiver flushes the queue and
// the flow stays down until a later scan succeeds.
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "sfv/adversary.hpp"
#include "sfv/core.hpp"
#include "sfv/protocol.hpp"
#include "sfv/random.hpp"
#include "sfv/ranging.hpp"

namespace sfv {

enum class SfvMode { kOff, kSfv, kSfvRanging };

std::string to_string(SfvMode mode);
/// Accepts "off", "sfv", "sfv-ranging". Throws ConfigError otherwise.
SfvMode parse_sfv_mode(const std::string& text);

struct Scenario {
  // Deployment.
  double terrain_width = 3000.0;
  double terrain_height = 3000.0;
  int clusters = 10;
  double cluster_size = 300.0;
  int nodes_per_cluster = 80;
  std::vector<double> radio_ranges{230.0, 250.0, 270.0};
  double tx_rate_kbps = 200.0;
  int packet_size = 512;
  double speed_min = 5.0;
  double speed_max = 50.0;

  SfvMode sfv_mode = SfvMode::kSfv;
  std::uint64_t master_seed = 1;
  double duration = 60.0;

  double pause_time = 0.0;
  double tick = 1e-3;
  int queue_capacity = 50;
  double channel_capacity_kbps = 5000.0;  // per cluster, shared by its flows
  int flows_per_cluster = 20;
  double scan_interval = 1.0;
  double handshake_cost = 2e-3;
  double ranging_step_cost = 1e-3;  // per ranging exchange, sfv-ranging only
  HandshakeConfig handshake;
  double processing_budget = kDefaultProcessingBudget;
  double responder_processing = 1e-6;
  double aoa_halfwidth = kDefaultAoaHalfwidth;
  /// Per-endpoint measurement noise as a multiple of the seed quantization
  /// step (1 cm, 0.01 deg, 1 ns). Below 1 both ends always agree.
  double measurement_noise = 0.0;
  int n_ids = 6;
  int attackers_per_cluster = 0;
  double wormhole_fraction = 0.5;
  double tunnel_latency = 10e-6;
  ReplayProfile replay;

  /// Throws ConfigError on any inconsistent field.
  void validate() const;
  /// Desk-scale variant: 2 clusters of 20 nodes.
  static Scenario desk_scale();
};

struct ClusterCounts {
  int friendly = 0;
  int suspicious = 0;
  friend bool operator==(const ClusterCounts&, const ClusterCounts&) = default;
};

struct ScenarioMetrics {
  double aggregate_throughput_kbps = 0.0;
  double offered_load_kbps = 0.0;
  double mean_delay_s = 0.0;
  double pdr = 1.0;
  bool zero_generated = true;

  std::uint64_t generated = 0;
  std::uint64_t delivered = 0;
  std::uint64_t dropped_queue = 0;
  std::uint64_t dropped_range = 0;
  std::uint64_t in_flight = 0;

  std::uint64_t handshakes = 0;
  std::uint64_t handshakes_failed = 0;
  std::uint64_t scan_attempts = 0;

  std::vector<ClusterCounts> clusters;
  std::uint64_t attacker_handshakes = 0;
  std::uint64_t attacker_detected = 0;
  double empirical_detection_rate = 0.0;

  /// Running digest over the event trace.
  std::uint64_t trace_digest = 0;

  friend bool operator==(const ScenarioMetrics&, const ScenarioMetrics&) = default;
};

struct SpeedRange {
  double min = 5.0;
  double max = 50.0;
};

/// Places the node uniformly in `area` and draws its first waypoint/speed.
void init_random_waypoint(NodeProfile& node, const Rect& area, SpeedRange speeds, RandomStream& rng);

/// Advances one random-waypoint step of `dt` seconds inside `area`.
NodeProfile step_mobility(NodeProfile profile, double dt, const Rect& area, SpeedRange speeds,
                          double pause_time, RandomStream& rng);

/// Evidence for an honest link: ranging is measured from the geometry via
/// ToA/ToD and RTT timestamps; each side gets its own noisy reading.
EvidencePair make_link_evidence(Vec2 initiator, Vec2 responder, double selected_range,
                                const Scenario& sc, RandomStream& noise);

/// Outcome of one planted-attacker verification attempt.
struct AttackerAttempt {
  Verdict verdict;
  bool evaded_all_ids = false;
};

/// One attacker attempt against a verifier holding `shared_pool` (size =
/// number of detection ids). For each id, sample_detection decides whether
/// that id's check catches the replay. If any id catches it, the attacker
/// must present its own forged material (foreign id for Sybil, tunneled
/// evidence for wormhole) to a real handshake; otherwise it replays valid
/// material successfully.
AttackerAttempt simulate_attacker_attempt(Role role, const IdPool& shared_pool,
                                          const std::vector<SymmetricId>& forged_ids,
                                          const EvidencePair& clean, const WormholeTunnel& tunnel,
                                          const ReplayProfile& profile, const HandshakeConfig& cfg,
                                          RandomStream& detection_rng, RandomStream& payloads);

struct DetectionTally {
  std::uint64_t attempts = 0;
  std::uint64_t detected = 0;
  double rate() const { return attempts == 0 ? 0.0 : static_cast<double>(detected) / attempts; }
};

/// Runs `attempts` attacker attempts (alternating Sybil and wormhole)
/// against verifiers with `n_ids` detection ids.
DetectionTally run_detection_trials(const ReplayProfile& profile, int n_ids, std::uint64_t attempts,
                                    const HandshakeConfig& cfg, std::uint64_t seed);

/// Generates `count` distinct symmetric ids, skipping any in `exclude`.
std::vector<SymmetricId> draw_distinct_ids(std::size_t count, RandomStream& rng,
                                           const std::vector<SymmetricId>& exclude = {});

class Simulation {
 public:
  explicit Simulation(Scenario sc);
  ~Simulation();
  Simulation(Simulation&&) noexcept;
  Simulation& operator=(Simulation&&) noexcept;

  /// Advances one tick. Returns false once the duration is exhausted.
  bool step();
  void run();

  std::vector<ClusterCounts> collect_detection_counts() const;
  ScenarioMetrics measure_metrics() const;

  const Scenario& scenario() const;
  const std::vector<NodeProfile>& nodes() const;
  double now() const;

 private:
  struct State;
  std::unique_ptr<State> state_;
};

ScenarioMetrics run_scenario(const Scenario& sc, double duration);

}  // namespace sfv
