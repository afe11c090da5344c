#include "sfv/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

namespace sfv {

std::string to_string(SfvMode mode) {
  switch (mode) {
    case SfvMode::kOff:
      return "off";
    case SfvMode::kSfv:
      return "sfv";
    case SfvMode::kSfvRanging:
      return "sfv-ranging";
  }
  return "unknown";
}

SfvMode parse_sfv_mode(const std::string& text) {
  if (text == "off") return SfvMode::kOff;
  if (text == "sfv") return SfvMode::kSfv;
  if (text == "sfv-ranging") return SfvMode::kSfvRanging;
  throw ConfigError("unknown sfv mode '" + text + "' (expected off, sfv or sfv-ranging)");
}

namespace {

// Stream purposes for derive_seed.
enum Purpose : std::uint64_t {
  kMobilityStream = 1,
  kTrafficStream = 2,
  kCredentialStream = 3,
  kPayloadStream = 4,
  kNoiseStream = 5,
  kDetectionStream = 6,
  kVerifyPayloadStream = 7,
  kVerifyNoiseStream = 8,
};

struct Grid {
  int cols = 1;
  int rows = 1;
};

Grid cluster_grid(int clusters) {
  Grid g;
  g.cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(clusters))));
  g.rows = (clusters + g.cols - 1) / g.cols;
  return g;
}

Rect cluster_rect(const Scenario& sc, int c) {
  const Grid g = cluster_grid(sc.clusters);
  const double cell_w = sc.terrain_width / g.cols;
  const double cell_h = sc.terrain_height / g.rows;
  const int col = c % g.cols;
  const int row = c / g.cols;
  return {col * cell_w + (cell_w - sc.cluster_size) / 2.0, row * cell_h + (cell_h - sc.cluster_size) / 2.0,
          sc.cluster_size, sc.cluster_size};
}

Vec2 uniform_point(const Rect& area, RandomStream& rng) {
  const double x = rng.uniform(area.x0, area.x0 + area.width);
  const double y = rng.uniform(area.y0, area.y0 + area.height);
  return {x, y};
}

void draw_leg(NodeProfile& node, const Rect& area, SpeedRange speeds, RandomStream& rng) {
  node.waypoint = uniform_point(area, rng);
  node.speed = rng.uniform(speeds.min, speeds.max);
}

void advance(NodeProfile& node, double dt, const Rect& area, SpeedRange speeds, double pause_time,
             RandomStream& rng) {
  double left = dt;
  for (int guard = 0; left > 0.0 && guard < 64; ++guard) {
    if (node.pause_left > 0.0) {
      const double p = std::min(left, node.pause_left);
      node.pause_left -= p;
      left -= p;
      node.velocity = {};
      continue;
    }
    if (!(node.speed > 0.0)) {
      node.velocity = {};
      break;
    }
    const Vec2 to = node.waypoint - node.position;
    const double remaining = norm(to);
    if (remaining <= node.speed * left) {
      node.position = node.waypoint;
      left -= remaining / node.speed;
      node.pause_left = pause_time;
      draw_leg(node, area, speeds, rng);
    } else {
      const Vec2 unit = (1.0 / remaining) * to;
      node.position = node.position + (node.speed * left) * unit;
      node.velocity = node.speed * unit;
      left = 0.0;
    }
  }
  node.position.x = std::clamp(node.position.x, area.x0, area.x0 + area.width);
  node.position.y = std::clamp(node.position.y, area.y0, area.y0 + area.height);
}

double snap(double value, double step) { return std::floor(value / step + 0.5) * step; }

double wrap_degrees(double deg) {
  deg = std::fmod(deg, 360.0);
  return deg < 0.0 ? deg + 360.0 : deg;
}

ScanPlan plan_for(const Scenario& sc) {
  ScanPlan plan;
  plan.ranges = sc.radio_ranges;
  plan.mode = sc.sfv_mode == SfvMode::kSfvRanging ? ScanMode::kRanging : ScanMode::kNonRanging;
  return plan;
}

}  // namespace

void Scenario::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) {
      throw ConfigError(what);
    }
  };
  require(terrain_width > 0.0 && terrain_height > 0.0, "terrain dimensions must be positive");
  require(clusters >= 1, "clusters must be at least 1");
  require(cluster_size > 0.0, "cluster_size must be positive");
  const Grid g = cluster_grid(clusters);
  require(terrain_width / g.cols >= cluster_size && terrain_height / g.rows >= cluster_size,
          "clusters do not fit inside the terrain");
  require(nodes_per_cluster >= 2, "nodes_per_cluster must be at least 2");
  ScanPlan{radio_ranges, ScanMode::kRanging}.validate();
  require(tx_rate_kbps >= 0.0 && std::isfinite(tx_rate_kbps), "tx_rate must be non-negative");
  require(packet_size >= 1, "packet_size must be at least 1 byte");
  require(speed_min >= 0.0 && speed_max >= speed_min, "node speed range must satisfy 0 <= min <= max");
  require(duration > 0.0, "duration must be positive");
  require(pause_time >= 0.0, "pause_time must be non-negative");
  require(tick > 0.0, "tick must be positive");
  require(queue_capacity >= 1, "queue_capacity must be at least 1");
  require(channel_capacity_kbps > 0.0, "channel_capacity must be positive");
  require(flows_per_cluster >= 0, "flows_per_cluster must be non-negative");
  require(scan_interval > 0.0, "scan_interval must be positive");
  require(handshake_cost >= 0.0 && ranging_step_cost >= 0.0, "handshake costs must be non-negative");
  handshake.validate();
  require(processing_budget >= 0.0 && responder_processing >= 0.0, "processing delays must be non-negative");
  require(aoa_halfwidth > 0.0 && aoa_halfwidth <= 180.0, "aoa_halfwidth must lie in (0, 180]");
  require(measurement_noise >= 0.0, "measurement_noise must be non-negative");
  require(n_ids >= 1, "n_ids must be at least 1");
  require(attackers_per_cluster >= 0 && attackers_per_cluster <= nodes_per_cluster - 2,
          "attackers_per_cluster must leave at least two honest nodes per cluster");
  require(wormhole_fraction >= 0.0 && wormhole_fraction <= 1.0, "wormhole_fraction must lie in [0, 1]");
  require(tunnel_latency > 0.0, "tunnel_latency must be positive");
  replay.validate();
}

Scenario Scenario::desk_scale() {
  Scenario sc;
  sc.clusters = 2;
  sc.nodes_per_cluster = 20;
  return sc;
}

void init_random_waypoint(NodeProfile& node, const Rect& area, SpeedRange speeds, RandomStream& rng) {
  node.position = uniform_point(area, rng);
  node.velocity = {};
  node.pause_left = 0.0;
  draw_leg(node, area, speeds, rng);
}

NodeProfile step_mobility(NodeProfile profile, double dt, const Rect& area, SpeedRange speeds,
                          double pause_time, RandomStream& rng) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("mobility step needs dt > 0");
  }
  advance(profile, dt, area, speeds, pause_time, rng);
  return profile;
}

EvidencePair make_link_evidence(Vec2 initiator, Vec2 responder, double selected_range, const Scenario& sc,
                                RandomStream& noise) {
  const double d = distance(initiator, responder);
  // Ground truth sits on the seed quantization grid; per-side noise below
  // half a step therefore never changes the derived seeds.
  const double d_true = snap(d, 0.01);
  const double aoa_true = wrap_degrees(snap(bearing_deg(responder, initiator), 0.01));
  const double rtt_true = snap(2.0 * d / kSpeedOfLight + sc.responder_processing, 1e-9);

  auto measure = [&]() {
    TimestampSet ts;
    for (int i = 0; i < sc.handshake.n_ranging; ++i) {
      const double toa = 1e-3 * i;
      ts.pairs.emplace_back(toa, toa + d_true / kSpeedOfLight);
    }
    ts.t1 = 0.0;
    ts.t2 = rtt_true;

    RangingEvidence ev;
    ev.d_radial = radial_distance(ts).meters;
    ev.rtt = round_trip_time(ts);
    ev.aoa = aoa_true;
    if (sc.measurement_noise > 0.0) {
      const double k = sc.measurement_noise;
      ev.d_radial = std::max(0.0, ev.d_radial + k * 0.01 * (noise.uniform01() - 0.5));
      ev.aoa = wrap_degrees(ev.aoa + k * 0.01 * (noise.uniform01() - 0.5));
      ev.rtt = std::max(0.0, ev.rtt + k * 1e-9 * (noise.uniform01() - 0.5));
    }
    ev.d_max = selected_range;
    ev.rtt_max = rtt_max_for(selected_range, sc.processing_budget);
    ev.aoa_center = aoa_true;
    ev.aoa_halfwidth = sc.aoa_halfwidth;
    return ev;
  };
  EvidencePair pair;
  pair.initiator = measure();
  pair.responder = measure();
  return pair;
}

AttackerAttempt simulate_attacker_attempt(Role role, const IdPool& shared_pool,
                                          const std::vector<SymmetricId>& forged_ids,
                                          const EvidencePair& clean, const WormholeTunnel& tunnel,
                                          const ReplayProfile& profile, const HandshakeConfig& cfg,
                                          RandomStream& detection_rng, RandomStream& payloads) {
  bool caught = false;
  for (std::size_t i = 0; i < shared_pool.size(); ++i) {
    if (sample_detection(profile, detection_rng).detected()) {
      caught = true;
    }
  }
  IdPool verifier(std::vector<SymmetricId>(shared_pool.ids().begin(), shared_pool.ids().end()));
  AttackerAttempt out;
  if (!caught || role == Role::kHonest) {
    IdPool replayed = verifier;
    out.verdict = run_handshake(replayed, verifier, [&clean](int) { return clean; }, cfg, payloads);
    out.evaded_all_ids = !caught;
    return out;
  }
  if (role == Role::kSybil) {
    SybilIdentitySet sybil{forged_ids, NodeId{}};
    VictimLink link{verifier, clean.responder, cfg};
    out.verdict = sybil_attempt(sybil, 0, link, payloads);
    return out;
  }
  IdPool replayed = verifier;
  const EvidencePair tunneled{wormhole_perturb(clean.initiator, tunnel), wormhole_perturb(clean.responder, tunnel)};
  out.verdict = run_handshake(replayed, verifier, [&tunneled](int) { return tunneled; }, cfg, payloads);
  return out;
}

std::vector<SymmetricId> draw_distinct_ids(std::size_t count, RandomStream& rng,
                                           const std::vector<SymmetricId>& exclude) {
  std::set<std::uint32_t> taken;
  for (const SymmetricId id : exclude) {
    taken.insert(id.value());
  }
  std::vector<SymmetricId> ids;
  ids.reserve(count);
  while (ids.size() < count) {
    const auto v = static_cast<std::uint32_t>(rng.below(SymmetricId::kLimit));
    if (taken.insert(v).second) {
      ids.emplace_back(v);
    }
  }
  return ids;
}

DetectionTally run_detection_trials(const ReplayProfile& profile, int n_ids, std::uint64_t attempts,
                                    const HandshakeConfig& cfg, std::uint64_t seed) {
  profile.validate();
  cfg.validate();
  if (n_ids < 1) {
    throw ConfigError("n_ids must be at least 1");
  }
  RandomStream setup(derive_seed(seed, kCredentialStream));
  RandomStream detection(derive_seed(seed, kDetectionStream));
  RandomStream payloads(derive_seed(seed, kPayloadStream));
  RandomStream noise(derive_seed(seed, kNoiseStream));

  Scenario sc;
  sc.handshake = cfg;
  WormholeTunnel tunnel{NodeId{0}, NodeId{1}, sc.tunnel_latency, std::nullopt, {}};

  DetectionTally tally;
  for (std::uint64_t a = 0; a < attempts; ++a) {
    const IdPool shared(draw_distinct_ids(static_cast<std::size_t>(n_ids), setup));
    const std::vector<SymmetricId> forged =
        draw_distinct_ids(1, setup, {shared.ids().begin(), shared.ids().end()});
    const double d = setup.uniform(1.0, sc.radio_ranges.front());
    const double angle = setup.uniform(0.0, 2.0 * 3.141592653589793);
    const Vec2 verifier_pos{0.0, 0.0};
    const Vec2 attacker_pos{d * std::cos(angle), d * std::sin(angle)};
    const EvidencePair clean = make_link_evidence(attacker_pos, verifier_pos, sc.radio_ranges.back(), sc, noise);
    const Role role = (a % 2 == 0) ? Role::kSybil : Role::kWormholeEndpoint;
    const AttackerAttempt attempt =
        simulate_attacker_attempt(role, shared, forged, clean, tunnel, profile, cfg, detection, payloads);
    ++tally.attempts;
    if (!attempt.verdict.friendly()) {
      ++tally.detected;
    }
  }
  return tally;
}

// ---------------------------------------------------------------------------

namespace {

struct Flow {
  int cluster = 0;
  std::size_t src = 0;
  std::size_t dst = 0;
  std::deque<double> queue;  // generation times
  double interval = 0.0;     // 0 = no traffic
  double next_gen = 0.0;
  double credit_bits = 0.0;
  double share_bps = 0.0;
  bool up = false;
  double range = 0.0;
  double blocked_until = 0.0;
  double next_scan = 0.0;
  double scan_phase = 0.0;
  bool scanned_once = false;
  IdPool src_pool;
  IdPool dst_pool;
  RandomStream payloads{0};
  RandomStream noise{0};
};

struct NodeStatus {
  bool friendly = false;
  bool suspicious = false;
};

}  // namespace

struct Simulation::State {
  Scenario sc;
  ScanPlan plan;
  std::vector<NodeProfile> nodes;
  std::vector<int> node_cluster;
  std::vector<Rect> areas;
  std::vector<RandomStream> mobility;
  std::vector<std::vector<SymmetricId>> credentials;  // per cluster
  std::vector<std::vector<SymmetricId>> forged;       // per node, attackers only
  std::vector<NodeStatus> status;
  std::vector<Flow> flows;
  std::uint64_t tick_index = 0;
  std::uint64_t total_ticks = 0;
  double packet_bits = 0.0;
  double delay_sum = 0.0;
  ScenarioMetrics m;

  void trace(std::uint64_t code, std::uint64_t a, std::uint64_t b) {
    m.trace_digest = mix64(m.trace_digest ^ (code << 56) ^ (a << 24) ^ b);
  }

  void build();
  void verification_round();
  void scan(Flow& f, std::size_t flow_index, double t0);
  void go_down(Flow& f);
  void process(Flow& f, std::size_t flow_index, double t0, double t1);
};

void Simulation::State::build() {
  sc.validate();
  plan = plan_for(sc);
  packet_bits = 8.0 * sc.packet_size;
  total_ticks = static_cast<std::uint64_t>(std::llround(sc.duration / sc.tick));

  const SpeedRange speeds{sc.speed_min, sc.speed_max};
  RandomStream creds(derive_seed(sc.master_seed, kCredentialStream));
  for (int c = 0; c < sc.clusters; ++c) {
    areas.push_back(cluster_rect(sc, c));
    credentials.push_back(draw_distinct_ids(static_cast<std::size_t>(sc.n_ids), creds));
  }

  const int wormholes = static_cast<int>(std::lround(sc.attackers_per_cluster * sc.wormhole_fraction));
  for (int c = 0; c < sc.clusters; ++c) {
    for (int k = 0; k < sc.nodes_per_cluster; ++k) {
      const std::size_t index = nodes.size();
      NodeProfile node;
      node.id = NodeId{static_cast<std::uint32_t>(index)};
      const int attacker_slot = k - (sc.nodes_per_cluster - sc.attackers_per_cluster);
      if (attacker_slot >= 0) {
        node.role = attacker_slot < wormholes ? Role::kWormholeEndpoint : Role::kSybil;
      }
      mobility.emplace_back(derive_seed(sc.master_seed, kMobilityStream, index));
      init_random_waypoint(node, areas[c], speeds, mobility.back());
      forged.push_back(node.role == Role::kSybil ? draw_distinct_ids(1, creds, credentials[c])
                                                 : std::vector<SymmetricId>{});
      nodes.push_back(std::move(node));
      node_cluster.push_back(c);
    }
  }
  status.assign(nodes.size(), {});
  m.clusters.assign(static_cast<std::size_t>(sc.clusters), {});

  RandomStream traffic(derive_seed(sc.master_seed, kTrafficStream));
  const double max_range = sc.radio_ranges.back();
  for (int c = 0; c < sc.clusters; ++c) {
    std::vector<std::size_t> honest;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (node_cluster[i] == c && nodes[i].role == Role::kHonest) {
        honest.push_back(i);
      }
    }
    for (int k = 0; k < sc.flows_per_cluster; ++k) {
      Flow f;
      f.cluster = c;
      // Prefer endpoints that start out as neighbors.
      for (int tries = 0; tries < 50; ++tries) {
        f.src = honest[traffic.below(honest.size())];
        do {
          f.dst = honest[traffic.below(honest.size())];
        } while (f.dst == f.src);
        if (distance(nodes[f.src].position, nodes[f.dst].position) <= max_range) {
          break;
        }
      }
      f.interval = sc.tx_rate_kbps > 0.0 ? packet_bits / (sc.tx_rate_kbps * 1000.0) : 0.0;
      f.next_gen = f.interval * traffic.uniform01();
      f.scan_phase = sc.scan_interval * traffic.uniform01();
      f.share_bps = sc.channel_capacity_kbps * 1000.0 / sc.flows_per_cluster;
      f.src_pool = IdPool(credentials[c]);
      f.dst_pool = IdPool(credentials[c]);
      const std::size_t flow_index = flows.size();
      f.payloads = RandomStream(derive_seed(sc.master_seed, kPayloadStream, flow_index));
      f.noise = RandomStream(derive_seed(sc.master_seed, kNoiseStream, flow_index));
      flows.push_back(std::move(f));
    }
  }
  m.offered_load_kbps = sc.tx_rate_kbps * static_cast<double>(flows.size());

  if (sc.sfv_mode != SfvMode::kOff) {
    verification_round();
  }
}

// Every honest node verifies every other node of its cluster it can reach.
void Simulation::State::verification_round() {
  RandomStream detection(derive_seed(sc.master_seed, kDetectionStream));
  RandomStream payloads(derive_seed(sc.master_seed, kVerifyPayloadStream));
  RandomStream noise(derive_seed(sc.master_seed, kVerifyNoiseStream));
  std::uint64_t attacker_attempts = 0;
  std::uint64_t attacker_detected = 0;

  for (std::size_t v = 0; v < nodes.size(); ++v) {
    if (nodes[v].role != Role::kHonest) {
      continue;
    }
    const int c = node_cluster[v];
    const IdPool shared(credentials[c]);
    for (std::size_t a = 0; a < nodes.size(); ++a) {
      if (a == v || node_cluster[a] != c) {
        continue;
      }
      const double d = distance(nodes[a].position, nodes[v].position);
      const ScanResult found = scan_for_neighbor(plan, d);
      if (!found.found()) {
        continue;
      }
      const EvidencePair clean = make_link_evidence(nodes[a].position, nodes[v].position, *found.selected_range, sc, noise);
      Verdict verdict;
      if (nodes[a].role == Role::kHonest) {
        IdPool mine = shared;
        IdPool theirs = shared;
        verdict = run_handshake(theirs, mine, [&clean](int) { return clean; }, sc.handshake, payloads);
      } else {
        WormholeTunnel tunnel{nodes[a].id, nodes[v].id, sc.tunnel_latency, std::nullopt, {}};
        verdict = simulate_attacker_attempt(nodes[a].role, shared, forged[a], clean, tunnel, sc.replay,
                                            sc.handshake, detection, payloads)
                      .verdict;
        ++attacker_attempts;
        if (!verdict.friendly()) {
          ++attacker_detected;
        }
      }
      (verdict.friendly() ? status[a].friendly : status[a].suspicious) = true;
      trace(1, a, v * 2 + (verdict.friendly() ? 1 : 0));
    }
  }

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    ClusterCounts& cc = m.clusters[static_cast<std::size_t>(node_cluster[i])];
    if (status[i].suspicious) {
      ++cc.suspicious;
    } else if (status[i].friendly) {
      ++cc.friendly;
    }
  }
  m.attacker_handshakes = attacker_attempts;
  m.attacker_detected = attacker_detected;
  m.empirical_detection_rate =
      attacker_attempts == 0 ? 0.0 : static_cast<double>(attacker_detected) / attacker_attempts;
}

void Simulation::State::go_down(Flow& f) {
  f.up = false;
  f.credit_bits = 0.0;
  m.dropped_range += f.queue.size();
  f.queue.clear();
}

void Simulation::State::scan(Flow& f, std::size_t flow_index, double t0) {
  const Vec2 src = nodes[f.src].position;
  const Vec2 dst = nodes[f.dst].position;
  const ScanResult res = scan_for_neighbor(plan, distance(src, dst));
  m.scan_attempts += static_cast<std::uint64_t>(res.attempts);
  if (!res.found()) {
    trace(2, flow_index, 0);
    go_down(f);
    return;
  }
  const double range = *res.selected_range;
  if (sc.sfv_mode == SfvMode::kOff) {
    f.up = true;
    f.range = range;
    trace(2, flow_index, 1);
    return;
  }
  double cost = sc.handshake_cost;
  if (sc.sfv_mode == SfvMode::kSfvRanging) {
    cost += res.attempts * sc.ranging_step_cost;
  }
  f.blocked_until = t0 + cost;
  auto evidence = [&](int) { return make_link_evidence(src, dst, range, sc, f.noise); };
  const Verdict v = run_handshake(f.src_pool, f.dst_pool, evidence, sc.handshake, f.payloads);
  ++m.handshakes;
  if (v.friendly()) {
    f.up = true;
    f.range = range;
    trace(3, flow_index, 1);
  } else {
    ++m.handshakes_failed;
    trace(3, flow_index, 0);
    go_down(f);
  }
}

void Simulation::State::process(Flow& f, std::size_t flow_index, double t0, double t1) {
  if (t0 >= f.next_scan) {
    scan(f, flow_index, t0);
    f.next_scan = f.scanned_once ? f.next_scan + sc.scan_interval : f.scan_phase;
    if (f.next_scan <= t0) {
      f.next_scan += sc.scan_interval;
    }
    f.scanned_once = true;
  }

  while (f.interval > 0.0 && f.next_gen < t1) {
    ++m.generated;
    if (!f.up) {
      ++m.dropped_range;
    } else if (f.queue.size() >= static_cast<std::size_t>(sc.queue_capacity)) {
      ++m.dropped_queue;
    } else {
      f.queue.push_back(f.next_gen);
    }
    f.next_gen += f.interval;
  }

  if (!f.up) {
    return;
  }
  const double unblocked = std::max(0.0, t1 - std::max(t0, f.blocked_until));
  f.credit_bits += f.share_bps * unblocked;
  while (!f.queue.empty() && f.credit_bits >= packet_bits) {
    const double generated_at = f.queue.front();
    f.queue.pop_front();
    f.credit_bits -= packet_bits;
    if (distance(nodes[f.src].position, nodes[f.dst].position) <= f.range) {
      ++m.delivered;
      delay_sum += t1 - generated_at;
      trace(4, flow_index, tick_index);
    } else {
      ++m.dropped_range;
      trace(5, flow_index, tick_index);
    }
  }
  if (f.queue.empty()) {
    f.credit_bits = std::min(f.credit_bits, packet_bits);
  }
}

Simulation::Simulation(Scenario sc) : state_(std::make_unique<State>()) {
  state_->sc = std::move(sc);
  state_->build();
}

Simulation::~Simulation() = default;
Simulation::Simulation(Simulation&&) noexcept = default;
Simulation& Simulation::operator=(Simulation&&) noexcept = default;

bool Simulation::step() {
  State& s = *state_;
  if (s.tick_index >= s.total_ticks) {
    return false;
  }
  const double t0 = static_cast<double>(s.tick_index) * s.sc.tick;
  const double t1 = static_cast<double>(s.tick_index + 1) * s.sc.tick;
  const SpeedRange speeds{s.sc.speed_min, s.sc.speed_max};
  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    advance(s.nodes[i], s.sc.tick, s.areas[static_cast<std::size_t>(s.node_cluster[i])], speeds,
            s.sc.pause_time, s.mobility[i]);
  }
  for (std::size_t k = 0; k < s.flows.size(); ++k) {
    s.process(s.flows[k], k, t0, t1);
  }
  ++s.tick_index;
  return s.tick_index < s.total_ticks;
}

void Simulation::run() {
  while (step()) {
  }
}

std::vector<ClusterCounts> Simulation::collect_detection_counts() const { return state_->m.clusters; }

ScenarioMetrics Simulation::measure_metrics() const {
  const State& s = *state_;
  ScenarioMetrics m = s.m;
  m.in_flight = 0;
  for (const Flow& f : s.flows) {
    m.in_flight += f.queue.size();
  }
  const double elapsed = static_cast<double>(s.tick_index) * s.sc.tick;
  m.aggregate_throughput_kbps =
      elapsed > 0.0 ? static_cast<double>(m.delivered) * s.packet_bits / elapsed / 1000.0 : 0.0;
  m.mean_delay_s = m.delivered > 0 ? s.delay_sum / static_cast<double>(m.delivered) : 0.0;
  m.zero_generated = m.generated == 0;
  m.pdr = m.zero_generated ? 1.0 : static_cast<double>(m.delivered) / static_cast<double>(m.generated);
  return m;
}

const Scenario& Simulation::scenario() const { return state_->sc; }
const std::vector<NodeProfile>& Simulation::nodes() const { return state_->nodes; }
double Simulation::now() const { return static_cast<double>(state_->tick_index) * state_->sc.tick; }

ScenarioMetrics run_scenario(const Scenario& sc, double duration) {
  Scenario copy = sc;
  copy.duration = duration;
  Simulation sim(std::move(copy));
  sim.run();
  return sim.measure_metrics();
}

}  // namespace sfv
