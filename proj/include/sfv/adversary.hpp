// Wormhole and Sybil attacker behaviors, plus the parameterized replay
// attacker used to calibrate detection-rate experiments.
#pragma once

#include <optional>
#include <vector>

#include "sfv/core.hpp"
#include "sfv/protocol.hpp"
#include "sfv/random.hpp"

namespace sfv {

struct WormholeTunnel {
  NodeId endpoint_a;
  NodeId endpoint_b;
  double tunnel_latency = 10e-6;  // seconds
  /// Bearing (degrees) of the tunnel endpoint as seen by the victim; when
  /// empty the measured AOA is left untouched.
  std::optional<double> endpoint_bearing;
  std::vector<Block> capture_buffer;

  /// Throws ConfigError unless endpoints differ and latency > 0.
  void validate() const;
  void capture(const Block& cipher) { capture_buffer.push_back(cipher); }
};

/// Inflates rtt by the tunnel latency and distance by c * latency / 2, and
/// replaces the AOA with the tunnel endpoint's bearing.
RangingEvidence wormhole_perturb(const RangingEvidence& ev, const WormholeTunnel& tunnel);

struct SybilIdentitySet {
  std::vector<SymmetricId> claimed_ids;
  NodeId victim;

  /// Throws ConfigError if empty or if any claimed id is in `shared_pool`.
  void validate_against(const IdPool& shared_pool) const;
};

/// The victim side of a link the Sybil attacker targets.
struct VictimLink {
  IdPool& victim_pool;
  RangingEvidence evidence;
  HandshakeConfig cfg;
};

/// One handshake in which the attacker presents claimed_ids[identity] as
/// its K2. A checksum failure is attributed to the id with kIdMismatch.
Verdict sybil_attempt(const SybilIdentitySet& attacker, std::size_t identity, VictimLink& link,
                      RandomStream& payloads, Transcript* transcript = nullptr);

/// Presents every claimed identity in turn, one verdict per identity.
std::vector<Verdict> sybil_campaign(const SybilIdentitySet& attacker, VictimLink& link,
                                    RandomStream& payloads);

struct ReplayProfile {
  double p_wh = 0.0;  // wormhole replay goes unnoticed
  double p_i = 0.0;   // node id replay goes unnoticed
  double p_r = 0.0;   // local rtt replay goes unnoticed

  void validate() const;
  /// Uniform profile p_wh = p_i = p_r with (1 - p)^3 = detection.
  static ReplayProfile for_detection_probability(double detection);
};

struct DetectionDraw {
  bool wormhole_caught = false;
  bool id_caught = false;
  bool rtt_caught = false;

  bool detected() const { return wormhole_caught && id_caught && rtt_caught; }
};

/// Three independent checks, each catching the attempt with probability
/// 1 - p; the attempt is detected only if all three catch it.
DetectionDraw sample_detection(const ReplayProfile& profile, RandomStream& rng);

}  // namespace sfv
