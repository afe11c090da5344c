#include "sfv/adversary.hpp"

#include <cmath>

namespace sfv {

void WormholeTunnel::validate() const {
  if (endpoint_a == endpoint_b) {
    throw ConfigError("wormhole endpoints must be distinct nodes");
  }
  if (!(tunnel_latency > 0.0)) {
    throw ConfigError("wormhole tunnel latency must be positive");
  }
}

RangingEvidence wormhole_perturb(const RangingEvidence& ev, const WormholeTunnel& tunnel) {
  RangingEvidence out = ev;
  out.rtt += tunnel.tunnel_latency;
  out.d_radial += kSpeedOfLight * tunnel.tunnel_latency / 2.0;
  if (tunnel.endpoint_bearing) {
    out.aoa = *tunnel.endpoint_bearing;
  }
  return out;
}

void SybilIdentitySet::validate_against(const IdPool& shared_pool) const {
  if (claimed_ids.empty()) {
    throw ConfigError("sybil attacker needs at least one claimed id");
  }
  for (const SymmetricId id : claimed_ids) {
    if (shared_pool.contains(id)) {
      throw ConfigError("sybil claimed id " + std::to_string(id.value()) + " lies inside the victim pool");
    }
  }
}

Verdict sybil_attempt(const SybilIdentitySet& attacker, std::size_t identity, VictimLink& link,
                      RandomStream& payloads, Transcript* transcript) {
  IdPool forged({attacker.claimed_ids.at(identity)});
  Verdict v = run_handshake(forged, link.victim_pool, link.evidence, link.cfg, payloads, transcript);
  if (v.has(ReasonKind::kChecksumBlock)) {
    v.reasons.push_back({ReasonKind::kIdMismatch});
  }
  return v;
}

std::vector<Verdict> sybil_campaign(const SybilIdentitySet& attacker, VictimLink& link,
                                    RandomStream& payloads) {
  std::vector<Verdict> verdicts;
  verdicts.reserve(attacker.claimed_ids.size());
  for (std::size_t i = 0; i < attacker.claimed_ids.size(); ++i) {
    verdicts.push_back(sybil_attempt(attacker, i, link, payloads));
  }
  return verdicts;
}

void ReplayProfile::validate() const {
  for (const double p : {p_wh, p_i, p_r}) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ConfigError("replay probabilities must lie in [0, 1]");
    }
  }
}

ReplayProfile ReplayProfile::for_detection_probability(double detection) {
  if (!(detection >= 0.0 && detection <= 1.0)) {
    throw ConfigError("detection probability must lie in [0, 1]");
  }
  const double p = 1.0 - std::cbrt(detection);
  return {p, p, p};
}

DetectionDraw sample_detection(const ReplayProfile& profile, RandomStream& rng) {
  DetectionDraw d;
  d.wormhole_caught = !rng.bernoulli(profile.p_wh);
  d.id_caught = !rng.bernoulli(profile.p_i);
  d.rtt_caught = !rng.bernoulli(profile.p_r);
  return d;
}

}  // namespace sfv
