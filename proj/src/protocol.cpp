#include "sfv/protocol.hpp"

#include <algorithm>
#include <cstdio>

namespace sfv {

void HandshakeConfig::validate() const {
  if (m_blocks < 1) {
    throw ConfigError("m_blocks must be at least 1");
  }
  if (n_ranging < 1) {
    throw ConfigError("n_ranging must be at least 1");
  }
  if (retry_limit < 0) {
    throw ConfigError("retry_limit must be non-negative");
  }
}

std::string Reason::to_string() const {
  switch (kind) {
    case ReasonKind::kThresholdDistance:
      return "threshold-distance";
    case ReasonKind::kThresholdRtt:
      return "threshold-rtt";
    case ReasonKind::kThresholdAoa:
      return "threshold-aoa";
    case ReasonKind::kChecksumBlock:
      return "checksum-block-" + std::to_string(block);
    case ReasonKind::kIdMismatch:
      return "id-mismatch";
  }
  return "unknown";
}

bool Verdict::has(ReasonKind kind) const {
  return std::any_of(reasons.begin(), reasons.end(), [kind](const Reason& r) { return r.kind == kind; });
}

void Transcript::add(std::string phase, std::string event, std::optional<std::uint64_t> block_index,
                     std::string outcome) {
  records_.push_back({std::move(phase), std::move(event), block_index, std::move(outcome)});
}

std::size_t Transcript::count(const std::string& phase, const std::string& event,
                              const std::string& outcome) const {
  return static_cast<std::size_t>(std::count_if(records_.begin(), records_.end(), [&](const auto& r) {
    return r.phase == phase && r.event == event && r.outcome == outcome;
  }));
}

std::string Transcript::to_text() const {
  std::string out = "phase,event,block_index,outcome\n";
  for (const auto& r : records_) {
    out += r.phase;
    out += ',';
    out += r.event;
    out += ',';
    out += r.block_index ? std::to_string(*r.block_index) : std::string("-");
    out += ',';
    out += r.outcome;
    out += '\n';
  }
  return out;
}

std::string redact_seeds(std::uint64_t seed_i, std::uint64_t seed_n) {
  const std::uint64_t h = mix64(mix64(seed_i ^ 0xA0761D6478BD642FULL) ^ seed_n);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

BlockOutcome verify_block(SfvSession& session, const Block& cipher) {
  const Block plain = session.decrypt_block(cipher);
  return block_checksum_ok(plain) ? BlockOutcome::kAccepted : BlockOutcome::kRejected;
}

namespace {

ReasonKind reason_for(ThresholdCheck c) {
  switch (c) {
    case ThresholdCheck::kDistance:
      return ReasonKind::kThresholdDistance;
    case ThresholdCheck::kRtt:
      return ReasonKind::kThresholdRtt;
    case ThresholdCheck::kAoa:
      break;
  }
  return ReasonKind::kThresholdAoa;
}

std::string join_failures(const ValidationResult& v) {
  std::string s = "fail";
  for (std::size_t i = 0; i < v.failed.size(); ++i) {
    s += (i == 0 ? ':' : ';');
    s += to_string(v.failed[i]);
  }
  return s;
}

}  // namespace

Verdict run_handshake(IdPool& initiator_pool, IdPool& responder_pool, const EvidenceSource& evidence,
                      const HandshakeConfig& cfg, RandomStream& payloads, Transcript* transcript) {
  cfg.validate();
  if (initiator_pool.empty() || responder_pool.empty()) {
    throw ConfigError("handshake endpoints need non-empty id pools");
  }
  auto log = [transcript](std::string phase, std::string event, std::optional<std::uint64_t> block,
                          std::string outcome) {
    if (transcript != nullptr) {
      transcript->add(std::move(phase), std::move(event), block, std::move(outcome));
    }
  };

  Verdict verdict;
  std::optional<EvidencePair> accepted;
  ValidationResult last;
  for (int attempt = 0; attempt <= cfg.retry_limit; ++attempt) {
    EvidencePair ev = evidence(attempt);
    ++verdict.ranging_attempts;
    last = validate_evidence(ev.responder);
    log("ranging", "attempt-" + std::to_string(attempt), std::nullopt,
        last.passed() ? "pass" : join_failures(last));
    if (last.passed()) {
      accepted = ev;
      break;
    }
  }
  if (!accepted) {
    for (const ThresholdCheck c : last.failed) {
      verdict.reasons.push_back({reason_for(c)});
    }
    verdict.outcome = Outcome::kSuspicious;
    log("verdict", "final", std::nullopt, "suspicious");
    return verdict;
  }

  SfvSession sender = init_session(accepted->initiator, initiator_pool.select(), Direction::kEncryptor);
  SfvSession receiver = init_session(accepted->responder, responder_pool.select(), Direction::kDecryptor);
  log("session", "init-initiator", std::nullopt, redact_seeds(sender.seed_i(), sender.seed_n()));
  log("session", "init-responder", std::nullopt, redact_seeds(receiver.seed_i(), receiver.seed_n()));

  for (int b = 0; b < cfg.m_blocks; ++b) {
    const Block cipher = sender.encrypt_block(seal_block(payloads.payload()));
    const std::uint64_t index = receiver.block_index();
    if (verify_block(receiver, cipher) == BlockOutcome::kRejected) {
      verdict.reasons.push_back({ReasonKind::kChecksumBlock, b});
      log("exchange", "block", index, "rejected");
      break;
    }
    ++verdict.blocks_verified;
    log("exchange", "block", index, "accepted");
  }

  verdict.outcome = (verdict.reasons.empty() && verdict.blocks_verified == cfg.m_blocks)
                        ? Outcome::kFriendly
                        : Outcome::kSuspicious;
  log("verdict", "final", std::nullopt, verdict.friendly() ? "friendly" : "suspicious");
  return verdict;
}

Verdict run_handshake(IdPool& initiator_pool, IdPool& responder_pool, const RangingEvidence& evidence,
                      const HandshakeConfig& cfg, RandomStream& payloads, Transcript* transcript) {
  return run_handshake(
      initiator_pool, responder_pool, [&evidence](int) { return EvidencePair{evidence, evidence}; }, cfg,
      payloads, transcript);
}

Verdict run_handshake(NodeProfile& initiator, NodeProfile& responder, const RangingEvidence& evidence,
                      const HandshakeConfig& cfg, RandomStream& payloads, Transcript* transcript) {
  return run_handshake(initiator.pool, responder.pool, evidence, cfg, payloads, transcript);
}

}  // namespace sfv
