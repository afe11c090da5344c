// Strict friendliness verification handshake: threshold gate followed by an
// m-block encrypted exchange from initiator to responder. The responder
// declares the initiator friendly only if every block decrypts to a payload
// whose checksum matches.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sfv/core.hpp"
#include "sfv/keyschedule.hpp"
#include "sfv/random.hpp"
#include "sfv/ranging.hpp"

namespace sfv {

struct HandshakeConfig {
  int m_blocks = 4;
  int n_ranging = 3;
  int retry_limit = 1;

  void validate() const;
};

enum class Outcome { kFriendly, kSuspicious };

enum class ReasonKind { kThresholdDistance, kThresholdRtt, kThresholdAoa, kChecksumBlock, kIdMismatch };

struct Reason {
  ReasonKind kind;
  int block = -1;  // 0-based block index for kChecksumBlock

  std::string to_string() const;
  friend bool operator==(const Reason&, const Reason&) = default;
};

struct Verdict {
  Outcome outcome = Outcome::kSuspicious;
  std::vector<Reason> reasons;
  int blocks_verified = 0;
  int ranging_attempts = 0;

  bool friendly() const { return outcome == Outcome::kFriendly; }
  bool has(ReasonKind kind) const;
};

/// One transcript line: `phase,event,block_index,outcome`. A missing block
/// index is written as `-`.
struct TranscriptRecord {
  std::string phase;
  std::string event;
  std::optional<std::uint64_t> block_index;
  std::string outcome;

  friend bool operator==(const TranscriptRecord&, const TranscriptRecord&) = default;
};

class Transcript {
 public:
  void add(std::string phase, std::string event, std::optional<std::uint64_t> block_index,
           std::string outcome);

  const std::vector<TranscriptRecord>& records() const { return records_; }
  std::size_t count(const std::string& phase, const std::string& event,
                    const std::string& outcome) const;
  /// Header line followed by one line per record, '\n' terminated.
  std::string to_text() const;

 private:
  std::vector<TranscriptRecord> records_;
};

/// Each endpoint's view of the ranging exchange. Honest links hand both
/// sides the same measurements.
struct EvidencePair {
  RangingEvidence initiator;
  RangingEvidence responder;
};

/// Produces the evidence for the given 0-based ranging attempt.
using EvidenceSource = std::function<EvidencePair(int attempt)>;

enum class BlockOutcome { kAccepted, kRejected };

/// Decrypts one block and checks its payload checksum.
BlockOutcome verify_block(SfvSession& session, const Block& cipher);

/// Runs the handshake. Pools are advanced by one id each when the exchange
/// phase is reached. `payloads` supplies the random verification payloads.
Verdict run_handshake(IdPool& initiator_pool, IdPool& responder_pool, const EvidenceSource& evidence,
                      const HandshakeConfig& cfg, RandomStream& payloads,
                      Transcript* transcript = nullptr);

Verdict run_handshake(IdPool& initiator_pool, IdPool& responder_pool, const RangingEvidence& evidence,
                      const HandshakeConfig& cfg, RandomStream& payloads,
                      Transcript* transcript = nullptr);

Verdict run_handshake(NodeProfile& initiator, NodeProfile& responder, const RangingEvidence& evidence,
                      const HandshakeConfig& cfg, RandomStream& payloads,
                      Transcript* transcript = nullptr);

/// 64-bit digest used to redact seeds in transcripts.
std::string redact_seeds(std::uint64_t seed_i, std::uint64_t seed_n);

}  // namespace sfv
