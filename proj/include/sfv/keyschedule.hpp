// Rolling integrated-key schedule and the per-block XOR cipher.
//
// Each block i is masked with K_i = K1 || K2 || K3 where
//   K1 = rng1(seed_i), K2 = the link's symmetric ID,
//   K3 = rng2(seed_n) XOR (leading 32 plaintext bits of block i).
// After every block the seeds roll to the two 45-bit halves of K_i. K1 and
// K2 cover bits [0..58), so a decryptor recovers the feedback word before it
// needs K3. None of this is a secure cipher; it is reproduced for evaluation.
#pragma once

#include <cstdint>
#include <optional>

#include "sfv/core.hpp"

namespace sfv {

std::uint32_t rng1(std::uint64_t seed);
std::uint32_t rng2(std::uint64_t seed);

/// Distance in centimeters (40-bit field) above angle in hundredths of a
/// degree (16-bit field). Throws std::out_of_range when the distance field
/// overflows and std::invalid_argument for negative distance / bad angle.
std::uint64_t seed_from_location(const RangingEvidence& ev);

/// RTT in integer nanoseconds.
std::uint64_t seed_from_rtt(const RangingEvidence& ev);

enum class Direction { kEncryptor, kDecryptor };

class SfvSession {
 public:
  SfvSession(std::uint64_t seed_i, std::uint64_t seed_n, SymmetricId id, Direction direction);

  Block encrypt_block(const Block& plain);
  Block decrypt_block(const Block& cipher);

  std::uint64_t seed_i() const { return seed_i_; }
  std::uint64_t seed_n() const { return seed_n_; }
  std::uint64_t block_index() const { return block_index_; }
  SymmetricId id() const { return id_; }
  Direction direction() const { return direction_; }
  /// Key used for the most recent block; empty before the first block.
  const std::optional<IntegratedKey>& current_key() const { return current_key_; }

 private:
  void roll(const IntegratedKey& key);

  std::uint64_t seed_i_;
  std::uint64_t seed_n_;
  SymmetricId id_;
  Direction direction_;
  std::uint64_t block_index_ = 0;
  std::optional<IntegratedKey> current_key_;
};

SfvSession init_session(const RangingEvidence& ev, SymmetricId id, Direction direction);

/// Leading 32 bits of a block, big-endian.
std::uint32_t feedback_word(const Block& block);

}  // namespace sfv
