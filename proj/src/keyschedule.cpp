#include "sfv/keyschedule.hpp"

#include <cmath>
#include <stdexcept>

namespace sfv {

namespace {

constexpr std::uint64_t finalize(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Round half up for non-negative inputs.
std::uint64_t quantize(double value, double scale) {
  return static_cast<std::uint64_t>(std::floor(value * scale + 0.5));
}

}  // namespace

std::uint32_t rng1(std::uint64_t seed) {
  return static_cast<std::uint32_t>(finalize(seed + 0x9E3779B97F4A7C15ULL) >> 32);
}

std::uint32_t rng2(std::uint64_t seed) {
  return static_cast<std::uint32_t>(finalize(seed + 0xD1B54A32D192ED03ULL) & 0xFFFFFFFFULL);
}

std::uint64_t seed_from_location(const RangingEvidence& ev) {
  if (!(ev.d_radial >= 0.0) || !std::isfinite(ev.d_radial)) {
    throw std::invalid_argument("radial distance must be finite and non-negative");
  }
  if (!(ev.aoa >= 0.0 && ev.aoa < 360.0)) {
    throw std::invalid_argument("angle of arrival must lie in [0, 360)");
  }
  if (ev.d_radial * 100.0 >= 0x1.0p40) {
    throw std::out_of_range("radial distance does not fit the 40-bit seed field");
  }
  const std::uint64_t distance_q = quantize(ev.d_radial, 100.0);
  if (distance_q >= (std::uint64_t{1} << 40)) {
    throw std::out_of_range("radial distance does not fit the 40-bit seed field");
  }
  // 359.995 and up rounds to 36000, which is the same bearing as 0.
  const std::uint64_t angle_q = quantize(ev.aoa, 100.0) % 36000;
  return (distance_q << 16) | angle_q;
}

std::uint64_t seed_from_rtt(const RangingEvidence& ev) {
  if (!(ev.rtt >= 0.0) || !std::isfinite(ev.rtt)) {
    throw std::invalid_argument("rtt must be finite and non-negative");
  }
  return quantize(ev.rtt, 1e9);
}

std::uint32_t feedback_word(const Block& block) {
  return (std::uint32_t{block[0]} << 24) | (std::uint32_t{block[1]} << 16) |
         (std::uint32_t{block[2]} << 8) | std::uint32_t{block[3]};
}

SfvSession::SfvSession(std::uint64_t seed_i, std::uint64_t seed_n, SymmetricId id,
                       Direction direction)
    : seed_i_(seed_i), seed_n_(seed_n), id_(id), direction_(direction) {}

void SfvSession::roll(const IntegratedKey& key) {
  const KeyHalves halves = split_key_halves(key);
  seed_i_ = halves.seed_i;
  seed_n_ = halves.seed_n;
  current_key_ = key;
  ++block_index_;
}

Block SfvSession::encrypt_block(const Block& plain) {
  if (direction_ != Direction::kEncryptor) {
    throw std::logic_error("encrypt_block called on a decryptor session");
  }
  const IntegratedKey key{rng1(seed_i_), id_, rng2(seed_n_) ^ feedback_word(plain)};
  const Block cipher = xor_blocks(plain, expand_keystream(key));
  roll(key);
  return cipher;
}

Block SfvSession::decrypt_block(const Block& cipher) {
  if (direction_ != Direction::kDecryptor) {
    throw std::logic_error("decrypt_block called on an encryptor session");
  }
  IntegratedKey key{rng1(seed_i_), id_, 0};
  // K3 = 0 leaves bits [58..96) masked only by the pad, so the leading
  // 32 bits recovered here are final.
  const Block partial = xor_blocks(cipher, expand_keystream(key));
  key.k3 = rng2(seed_n_) ^ feedback_word(partial);
  const Block plain = xor_blocks(cipher, expand_keystream(key));
  roll(key);
  return plain;
}

SfvSession init_session(const RangingEvidence& ev, SymmetricId id, Direction direction) {
  return SfvSession(seed_from_location(ev), seed_from_rtt(ev), id, direction);
}

}  // namespace sfv
