#include "sfv/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace sfv {

SymmetricId::SymmetricId(std::uint32_t value) : value_(value) {
  if (value >= kLimit) {
    throw std::invalid_argument("symmetric id exceeds 26 bits: " + std::to_string(value));
  }
}

IdPool::IdPool(std::vector<SymmetricId> ids) : ids_(std::move(ids)) {
  std::set<SymmetricId> seen(ids_.begin(), ids_.end());
  if (seen.size() != ids_.size()) {
    throw ConfigError("id pool contains duplicate symmetric ids");
  }
}

SymmetricId IdPool::select() {
  if (ids_.empty()) {
    throw ConfigError("cannot select a symmetric id from an empty pool");
  }
  const SymmetricId id = ids_[next_];
  next_ = (next_ + 1) % ids_.size();
  return id;
}

bool IdPool::contains(SymmetricId id) const {
  return std::find(ids_.begin(), ids_.end(), id) != ids_.end();
}

SymmetricId select_symmetric_id(IdPool& pool) { return pool.select(); }

namespace {

constexpr uint128 mask_bits(unsigned n) { return (uint128{1} << n) - 1; }

}  // namespace

PackedKey pack_key(const IntegratedKey& key) {
  PackedKey p;
  p.bits = (uint128{key.k1} << 58) | (uint128{key.k2.value()} << 32) | uint128{key.k3};
  return p;
}

IntegratedKey unpack_key(const PackedKey& packed) {
  IntegratedKey k;
  k.k1 = static_cast<std::uint32_t>((packed.bits >> 58) & mask_bits(32));
  k.k2 = SymmetricId(static_cast<std::uint32_t>((packed.bits >> 32) & mask_bits(26)));
  k.k3 = static_cast<std::uint32_t>(packed.bits & mask_bits(32));
  return k;
}

KeyHalves split_key_halves(const IntegratedKey& key) {
  const uint128 bits = pack_key(key).bits;
  return {static_cast<std::uint64_t>((bits >> kHalfKeyBits) & mask_bits(kHalfKeyBits)),
          static_cast<std::uint64_t>(bits & mask_bits(kHalfKeyBits))};
}

Block expand_keystream(const IntegratedKey& key) {
  const uint128 mask = pack_key(key).bits << (kBlockBytes * 8 - kKeyBits);
  Block out{};
  for (std::size_t i = 0; i < kBlockBytes; ++i) {
    out[i] = static_cast<std::uint8_t>(mask >> (8 * (kBlockBytes - 1 - i)));
  }
  return out;
}

Block xor_blocks(const Block& a, const Block& b) {
  Block out{};
  for (std::size_t i = 0; i < kBlockBytes; ++i) {
    out[i] = static_cast<std::uint8_t>(a[i] ^ b[i]);
  }
  return out;
}

namespace {

constexpr std::array<std::uint16_t, 256> make_crc_table() {
  std::array<std::uint16_t, 256> table{};
  for (unsigned n = 0; n < 256; ++n) {
    std::uint16_t crc = static_cast<std::uint16_t>(n << 8);
    for (int bit = 0; bit < 8; ++bit) {
      crc = (crc & 0x8000) ? static_cast<std::uint16_t>((crc << 1) ^ 0x1021)
                           : static_cast<std::uint16_t>(crc << 1);
    }
    table[n] = crc;
  }
  return table;
}

constexpr auto kCrcTable = make_crc_table();

}  // namespace

std::uint16_t crc16_ccitt_false(std::span<const std::uint8_t> data) {
  std::uint16_t crc = 0xFFFF;
  for (const std::uint8_t byte : data) {
    crc = static_cast<std::uint16_t>((crc << 8) ^ kCrcTable[((crc >> 8) ^ byte) & 0xFF]);
  }
  return crc;
}

Block seal_block(const Payload& payload) {
  Block b{};
  std::copy(payload.begin(), payload.end(), b.begin());
  const std::uint16_t crc = block_checksum(payload);
  b[10] = static_cast<std::uint8_t>(crc >> 8);
  b[11] = static_cast<std::uint8_t>(crc & 0xFF);
  return b;
}

Payload block_payload(const Block& block) {
  Payload p{};
  std::copy_n(block.begin(), kPayloadBytes, p.begin());
  return p;
}

std::uint16_t block_stored_checksum(const Block& block) {
  return static_cast<std::uint16_t>((block[10] << 8) | block[11]);
}

bool block_checksum_ok(const Block& block) {
  return block_checksum(block_payload(block)) == block_stored_checksum(block);
}

double norm(Vec2 v) { return std::hypot(v.x, v.y); }

double distance(Vec2 a, Vec2 b) { return norm(b - a); }

double bearing_deg(Vec2 from, Vec2 to) {
  const Vec2 d = to - from;
  double deg = std::atan2(d.y, d.x) * 180.0 / std::numbers::pi;
  if (deg < 0.0) {
    deg += 360.0;
  }
  if (deg >= 360.0) {
    deg -= 360.0;
  }
  return deg;
}

std::string to_string(Role role) {
  switch (role) {
    case Role::kHonest:
      return "honest";
    case Role::kWormholeEndpoint:
      return "wormhole-endpoint";
    case Role::kSybil:
      return "sybil";
  }
  return "unknown";
}

}  // namespace sfv
