// Shared value types for the strict friendliness verification (SFV) stack:
// symmetric identities, the 90-bit integrated key, 12-byte cipher blocks and
// node profiles.
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sfv {

__extension__ using uint128 = unsigned __int128;

/// Thrown for invalid scenario / protocol configuration (empty pools, bad
/// parameter ranges, ...).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A 26-bit symmetric node identity (the K2 part of the integrated key).
class SymmetricId {
 public:
  static constexpr unsigned kBits = 26;
  static constexpr std::uint32_t kLimit = 1u << kBits;

  constexpr SymmetricId() = default;
  explicit SymmetricId(std::uint32_t value);

  constexpr std::uint32_t value() const { return value_; }
  friend constexpr bool operator==(SymmetricId, SymmetricId) = default;
  friend constexpr auto operator<=>(SymmetricId, SymmetricId) = default;

 private:
  std::uint32_t value_ = 0;
};

/// Ordered pool of distinct symmetric IDs with a round-robin cursor.
class IdPool {
 public:
  IdPool() = default;
  explicit IdPool(std::vector<SymmetricId> ids);

  /// Returns ids[cursor] and advances the cursor cyclically.
  SymmetricId select();

  bool contains(SymmetricId id) const;
  std::span<const SymmetricId> ids() const { return ids_; }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  std::size_t next_index() const { return next_; }

 private:
  std::vector<SymmetricId> ids_;
  std::size_t next_ = 0;
};

/// Free-function form of IdPool::select; throws ConfigError on an empty pool.
SymmetricId select_symmetric_id(IdPool& pool);

/// K = K1 || K2 || K3 with 32/26/32-bit parts, K1 most significant.
struct IntegratedKey {
  std::uint32_t k1 = 0;
  SymmetricId k2;
  std::uint32_t k3 = 0;

  friend bool operator==(const IntegratedKey&, const IntegratedKey&) = default;
};

inline constexpr unsigned kKeyBits = 90;
inline constexpr unsigned kHalfKeyBits = 45;
inline constexpr std::size_t kBlockBytes = 12;
inline constexpr std::size_t kPayloadBytes = 10;

/// 90-bit packed key, right-aligned in a 128-bit word (value < 2^90).
/// MSB-first bit position p of the key string is value bit (89 - p).
struct PackedKey {
  uint128 bits = 0;

  bool msb_bit(unsigned pos) const { return ((bits >> (kKeyBits - 1 - pos)) & 1) != 0; }
  friend bool operator==(const PackedKey&, const PackedKey&) = default;
};

PackedKey pack_key(const IntegratedKey& key);
IntegratedKey unpack_key(const PackedKey& packed);

struct KeyHalves {
  std::uint64_t seed_i = 0;  // MSB-first bits [0..45)
  std::uint64_t seed_n = 0;  // MSB-first bits [45..90)
  friend bool operator==(const KeyHalves&, const KeyHalves&) = default;
};

KeyHalves split_key_halves(const IntegratedKey& key);

using Block = std::array<std::uint8_t, kBlockBytes>;
using Payload = std::array<std::uint8_t, kPayloadBytes>;

/// 96-bit keystream mask: the packed key followed by six zero bits,
/// serialized big-endian.
Block expand_keystream(const IntegratedKey& key);

Block xor_blocks(const Block& a, const Block& b);

/// CRC-16/CCITT-FALSE (poly 0x1021, init 0xFFFF, no reflection, no xorout).
std::uint16_t crc16_ccitt_false(std::span<const std::uint8_t> data);

inline std::uint16_t block_checksum(const Payload& payload) { return crc16_ccitt_false(payload); }

/// Builds a block from a payload, appending its checksum big-endian.
Block seal_block(const Payload& payload);
Payload block_payload(const Block& block);
std::uint16_t block_stored_checksum(const Block& block);
bool block_checksum_ok(const Block& block);

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
double norm(Vec2 v);
double distance(Vec2 a, Vec2 b);
/// Bearing from `from` to `to` in degrees, [0, 360), 0 along +x, counter-clockwise.
double bearing_deg(Vec2 from, Vec2 to);

struct Rect {
  double x0 = 0.0;
  double y0 = 0.0;
  double width = 0.0;
  double height = 0.0;

  bool contains(Vec2 p) const {
    return p.x >= x0 && p.x <= x0 + width && p.y >= y0 && p.y <= y0 + height;
  }
};

/// Speed of light used for all ranging arithmetic, m/s.
inline constexpr double kSpeedOfLight = 3.0e8;

/// Measured ranging quantities plus the maxima they are checked against.
/// Distances in meters, angles in degrees, times in seconds.
struct RangingEvidence {
  double d_radial = 0.0;
  double aoa = 0.0;
  double rtt = 0.0;
  double d_max = 270.0;
  double aoa_center = 0.0;
  double aoa_halfwidth = 45.0;
  double rtt_max = 2.0 * 270.0 / kSpeedOfLight + 5e-6;

  friend bool operator==(const RangingEvidence&, const RangingEvidence&) = default;
};

enum class Role { kHonest, kWormholeEndpoint, kSybil };

std::string to_string(Role role);

struct NodeId {
  std::uint32_t value = 0;
  friend constexpr bool operator==(NodeId, NodeId) = default;
  friend constexpr auto operator<=>(NodeId, NodeId) = default;
};

struct NodeProfile {
  NodeId id;
  Vec2 position;
  Vec2 velocity;
  Role role = Role::kHonest;
  IdPool pool;

  // Random-waypoint state.
  Vec2 waypoint;
  double speed = 0.0;
  double pause_left = 0.0;
};

}  // namespace sfv
