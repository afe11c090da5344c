#pragma once

#include <cstdio>
#include <string>

#include "sfv/core.hpp"

namespace sfv::test {

inline std::string hex(const Block& b) {
  std::string s;
  char buf[3];
  for (const auto byte : b) {
    std::snprintf(buf, sizeof buf, "%02x", byte);
    s += buf;
  }
  return s;
}

inline Block flip_bit(Block b, unsigned msb_pos) {
  b[msb_pos / 8] ^= static_cast<std::uint8_t>(0x80u >> (msb_pos % 8));
  return b;
}

// Bit-at-a-time CRC-16/CCITT-FALSE, kept separate from the library's table.
inline std::uint16_t reference_crc(const std::uint8_t* data, std::size_t n) {
  std::uint16_t crc = 0xFFFF;
  for (std::size_t i = 0; i < n; ++i) {
    crc ^= static_cast<std::uint16_t>(data[i] << 8);
    for (int k = 0; k < 8; ++k) {
      crc = (crc & 0x8000) ? static_cast<std::uint16_t>((crc << 1) ^ 0x1021) : static_cast<std::uint16_t>(crc << 1);
    }
  }
  return crc;
}

}  // namespace sfv::test
