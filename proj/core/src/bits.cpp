#include "wimax/bits.hpp"

#include <algorithm>

#include "wimax/errors.hpp"

namespace wimax {

std::vector<std::uint8_t> pack_bytes(BitView bits) {
  if (bits.size() % 8 != 0) {
    throw BadLength("pack_bytes: bit count is not a multiple of 8");
  }
  std::vector<std::uint8_t> bytes(bits.size() / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    bytes[i / 8] |= static_cast<std::uint8_t>((bits[i] & 1u) << (i % 8));
  }
  return bytes;
}

Bits unpack_bytes(std::span<const std::uint8_t> bytes) {
  Bits bits(bytes.size() * 8);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    bits[i] = (bytes[i / 8] >> (i % 8)) & 1u;
  }
  return bits;
}

std::uint64_t count_bit_errors(BitView sent, BitView received) {
  const std::size_t common = std::min(sent.size(), received.size());
  std::uint64_t errors = 0;
  for (std::size_t i = 0; i < common; ++i) {
    errors += (sent[i] ^ received[i]) & 1u;
  }
  errors += std::max(sent.size(), received.size()) - common;
  return errors;
}

}  // namespace wimax
