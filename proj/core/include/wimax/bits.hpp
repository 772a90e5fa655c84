#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace wimax {

// One bit per byte, values 0 or 1. Unpacked on purpose: every stage of the
// chain indexes individual bits.
using Bits = std::vector<std::uint8_t>;
using BitView = std::span<const std::uint8_t>;

// Packs bits into bytes, LSB-first within each byte. The bit count must be a
// multiple of 8.
std::vector<std::uint8_t> pack_bytes(BitView bits);

// Inverse of pack_bytes.
Bits unpack_bytes(std::span<const std::uint8_t> bytes);

// Hamming distance over the common prefix; length mismatch counts every
// missing bit as an error.
std::uint64_t count_bit_errors(BitView sent, BitView received);

}  // namespace wimax
