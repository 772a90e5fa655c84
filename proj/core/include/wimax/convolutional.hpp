#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wimax/bits.hpp"

namespace wimax::fec {

// Depunctured stream values: 0, 1, or an erasure that costs nothing
// against either hypothesis.
inline constexpr std::uint8_t kErasure = 2;

enum class CodeRate { Half, TwoThirds };

std::string to_string(CodeRate rate);

// Periodic keep mask over the mother code's (X, Y) output pairs. Within a
// period, kept bits are emitted in the order X1 Y1 X2 Y2 ...
struct PuncturePattern {
  int period = 1;
  std::vector<std::uint8_t> keep_x{1};
  std::vector<std::uint8_t> keep_y{1};

  static PuncturePattern identity() { return {}; }
  // keep_x = [1,0], keep_y = [1,1]: X1 Y1 Y2.
  static PuncturePattern rate_two_thirds() { return {2, {1, 0}, {1, 1}}; }
  static PuncturePattern for_rate(CodeRate rate);

  int kept_per_period() const noexcept;
  // Information bits per transmitted bit.
  double rate() const noexcept { return static_cast<double>(period) / kept_per_period(); }
  // Throws std::invalid_argument on size mismatch or an all-drop pattern.
  void validate() const;

  friend bool operator==(const PuncturePattern&, const PuncturePattern&) = default;
};

struct ConvParams {
  int constraint_length = 7;
  // Octal-specified taps for X and Y. The MSB of each generator taps the
  // current input bit.
  std::array<unsigned, 2> generators{0171, 0133};
  PuncturePattern puncture{};

  // Standard generator sets: m = 3 (7,5), m = 5 (23,35), m = 7 (171,133).
  static ConvParams standard(int constraint_length, CodeRate rate = CodeRate::Half);

  // Throws std::invalid_argument unless 2 <= m <= 7 and both generators have
  // degree < m with the low bit set.
  void validate() const;

  int memory() const noexcept { return constraint_length - 1; }
  int states() const noexcept { return 1 << memory(); }

  friend bool operator==(const ConvParams&, const ConvParams&) = default;
};

// Mother rate-1/2 encoding: the input followed by m-1 zero flush bits, two
// output bits (X then Y) per trellis step. Puncturing is a separate stage.
Bits conv_encode(BitView bits, const ConvParams& params);

// Throws BadLength unless bits.size() is a multiple of 2 * period.
Bits puncture(BitView bits, const PuncturePattern& pattern);

// Reinserts kErasure at punctured slots. Throws BadLength unless the input
// holds a whole number of periods.
std::vector<std::uint8_t> depuncture(BitView bits, const PuncturePattern& pattern);

// Hard-decision Viterbi decoder for a zero-terminated trellis. Reuses its
// buffers between calls; not safe to share across threads.
class ViterbiDecoder {
 public:
  explicit ViterbiDecoder(const ConvParams& params);

  // `symbols` holds 2 * (L + m - 1) values in {0, 1, kErasure}; returns the
  // L message bits. Equal path metrics resolve toward the predecessor whose
  // departing bit is 0. Throws BadLength on an odd or too-short input.
  Bits decode(std::span<const std::uint8_t> symbols);

 private:
  ConvParams params_;
  // Two-bit (X<<1 | Y) encoder output for each m-bit register value.
  std::vector<std::uint8_t> outputs_;
  std::vector<std::uint32_t> metrics_;
  std::vector<std::uint32_t> next_metrics_;
  std::vector<std::uint64_t> decisions_;
};

Bits viterbi_decode(std::span<const std::uint8_t> symbols, const ConvParams& params);

}  // namespace wimax::fec
