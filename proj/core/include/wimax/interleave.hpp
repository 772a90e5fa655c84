#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "wimax/bits.hpp"
#include "wimax/gf256.hpp"

namespace wimax::interleave {

using gf::FieldElement;

// Bank of `branches` FIFOs; branch j holds j * delay_step cells on the
// transmit side and (branches - 1 - j) * delay_step on the receive side.
// Symbols are dealt round-robin starting at branch 0.
struct ConvInterleaverParams {
  int branches = 12;
  int delay_step = 17;
  FieldElement fill_symbol = 0;

  // End-to-end delay in symbols: B * (B - 1) * M.
  std::size_t latency() const noexcept {
    return static_cast<std::size_t>(branches) * static_cast<std::size_t>(branches - 1) *
           static_cast<std::size_t>(delay_step);
  }
  void validate() const;
  std::string describe() const;  // "BxM"

  friend bool operator==(const ConvInterleaverParams&, const ConvInterleaverParams&) = default;
};

// Streaming convolutional (de)interleaver. Delay lines start filled with
// fill_symbol and persist across push() calls.
class ConvolutionalInterleaver {
 public:
  enum class Direction { Interleave, Deinterleave };

  ConvolutionalInterleaver(const ConvInterleaverParams& params, Direction direction);

  FieldElement push(FieldElement symbol);
  void push(std::span<const FieldElement> in, std::span<FieldElement> out);
  void reset();

 private:
  struct Line {
    std::size_t offset = 0;  // into storage_
    std::size_t length = 0;
    std::size_t head = 0;
  };
  ConvInterleaverParams params_;
  std::vector<Line> lines_;
  std::vector<FieldElement> storage_;
  std::size_t branch_ = 0;
};

// Interleaves `symbols` followed by latency() fill symbols; the output is
// latency() symbols longer than the input.
std::vector<FieldElement> conv_interleave(std::span<const FieldElement> symbols,
                                          const ConvInterleaverParams& p);

// Deinterleaves and drops the first latency() outputs. Throws BadLength if
// the input is shorter than the latency.
std::vector<FieldElement> conv_deinterleave(std::span<const FieldElement> symbols,
                                            const ConvInterleaverParams& p);

// Row-write / column-read permutation over rows x cols blocks.
struct BlockInterleaverParams {
  int rows = 16;
  int cols = 12;

  std::size_t block_size() const noexcept {
    return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  }
  void validate() const;
  std::string describe() const;  // "RxC"

  friend bool operator==(const BlockInterleaverParams&, const BlockInterleaverParams&) = default;
};

// Both throw BadLength unless bits.size() is a multiple of rows * cols.
Bits block_interleave(BitView bits, const BlockInterleaverParams& p);
Bits block_deinterleave(BitView bits, const BlockInterleaverParams& p);

}  // namespace wimax::interleave
