#include "wimax/interleave.hpp"

#include <algorithm>
#include <stdexcept>

#include "wimax/errors.hpp"

namespace wimax::interleave {

void ConvInterleaverParams::validate() const {
  if (branches < 1 || delay_step < 0) {
    throw std::invalid_argument("conv interleaver: need branches >= 1 and delay_step >= 0");
  }
}

std::string ConvInterleaverParams::describe() const {
  return std::to_string(branches) + "x" + std::to_string(delay_step);
}

ConvolutionalInterleaver::ConvolutionalInterleaver(const ConvInterleaverParams& params,
                                                   Direction direction)
    : params_(params) {
  params_.validate();
  const auto b = static_cast<std::size_t>(params_.branches);
  const auto m = static_cast<std::size_t>(params_.delay_step);
  lines_.resize(b);
  std::size_t offset = 0;
  for (std::size_t j = 0; j < b; ++j) {
    const std::size_t depth = direction == Direction::Interleave ? j : b - 1 - j;
    lines_[j].offset = offset;
    lines_[j].length = depth * m;
    offset += lines_[j].length;
  }
  storage_.assign(offset, params_.fill_symbol);
}

FieldElement ConvolutionalInterleaver::push(FieldElement symbol) {
  Line& line = lines_[branch_];
  branch_ = branch_ + 1 == lines_.size() ? 0 : branch_ + 1;
  if (line.length == 0) return symbol;
  FieldElement& cell = storage_[line.offset + line.head];
  const FieldElement out = cell;
  cell = symbol;
  line.head = line.head + 1 == line.length ? 0 : line.head + 1;
  return out;
}

void ConvolutionalInterleaver::push(std::span<const FieldElement> in, std::span<FieldElement> out) {
  if (in.size() != out.size()) {
    throw BadLength("conv interleaver: input and output spans differ in size");
  }
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = push(in[i]);
}

void ConvolutionalInterleaver::reset() {
  std::fill(storage_.begin(), storage_.end(), params_.fill_symbol);
  for (Line& line : lines_) line.head = 0;
  branch_ = 0;
}

std::vector<FieldElement> conv_interleave(std::span<const FieldElement> symbols,
                                          const ConvInterleaverParams& p) {
  ConvolutionalInterleaver il(p, ConvolutionalInterleaver::Direction::Interleave);
  std::vector<FieldElement> out;
  out.reserve(symbols.size() + p.latency());
  for (FieldElement s : symbols) out.push_back(il.push(s));
  for (std::size_t i = 0; i < p.latency(); ++i) out.push_back(il.push(p.fill_symbol));
  return out;
}

std::vector<FieldElement> conv_deinterleave(std::span<const FieldElement> symbols,
                                            const ConvInterleaverParams& p) {
  if (symbols.size() < p.latency()) {
    throw BadLength("conv_deinterleave: input shorter than the interleaver latency");
  }
  ConvolutionalInterleaver il(p, ConvolutionalInterleaver::Direction::Deinterleave);
  std::vector<FieldElement> out;
  out.reserve(symbols.size() - p.latency());
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    const FieldElement s = il.push(symbols[i]);
    if (i >= p.latency()) out.push_back(s);
  }
  return out;
}

void BlockInterleaverParams::validate() const {
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("block interleaver: rows and cols must be positive");
  }
}

std::string BlockInterleaverParams::describe() const {
  return std::to_string(rows) + "x" + std::to_string(cols);
}

namespace {

template <bool Forward>
Bits permute_blocks(BitView bits, const BlockInterleaverParams& p) {
  p.validate();
  const std::size_t block = p.block_size();
  if (bits.size() % block != 0) {
    throw BadLength("block interleaver: input is not a multiple of rows * cols");
  }
  const auto rows = static_cast<std::size_t>(p.rows);
  const auto cols = static_cast<std::size_t>(p.cols);
  Bits out(bits.size());
  for (std::size_t base = 0; base < bits.size(); base += block) {
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        const std::size_t row_major = base + r * cols + c;
        const std::size_t col_major = base + c * rows + r;
        if constexpr (Forward) {
          out[col_major] = bits[row_major];
        } else {
          out[row_major] = bits[col_major];
        }
      }
    }
  }
  return out;
}

}  // namespace

Bits block_interleave(BitView bits, const BlockInterleaverParams& p) {
  return permute_blocks<true>(bits, p);
}

Bits block_deinterleave(BitView bits, const BlockInterleaverParams& p) {
  return permute_blocks<false>(bits, p);
}

}  // namespace wimax::interleave
