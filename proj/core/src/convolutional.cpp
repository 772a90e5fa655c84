#include "wimax/convolutional.hpp"

#include <bit>
#include <stdexcept>

#include "wimax/errors.hpp"

namespace wimax::fec {

namespace {

std::uint8_t encoder_output(unsigned reg, const std::array<unsigned, 2>& g) {
  const auto x = static_cast<std::uint8_t>(std::popcount(reg & g[0]) & 1);
  const auto y = static_cast<std::uint8_t>(std::popcount(reg & g[1]) & 1);
  return static_cast<std::uint8_t>((x << 1) | y);
}

}  // namespace

std::string to_string(CodeRate rate) {
  return rate == CodeRate::Half ? "1/2" : "2/3";
}

PuncturePattern PuncturePattern::for_rate(CodeRate rate) {
  return rate == CodeRate::Half ? identity() : rate_two_thirds();
}

int PuncturePattern::kept_per_period() const noexcept {
  int kept = 0;
  for (int i = 0; i < period; ++i) {
    kept += (keep_x[static_cast<std::size_t>(i)] ? 1 : 0) +
            (keep_y[static_cast<std::size_t>(i)] ? 1 : 0);
  }
  return kept;
}

void PuncturePattern::validate() const {
  if (period < 1 || keep_x.size() != static_cast<std::size_t>(period) ||
      keep_y.size() != static_cast<std::size_t>(period)) {
    throw std::invalid_argument("puncture: masks must have length == period");
  }
  if (kept_per_period() == 0) {
    throw std::invalid_argument("puncture: pattern keeps no bits");
  }
}

ConvParams ConvParams::standard(int constraint_length, CodeRate rate) {
  ConvParams p;
  p.constraint_length = constraint_length;
  switch (constraint_length) {
    case 3: p.generators = {07, 05}; break;
    case 5: p.generators = {023, 035}; break;
    case 7: p.generators = {0171, 0133}; break;
    default:
      throw std::invalid_argument("conv: supported constraint lengths are 3, 5 and 7");
  }
  p.puncture = PuncturePattern::for_rate(rate);
  return p;
}

void ConvParams::validate() const {
  if (constraint_length < 2 || constraint_length > 7) {
    throw std::invalid_argument("conv: constraint length must be in [2, 7]");
  }
  for (unsigned g : generators) {
    if ((g & 1u) == 0 || g >= (1u << constraint_length)) {
      throw std::invalid_argument("conv: generator must have degree < m and low bit set");
    }
  }
  puncture.validate();
}

Bits conv_encode(BitView bits, const ConvParams& params) {
  params.validate();
  const int mem = params.memory();
  Bits out;
  out.reserve(2 * (bits.size() + static_cast<std::size_t>(mem)));
  unsigned state = 0;
  auto step = [&](unsigned in) {
    const unsigned reg = (in << mem) | state;
    const std::uint8_t xy = encoder_output(reg, params.generators);
    out.push_back(static_cast<std::uint8_t>(xy >> 1));
    out.push_back(static_cast<std::uint8_t>(xy & 1));
    state = reg >> 1;
  };
  for (std::uint8_t b : bits) step(b & 1u);
  for (int i = 0; i < mem; ++i) step(0);
  return out;
}

Bits puncture(BitView bits, const PuncturePattern& pattern) {
  pattern.validate();
  const std::size_t span = 2 * static_cast<std::size_t>(pattern.period);
  if (bits.size() % span != 0) {
    throw BadLength("puncture: input is not a whole number of pattern periods");
  }
  Bits out;
  out.reserve(bits.size() / span * static_cast<std::size_t>(pattern.kept_per_period()));
  for (std::size_t base = 0; base < bits.size(); base += span) {
    for (std::size_t i = 0; i < static_cast<std::size_t>(pattern.period); ++i) {
      if (pattern.keep_x[i]) out.push_back(bits[base + 2 * i]);
      if (pattern.keep_y[i]) out.push_back(bits[base + 2 * i + 1]);
    }
  }
  return out;
}

std::vector<std::uint8_t> depuncture(BitView bits, const PuncturePattern& pattern) {
  pattern.validate();
  const auto kept = static_cast<std::size_t>(pattern.kept_per_period());
  if (bits.size() % kept != 0) {
    throw BadLength("depuncture: input is not a whole number of pattern periods");
  }
  std::vector<std::uint8_t> out;
  out.reserve(bits.size() / kept * 2 * static_cast<std::size_t>(pattern.period));
  std::size_t pos = 0;
  while (pos < bits.size()) {
    for (std::size_t i = 0; i < static_cast<std::size_t>(pattern.period); ++i) {
      out.push_back(pattern.keep_x[i] ? bits[pos++] : kErasure);
      out.push_back(pattern.keep_y[i] ? bits[pos++] : kErasure);
    }
  }
  return out;
}

ViterbiDecoder::ViterbiDecoder(const ConvParams& params) : params_(params) {
  params_.validate();
  const unsigned registers = 1u << params_.constraint_length;
  outputs_.resize(registers);
  for (unsigned reg = 0; reg < registers; ++reg) {
    outputs_[reg] = encoder_output(reg, params_.generators);
  }
  metrics_.resize(static_cast<std::size_t>(params_.states()));
  next_metrics_.resize(metrics_.size());
}

Bits ViterbiDecoder::decode(std::span<const std::uint8_t> symbols) {
  const int mem = params_.memory();
  if (symbols.size() % 2 != 0 || symbols.size() / 2 < static_cast<std::size_t>(mem)) {
    throw BadLength("viterbi_decode: symbol count inconsistent with a terminated trellis");
  }
  const std::size_t steps = symbols.size() / 2;
  const unsigned num_states = static_cast<unsigned>(params_.states());
  const unsigned state_mask = num_states - 1;

  // Metrics grow by at most 2 per step, so uint32 never overflows for any
  // realistic input length.
  constexpr std::uint32_t kUnreachable = 1u << 28;
  std::fill(metrics_.begin(), metrics_.end(), kUnreachable);
  metrics_[0] = 0;
  decisions_.assign(steps, 0);

  for (std::size_t t = 0; t < steps; ++t) {
    const std::uint8_t rx = symbols[2 * t];
    const std::uint8_t ry = symbols[2 * t + 1];
    std::array<std::uint32_t, 4> branch{};
    for (unsigned xy = 0; xy < 4; ++xy) {
      const unsigned ex = xy >> 1;
      const unsigned ey = xy & 1u;
      branch[xy] = (rx != kErasure && rx != ex ? 1u : 0u) + (ry != kErasure && ry != ey ? 1u : 0u);
    }
    std::uint64_t decided = 0;
    for (unsigned next = 0; next < num_states; ++next) {
      const unsigned in = next >> (mem - 1);
      const unsigned p0 = (next << 1) & state_mask;
      const unsigned p1 = p0 | 1u;
      const std::uint32_t m0 = metrics_[p0] + branch[outputs_[(in << mem) | p0]];
      const std::uint32_t m1 = metrics_[p1] + branch[outputs_[(in << mem) | p1]];
      if (m1 < m0) {
        next_metrics_[next] = m1;
        decided |= std::uint64_t{1} << next;
      } else {
        next_metrics_[next] = m0;
      }
    }
    decisions_[t] = decided;
    metrics_.swap(next_metrics_);
  }

  Bits decoded(steps);
  unsigned state = 0;
  for (std::size_t t = steps; t-- > 0;) {
    decoded[t] = static_cast<std::uint8_t>(state >> (mem - 1));
    const unsigned chose_one = static_cast<unsigned>((decisions_[t] >> state) & 1u);
    state = ((state << 1) & state_mask) | chose_one;
  }
  decoded.resize(steps - static_cast<std::size_t>(mem));
  return decoded;
}

Bits viterbi_decode(std::span<const std::uint8_t> symbols, const ConvParams& params) {
  return ViterbiDecoder(params).decode(symbols);
}

}  // namespace wimax::fec
