#include "wimax/channel.hpp"

#include <algorithm>
#include <cmath>

#include "wimax/errors.hpp"

namespace wimax::channel {

namespace {

constexpr double kMinGain = 1e-12;

Complex circular_gaussian(std::mt19937_64& rng, double variance) {
  std::normal_distribution<double> normal(0.0, std::sqrt(variance / 2.0));
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

}  // namespace

std::string to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::Awgn: return "awgn";
    case ChannelKind::Rayleigh: return "rayleigh";
    case ChannelKind::Rician: return "rician";
  }
  return "unknown";
}

std::string to_string(SnrMode mode) {
  return mode == SnrMode::PerSymbolEs ? "es" : "eb";
}

std::optional<ChannelKind> parse_channel(std::string_view name) {
  if (name == "awgn") return ChannelKind::Awgn;
  if (name == "rayleigh") return ChannelKind::Rayleigh;
  if (name == "rician" || name == "rice") return ChannelKind::Rician;
  return std::nullopt;
}

std::optional<SnrMode> parse_snr_mode(std::string_view name) {
  if (name == "es" || name == "esn0") return SnrMode::PerSymbolEs;
  if (name == "eb" || name == "ebn0") return SnrMode::PerInfoBitEb;
  return std::nullopt;
}

double ChannelConfig::noise_variance() const {
  if (noiseless()) return 0.0;
  double snr = std::pow(10.0, snr_db / 10.0);
  if (snr_mode == SnrMode::PerInfoBitEb) snr *= es_per_eb;
  return signal_power / snr;
}

double ChannelConfig::rician_k() const noexcept {
  return std::pow(10.0, rician_k_db / 10.0);
}

Complex draw_gain(ChannelKind kind, double rician_k, std::mt19937_64& rng) {
  switch (kind) {
    case ChannelKind::Awgn:
      return {1.0, 0.0};
    case ChannelKind::Rayleigh:
      return circular_gaussian(rng, 1.0);
    case ChannelKind::Rician: {
      const double los = std::sqrt(rician_k / (rician_k + 1.0));
      const double scatter = std::sqrt(1.0 / (rician_k + 1.0));
      return Complex(los, 0.0) + scatter * circular_gaussian(rng, 1.0);
    }
  }
  return {1.0, 0.0};
}

ChannelOutput apply_channel(std::span<const Complex> samples, const ChannelConfig& cfg,
                            std::uint64_t seed) {
  if (cfg.block_length == 0 || samples.size() % cfg.block_length != 0) {
    throw BadLength("apply_channel: sample count is not a multiple of the block length");
  }
  const std::size_t blocks = samples.size() / cfg.block_length;
  const double n0 = cfg.noise_variance();
  const double sigma = std::sqrt(n0 / 2.0);
  const double k = cfg.rician_k();

  std::mt19937_64 rng(seed);
  auto fresh_gain = [&] {
    Complex h = draw_gain(cfg.kind, k, rng);
    while (std::abs(h) < kMinGain) h = draw_gain(cfg.kind, k, rng);
    return h;
  };

  ChannelOutput out;
  out.samples.resize(samples.size());
  out.realizations.resize(blocks);
  const Complex held = cfg.block_fading ? Complex{} : fresh_gain();
  for (std::size_t b = 0; b < blocks; ++b) {
    ChannelRealization& r = out.realizations[b];
    r.gain = cfg.block_fading ? fresh_gain() : held;
    r.noise_seed = rng();

    const std::size_t base = b * cfg.block_length;
    if (n0 == 0.0) {
      for (std::size_t i = 0; i < cfg.block_length; ++i) {
        out.samples[base + i] = r.gain * samples[base + i];
      }
      continue;
    }
    std::mt19937_64 noise_rng(r.noise_seed);
    std::normal_distribution<double> normal(0.0, sigma);
    for (std::size_t i = 0; i < cfg.block_length; ++i) {
      const double re = normal(noise_rng);
      const double im = normal(noise_rng);
      out.samples[base + i] = r.gain * samples[base + i] + Complex(re, im);
    }
  }
  return out;
}

std::vector<Complex> equalize(std::span<const Complex> symbols,
                              std::span<const ChannelRealization> realizations) {
  if (realizations.empty()) {
    if (!symbols.empty()) throw BadLength("equalize: symbols without realizations");
    return {};
  }
  if (symbols.size() % realizations.size() != 0) {
    throw BadLength("equalize: symbols do not split evenly across realizations");
  }
  const std::size_t per_block = symbols.size() / realizations.size();
  std::vector<Complex> out(symbols.size());
  for (std::size_t b = 0; b < realizations.size(); ++b) {
    const Complex h = realizations[b].gain;
    if (std::abs(h) < kMinGain) throw SingularGain("equalize: channel gain below 1e-12");
    if (h == Complex(1.0, 0.0)) {
      std::copy_n(symbols.begin() + static_cast<std::ptrdiff_t>(b * per_block), per_block,
                  out.begin() + static_cast<std::ptrdiff_t>(b * per_block));
      continue;
    }
    const Complex inv = 1.0 / h;
    for (std::size_t i = 0; i < per_block; ++i) {
      out[b * per_block + i] = symbols[b * per_block + i] * inv;
    }
  }
  return out;
}

}  // namespace wimax::channel
