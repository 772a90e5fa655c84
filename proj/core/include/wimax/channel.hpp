#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wimax::channel {

using Complex = std::complex<double>;

enum class ChannelKind { Awgn, Rayleigh, Rician };
enum class SnrMode { PerSymbolEs, PerInfoBitEb };

inline constexpr ChannelKind kAllChannels[] = {ChannelKind::Awgn, ChannelKind::Rayleigh,
                                               ChannelKind::Rician};

std::string to_string(ChannelKind kind);
std::string to_string(SnrMode mode);
std::optional<ChannelKind> parse_channel(std::string_view name);
std::optional<SnrMode> parse_snr_mode(std::string_view name);

// snr_db = +inf disables noise.
inline constexpr double kNoiseless = std::numeric_limits<double>::infinity();

struct ChannelConfig {
  ChannelKind kind = ChannelKind::Awgn;
  double snr_db = kNoiseless;
  SnrMode snr_mode = SnrMode::PerSymbolEs;
  double rician_k_db = 6.0;
  // true: one gain per block. false: one gain held for the whole call.
  bool block_fading = true;

  // Samples per fading block (one OFDM symbol including its prefix).
  std::size_t block_length = 320;
  // Average transmitted power per time sample, Es.
  double signal_power = 1.0;
  // Es / Eb. Eb mode sets N0 = Es / (Eb/N0 * es_per_eb).
  double es_per_eb = 1.0;

  // Complex noise variance N0 (N0/2 per real dimension); 0 when noiseless.
  double noise_variance() const;
  bool noiseless() const noexcept { return snr_db == kNoiseless; }
  double rician_k() const noexcept;
};

struct ChannelRealization {
  Complex gain{1.0, 0.0};
  std::uint64_t noise_seed = 0;
};

struct ChannelOutput {
  std::vector<Complex> samples;
  std::vector<ChannelRealization> realizations;  // one per block
};

// Unit-power fading draw: h = sqrt(K/(K+1)) + sqrt(1/(K+1)) * CN(0,1).
// K = 0 is Rayleigh; AWGN returns exactly 1.
Complex draw_gain(ChannelKind kind, double rician_k, std::mt19937_64& rng);

// Per block: y = h * x + n. Gains with |h| < 1e-12 are redrawn. Output is a
// pure function of (samples, cfg, seed). Throws BadLength unless the sample
// count is a multiple of cfg.block_length.
ChannelOutput apply_channel(std::span<const Complex> samples, const ChannelConfig& cfg,
                            std::uint64_t seed);

// Zero-forcing with the true gains; symbols.size() must split evenly into
// one group per realization (BadLength otherwise). Throws SingularGain for
// |h| < 1e-12.
std::vector<Complex> equalize(std::span<const Complex> symbols,
                              std::span<const ChannelRealization> realizations);

}  // namespace wimax::channel
