#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "wimax/bits.hpp"
#include "wimax/channel.hpp"
#include "wimax/convolutional.hpp"
#include "wimax/interleave.hpp"
#include "wimax/modem.hpp"
#include "wimax/ofdm.hpp"
#include "wimax/reed_solomon.hpp"

namespace wimax::sim {

using Complex = std::complex<double>;
using channel::ChannelKind;
using fec::CodeRate;
using modem::Scheme;

// One row of the modulation x code rate x channel matrix plus every
// parameter needed to reproduce it.
struct LinkProfile {
  Scheme modulation = Scheme::Bpsk;
  fec::RsParams rs{};
  fec::ConvParams conv = fec::ConvParams::standard(7, CodeRate::Half);
  interleave::ConvInterleaverParams conv_interleaver{};
  interleave::BlockInterleaverParams block_interleaver{};
  ofdm::OfdmParams ofdm{};
  channel::ChannelConfig channel{};
  bool coding_enabled = true;

  // Defaults: RS(255,239,8), (171,133) code for m = 7, 12x17 convolutional
  // interleaver, 16 x (coded bits per OFDM symbol / 16) block interleaver,
  // 256-point OFDM with 192 data carriers and a 1/4 prefix.
  static LinkProfile make(Scheme modulation, CodeRate rate, ChannelKind kind,
                          int constraint_length = 7);

  // (k/n)_RS * conv rate when coded, 1 otherwise.
  double code_rate() const;
  std::string rate_label() const;  // "1/2", "2/3", or the puncture ratio
  int bits_per_symbol() const;
  // Information bits per link frame: one RS message (8k bits).
  std::size_t info_bits_per_frame() const;

  void validate() const;
};

// Channel parameters derived from the profile: fading block = one OFDM
// symbol and Es = D / N, the mean power of a transmitted sample (prefix
// included) for unit-energy constellations. Eb is the data-carrier energy
// per information bit, so Es / Eb = bits/symbol * code rate * D / N and the
// prefix is not charged to Eb.
channel::ChannelConfig channel_config_for(const LinkProfile& profile, double snr_db);

// Per-frame sizes, identical for every frame of a profile.
struct FrameShape {
  std::size_t info_bits = 0;         // payload bits per frame
  std::size_t inner_bits = 0;        // bits entering the convolutional encoder
  std::size_t trellis_pad = 0;       // zero bits so the trellis spans whole puncture periods
  std::size_t coded_bits = 0;        // after puncturing (coded) or info_bits (uncoded)
  std::size_t frame_bits = 0;        // coded_bits padded to whole interleaver blocks / OFDM symbols
  std::size_t ofdm_symbols = 0;
  std::size_t samples = 0;
};

FrameShape frame_shape(const LinkProfile& profile);

struct FrameLayout {
  FrameShape shape;
  std::size_t info_bits = 0;     // caller bits
  std::size_t data_frames = 0;   // frames carrying payload (>= 1)
  std::size_t flush_frames = 0;  // fill frames draining the convolutional interleaver
  std::size_t frames() const noexcept { return data_frames + flush_frames; }
  std::size_t total_samples() const noexcept { return frames() * shape.samples; }
  std::size_t total_ofdm_symbols() const noexcept { return frames() * shape.ofdm_symbols; }
};

FrameLayout frame_layout(const LinkProfile& profile, std::size_t info_bits);

// Streaming transmit chain, one frame per call. Interleaver state carries
// over between frames.
class Transmitter {
 public:
  explicit Transmitter(const LinkProfile& profile);
  ~Transmitter();
  Transmitter(Transmitter&&) noexcept;
  Transmitter& operator=(Transmitter&&) noexcept;

  const FrameShape& shape() const noexcept;
  std::size_t flush_frames() const noexcept;

  // Up to info_bits_per_frame() bits; shorter input is zero padded.
  std::vector<Complex> send(BitView info);
  // One frame of convolutional interleaver fill.
  std::vector<Complex> send_flush();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Streaming receive chain matching Transmitter.
class Receiver {
 public:
  explicit Receiver(const LinkProfile& profile);
  ~Receiver();
  Receiver(Receiver&&) noexcept;
  Receiver& operator=(Receiver&&) noexcept;

  // One frame of channel output plus its per-OFDM-symbol realizations.
  // Returns the payload blocks (info_bits_per_frame() bits each) completed by
  // this frame, in transmit order. With a convolutional interleaver the first
  // block emerges only after its latency has been pushed through.
  std::vector<Bits> receive(std::span<const Complex> samples,
                            std::span<const channel::ChannelRealization> realizations);

  std::uint64_t rs_failures() const noexcept;
  std::uint64_t rs_corrected_symbols() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Whole-message transmit: data frames followed by interleaver flush frames.
std::vector<Complex> transmit(BitView bits, const LinkProfile& profile);

// Inverse of transmit for a message of `info_bits` bits. Throws BadLength
// when the sample or realization count does not match frame_layout().
Bits receive(std::span<const Complex> samples,
             std::span<const channel::ChannelRealization> realizations,
             const LinkProfile& profile, std::size_t info_bits);

struct StopRule {
  std::uint64_t max_info_bits = 10'000'000;
  std::uint64_t min_errors = 100;
};

struct BerRecord {
  LinkProfile profile;
  double snr_db = 0.0;
  std::uint64_t bits_sent = 0;
  std::uint64_t bit_errors = 0;
  double ber = 0.0;
  std::uint64_t seed = 0;
  double elapsed_s = 0.0;
};

// Streams random frames until min_errors errors or max_info_bits bits, then
// drains the interleaver. Counts errors on information bits only.
BerRecord run_ber_point(const LinkProfile& profile, double snr_db, const StopRule& rule,
                        std::uint64_t seed);

struct SweepPlan {
  std::vector<LinkProfile> profiles;
  std::vector<double> snr_points;
  StopRule stop_rule{};
  std::uint64_t base_seed = 1;

  // Throws std::invalid_argument on an empty plan, non-increasing SNR
  // points, or a bit budget below one frame.
  void validate() const;
};

using ProgressFn = std::function<void(const BerRecord& record, std::size_t done,
                                      std::size_t total)>;

// Profiles x SNR points in plan order; point i uses seed base_seed ^ i.
// Output is identical for any worker count.
std::vector<BerRecord> run_sweep(const SweepPlan& plan, unsigned workers = 1,
                                 const ProgressFn& progress = {});

// SplitMix64 finalizer, used to derive independent stream seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

}  // namespace wimax::sim
