#include "wimax/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <deque>
#include <mutex>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

#include "wimax/errors.hpp"

namespace wimax::sim {

namespace {

std::size_t round_up(std::size_t value, std::size_t multiple) {
  return (value + multiple - 1) / multiple * multiple;
}

// 8 bits per RS symbol, LSB first.
std::vector<gf::FieldElement> bits_to_symbols(BitView bits) {
  std::vector<gf::FieldElement> symbols(bits.size() / 8, 0);
  for (std::size_t i = 0; i < symbols.size() * 8; ++i) {
    symbols[i / 8] |= static_cast<gf::FieldElement>((bits[i] & 1u) << (i % 8));
  }
  return symbols;
}

void symbols_to_bits(std::span<const gf::FieldElement> symbols, Bits& out) {
  out.resize(symbols.size() * 8);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = (symbols[i / 8] >> (i % 8)) & 1u;
  }
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// ---------------------------------------------------------------------------
// LinkProfile

LinkProfile LinkProfile::make(Scheme modulation, CodeRate rate, ChannelKind kind,
                              int constraint_length) {
  LinkProfile p;
  p.modulation = modulation;
  p.conv = fec::ConvParams::standard(constraint_length, rate);
  p.channel.kind = kind;
  const std::size_t bits_per_ofdm_symbol =
      p.ofdm.num_data() * static_cast<std::size_t>(modem::Constellation::get(modulation).bits_per_symbol);
  p.block_interleaver.rows = 16;
  p.block_interleaver.cols = static_cast<int>(bits_per_ofdm_symbol / 16);
  return p;
}

double LinkProfile::code_rate() const {
  if (!coding_enabled) return 1.0;
  return static_cast<double>(rs.k) / rs.n * conv.puncture.rate();
}

std::string LinkProfile::rate_label() const {
  const int num = conv.puncture.period;
  const int den = conv.puncture.kept_per_period();
  const int g = std::gcd(num, den);
  return std::to_string(num / g) + "/" + std::to_string(den / g);
}

int LinkProfile::bits_per_symbol() const {
  return modem::Constellation::get(modulation).bits_per_symbol;
}

std::size_t LinkProfile::info_bits_per_frame() const {
  return static_cast<std::size_t>(rs.k) * 8;
}

void LinkProfile::validate() const {
  rs.validate();
  conv.validate();
  conv_interleaver.validate();
  block_interleaver.validate();
  ofdm.validate();
}

channel::ChannelConfig channel_config_for(const LinkProfile& profile, double snr_db) {
  channel::ChannelConfig cfg = profile.channel;
  cfg.snr_db = snr_db;
  cfg.block_length = profile.ofdm.block_length();
  const double sample_power = static_cast<double>(profile.ofdm.num_data()) /
                              static_cast<double>(profile.ofdm.fft_size);
  cfg.signal_power = sample_power;
  cfg.es_per_eb = profile.bits_per_symbol() * profile.code_rate() * sample_power;
  return cfg;
}

// ---------------------------------------------------------------------------
// Framing

FrameShape frame_shape(const LinkProfile& profile) {
  profile.validate();
  FrameShape s;
  s.info_bits = profile.info_bits_per_frame();
  const std::size_t carrier_bits =
      profile.ofdm.num_data() * static_cast<std::size_t>(profile.bits_per_symbol());
  std::size_t granule = carrier_bits;
  if (profile.coding_enabled) {
    const auto period = static_cast<std::size_t>(profile.conv.puncture.period);
    const auto mem = static_cast<std::size_t>(profile.conv.memory());
    s.inner_bits = static_cast<std::size_t>(profile.rs.n) * 8;
    s.trellis_pad = (period - (s.inner_bits + mem) % period) % period;
    const std::size_t steps = s.inner_bits + s.trellis_pad + mem;
    s.coded_bits = steps / period * static_cast<std::size_t>(profile.conv.puncture.kept_per_period());
    granule = std::lcm(granule, profile.block_interleaver.block_size());
  } else {
    s.coded_bits = s.info_bits;
  }
  s.frame_bits = round_up(s.coded_bits, granule);
  s.ofdm_symbols = s.frame_bits / carrier_bits;
  s.samples = s.ofdm_symbols * profile.ofdm.block_length();
  return s;
}

namespace {

std::size_t flush_frames_for(const LinkProfile& profile) {
  if (!profile.coding_enabled) return 0;
  const auto n = static_cast<std::size_t>(profile.rs.n);
  return (profile.conv_interleaver.latency() + n - 1) / n;
}

}  // namespace

FrameLayout frame_layout(const LinkProfile& profile, std::size_t info_bits) {
  FrameLayout layout;
  layout.shape = frame_shape(profile);
  layout.info_bits = info_bits;
  layout.data_frames = std::max<std::size_t>(
      1, (info_bits + layout.shape.info_bits - 1) / layout.shape.info_bits);
  layout.flush_frames = flush_frames_for(profile);
  return layout;
}

// ---------------------------------------------------------------------------
// Transmitter

struct Transmitter::Impl {
  LinkProfile profile;
  FrameShape shape;
  std::size_t flush_frames;
  const modem::Constellation& constellation;
  fec::ReedSolomon rs;
  interleave::ConvolutionalInterleaver interleaver;
  ofdm::OfdmModem ofdm;
  std::vector<gf::FieldElement> codeword;
  Bits inner;

  explicit Impl(const LinkProfile& p)
      : profile(p),
        shape(frame_shape(p)),
        flush_frames(flush_frames_for(p)),
        constellation(modem::Constellation::get(p.modulation)),
        rs(p.rs),
        interleaver(p.conv_interleaver, interleave::ConvolutionalInterleaver::Direction::Interleave),
        ofdm(p.ofdm),
        codeword(static_cast<std::size_t>(p.rs.n)) {}

  std::vector<Complex> finish(Bits coded) {
    coded.resize(shape.frame_bits, 0);
    if (profile.coding_enabled) {
      coded = interleave::block_interleave(coded, profile.block_interleaver);
    }
    return ofdm.modulate(modem::modulate(coded, constellation));
  }

  std::vector<Complex> send_symbols(std::span<const gf::FieldElement> symbols) {
    std::vector<gf::FieldElement> shuffled(symbols.size());
    interleaver.push(symbols, shuffled);
    symbols_to_bits(shuffled, inner);
    inner.resize(shape.inner_bits + shape.trellis_pad, 0);
    return finish(fec::puncture(fec::conv_encode(inner, profile.conv), profile.conv.puncture));
  }

  std::vector<Complex> send(BitView info) {
    if (info.size() > shape.info_bits) {
      throw BadLength("transmit: frame payload exceeds one RS message");
    }
    Bits payload(info.begin(), info.end());
    payload.resize(shape.info_bits, 0);
    if (!profile.coding_enabled) return finish(std::move(payload));

    const std::vector<gf::FieldElement> message = bits_to_symbols(payload);
    std::copy(message.begin(), message.end(), codeword.begin());
    rs.encode_in_place(codeword);
    return send_symbols(codeword);
  }

  std::vector<Complex> send_flush() {
    const std::vector<gf::FieldElement> fill(codeword.size(), profile.conv_interleaver.fill_symbol);
    return send_symbols(fill);
  }
};

Transmitter::Transmitter(const LinkProfile& profile) : impl_(std::make_unique<Impl>(profile)) {}
Transmitter::~Transmitter() = default;
Transmitter::Transmitter(Transmitter&&) noexcept = default;
Transmitter& Transmitter::operator=(Transmitter&&) noexcept = default;

const FrameShape& Transmitter::shape() const noexcept { return impl_->shape; }
std::size_t Transmitter::flush_frames() const noexcept { return impl_->flush_frames; }
std::vector<Complex> Transmitter::send(BitView info) { return impl_->send(info); }

std::vector<Complex> Transmitter::send_flush() {
  if (!impl_->profile.coding_enabled) {
    throw std::logic_error("transmit: uncoded links have no interleaver to flush");
  }
  return impl_->send_flush();
}

// ---------------------------------------------------------------------------
// Receiver

struct Receiver::Impl {
  LinkProfile profile;
  FrameShape shape;
  const modem::Constellation& constellation;
  fec::ReedSolomon rs;
  fec::ViterbiDecoder viterbi;
  interleave::ConvolutionalInterleaver deinterleaver;
  ofdm::OfdmModem ofdm;
  std::size_t latency_left;
  std::vector<gf::FieldElement> pending;
  std::uint64_t failures = 0;
  std::uint64_t corrected = 0;

  explicit Impl(const LinkProfile& p)
      : profile(p),
        shape(frame_shape(p)),
        constellation(modem::Constellation::get(p.modulation)),
        rs(p.rs),
        viterbi(p.conv),
        deinterleaver(p.conv_interleaver,
                      interleave::ConvolutionalInterleaver::Direction::Deinterleave),
        ofdm(p.ofdm),
        latency_left(p.conv_interleaver.latency()) {
    pending.reserve(static_cast<std::size_t>(p.rs.n));
  }

  std::vector<Bits> receive(std::span<const Complex> samples,
                            std::span<const channel::ChannelRealization> realizations) {
    if (samples.size() != shape.samples || realizations.size() != shape.ofdm_symbols) {
      throw BadLength("receive: frame does not match the profile's frame shape");
    }
    const std::vector<Complex> freq = ofdm.demodulate(samples);
    Bits hard = modem::demodulate(channel::equalize(freq, realizations), constellation);

    std::vector<Bits> blocks;
    if (!profile.coding_enabled) {
      hard.resize(shape.info_bits);
      blocks.push_back(std::move(hard));
      return blocks;
    }

    Bits coded = interleave::block_deinterleave(hard, profile.block_interleaver);
    coded.resize(shape.coded_bits);
    Bits inner = viterbi.decode(fec::depuncture(coded, profile.conv.puncture));
    inner.resize(shape.inner_bits);
    const std::vector<gf::FieldElement> symbols = bits_to_symbols(inner);

    const auto n = static_cast<std::size_t>(profile.rs.n);
    for (gf::FieldElement s : symbols) {
      const gf::FieldElement out = deinterleaver.push(s);
      if (latency_left > 0) {
        --latency_left;
        continue;
      }
      pending.push_back(out);
      if (pending.size() == n) {
        const fec::DecodeReport report = rs.decode_in_place(pending);
        if (report.decode_failure) {
          ++failures;
        } else {
          corrected += static_cast<std::uint64_t>(report.corrected_symbols);
        }
        Bits block;
        symbols_to_bits(std::span<const gf::FieldElement>(pending).first(static_cast<std::size_t>(profile.rs.k)),
                        block);
        blocks.push_back(std::move(block));
        pending.clear();
      }
    }
    return blocks;
  }
};

Receiver::Receiver(const LinkProfile& profile) : impl_(std::make_unique<Impl>(profile)) {}
Receiver::~Receiver() = default;
Receiver::Receiver(Receiver&&) noexcept = default;
Receiver& Receiver::operator=(Receiver&&) noexcept = default;

std::vector<Bits> Receiver::receive(std::span<const Complex> samples,
                                    std::span<const channel::ChannelRealization> realizations) {
  return impl_->receive(samples, realizations);
}

std::uint64_t Receiver::rs_failures() const noexcept { return impl_->failures; }
std::uint64_t Receiver::rs_corrected_symbols() const noexcept { return impl_->corrected; }

// ---------------------------------------------------------------------------
// Whole-message API

std::vector<Complex> transmit(BitView bits, const LinkProfile& profile) {
  Transmitter tx(profile);
  const FrameLayout layout = frame_layout(profile, bits.size());
  std::vector<Complex> samples;
  samples.reserve(layout.total_samples());
  const std::size_t per_frame = layout.shape.info_bits;
  for (std::size_t f = 0; f < layout.data_frames; ++f) {
    const std::size_t begin = std::min(bits.size(), f * per_frame);
    const std::size_t end = std::min(bits.size(), begin + per_frame);
    const std::vector<Complex> frame = tx.send(bits.subspan(begin, end - begin));
    samples.insert(samples.end(), frame.begin(), frame.end());
  }
  for (std::size_t f = 0; f < layout.flush_frames; ++f) {
    const std::vector<Complex> frame = tx.send_flush();
    samples.insert(samples.end(), frame.begin(), frame.end());
  }
  return samples;
}

Bits receive(std::span<const Complex> samples,
             std::span<const channel::ChannelRealization> realizations,
             const LinkProfile& profile, std::size_t info_bits) {
  const FrameLayout layout = frame_layout(profile, info_bits);
  if (samples.size() != layout.total_samples() ||
      realizations.size() != layout.total_ofdm_symbols()) {
    throw BadLength("receive: sample or realization count does not match the frame layout");
  }
  Receiver rx(profile);
  Bits out;
  out.reserve(layout.data_frames * layout.shape.info_bits);
  std::size_t blocks_taken = 0;
  for (std::size_t f = 0; f < layout.frames(); ++f) {
    auto frame_samples = samples.subspan(f * layout.shape.samples, layout.shape.samples);
    auto frame_real = realizations.subspan(f * layout.shape.ofdm_symbols, layout.shape.ofdm_symbols);
    for (Bits& block : rx.receive(frame_samples, frame_real)) {
      if (blocks_taken == layout.data_frames) break;
      out.insert(out.end(), block.begin(), block.end());
      ++blocks_taken;
    }
  }
  if (blocks_taken != layout.data_frames) {
    throw BadLength("receive: stream ended before every payload block was recovered");
  }
  out.resize(info_bits);
  return out;
}

// ---------------------------------------------------------------------------
// Monte Carlo

BerRecord run_ber_point(const LinkProfile& profile, double snr_db, const StopRule& rule,
                        std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  BerRecord record;
  record.profile = profile;
  record.profile.channel.snr_db = snr_db;
  record.snr_db = snr_db;
  record.seed = seed;

  const channel::ChannelConfig cfg = channel_config_for(profile, snr_db);
  Transmitter tx(profile);
  Receiver rx(profile);
  const std::size_t per_frame = tx.shape().info_bits;

  std::mt19937_64 source(mix_seed(seed, 0));
  std::deque<Bits> in_flight;
  std::uint64_t frame_index = 0;

  auto run_frame = [&](const std::vector<Complex>& samples) {
    const channel::ChannelOutput out =
        channel::apply_channel(samples, cfg, mix_seed(seed, ++frame_index));
    for (const Bits& block : rx.receive(out.samples, out.realizations)) {
      if (in_flight.empty()) break;  // interleaver fill after the last payload
      record.bit_errors += count_bit_errors(in_flight.front(),
                                            BitView(block).first(in_flight.front().size()));
      in_flight.pop_front();
    }
  };

  while (record.bits_sent < rule.max_info_bits && record.bit_errors < rule.min_errors) {
    const std::size_t count = static_cast<std::size_t>(
        std::min<std::uint64_t>(per_frame, rule.max_info_bits - record.bits_sent));
    Bits info(count);
    for (std::size_t i = 0; i < count; i += 64) {
      std::uint64_t word = source();
      for (std::size_t b = i; b < std::min(count, i + 64); ++b, word >>= 1) {
        info[b] = static_cast<std::uint8_t>(word & 1u);
      }
    }
    record.bits_sent += count;
    in_flight.push_back(info);
    run_frame(tx.send(info));
  }
  for (std::size_t f = 0; f < tx.flush_frames() && !in_flight.empty(); ++f) {
    run_frame(tx.send_flush());
  }

  record.ber = record.bits_sent == 0
                   ? 0.0
                   : static_cast<double>(record.bit_errors) / static_cast<double>(record.bits_sent);
  record.elapsed_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return record;
}

void SweepPlan::validate() const {
  if (profiles.empty()) throw std::invalid_argument("sweep: no profiles");
  if (snr_points.empty()) throw std::invalid_argument("sweep: no SNR points");
  for (std::size_t i = 1; i < snr_points.size(); ++i) {
    if (!(snr_points[i] > snr_points[i - 1])) {
      throw std::invalid_argument("sweep: SNR points must be strictly increasing");
    }
  }
  for (const LinkProfile& p : profiles) {
    p.validate();
    if (stop_rule.max_info_bits < p.info_bits_per_frame()) {
      throw std::invalid_argument("sweep: max_info_bits must cover one RS block");
    }
  }
}

std::vector<BerRecord> run_sweep(const SweepPlan& plan, unsigned workers,
                                 const ProgressFn& progress) {
  plan.validate();
  const std::size_t snr_count = plan.snr_points.size();
  const std::size_t total = plan.profiles.size() * snr_count;
  std::vector<BerRecord> records(total);

  std::atomic<std::size_t> next{0};
  std::size_t done = 0;
  std::mutex progress_mutex;
  std::exception_ptr failure;

  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) {
      try {
        records[i] = run_ber_point(plan.profiles[i / snr_count], plan.snr_points[i % snr_count],
                                   plan.stop_rule, plan.base_seed ^ static_cast<std::uint64_t>(i));
      } catch (...) {
        std::lock_guard lock(progress_mutex);
        if (!failure) failure = std::current_exception();
        next.store(total);
        return;
      }
      std::lock_guard lock(progress_mutex);
      ++done;
      if (progress) progress(records[i], done, total);
    }
  };

  const unsigned count = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(total)));
  if (count == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(count);
    for (unsigned w = 0; w < count; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

}  // namespace wimax::sim
