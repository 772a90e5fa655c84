#include "wimax/audio_io.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <numbers>
#include <string>

#include "wimax/errors.hpp"

namespace wimax::audio {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t read_u16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

std::uint32_t read_u32(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint32_t>(b[at]) | (static_cast<std::uint32_t>(b[at + 1]) << 8) |
         (static_cast<std::uint32_t>(b[at + 2]) << 16) |
         (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

bool tag_is(std::span<const std::uint8_t> b, std::size_t at, const char* tag) {
  return std::memcmp(b.data() + at, tag, 4) == 0;
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

void put_tag(std::vector<std::uint8_t>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

}  // namespace

AudioSegment wav_parse(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12 || !tag_is(bytes, 0, "RIFF") || !tag_is(bytes, 8, "WAVE")) {
    throw CorruptHeader("wav: missing RIFF/WAVE header");
  }

  bool have_fmt = false;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits_per_sample = 0;
  std::uint16_t block_align = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint32_t size = read_u32(bytes, pos + 4);
    const std::size_t body = pos + 8;
    if (size > bytes.size() - body) {
      throw CorruptHeader("wav: chunk extends past end of file");
    }
    if (tag_is(bytes, pos, "fmt ")) {
      if (size < 16) throw CorruptHeader("wav: fmt chunk too short");
      std::uint16_t format = read_u16(bytes, body);
      channels = read_u16(bytes, body + 2);
      sample_rate = read_u32(bytes, body + 4);
      block_align = read_u16(bytes, body + 12);
      bits_per_sample = read_u16(bytes, body + 14);
      if (format == kFormatExtensible) {
        if (size < 40) throw CorruptHeader("wav: extensible fmt chunk too short");
        format = read_u16(bytes, body + 24);
      }
      if (format != kFormatPcm) throw UnsupportedFormat("wav: only PCM is supported");
      if (bits_per_sample != 16) {
        throw UnsupportedFormat("wav: only 16-bit samples are supported, got " +
                                std::to_string(bits_per_sample));
      }
      if (channels == 0 || sample_rate == 0 || block_align != 2 * channels) {
        throw CorruptHeader("wav: inconsistent fmt fields");
      }
      have_fmt = true;
    } else if (tag_is(bytes, pos, "data")) {
      if (!have_fmt) throw CorruptHeader("wav: data chunk before fmt chunk");
      const std::size_t frames = size / block_align;
      AudioSegment seg;
      seg.sample_rate = sample_rate;
      seg.samples.resize(frames);
      for (std::size_t f = 0; f < frames; ++f) {
        long sum = 0;
        for (std::size_t c = 0; c < channels; ++c) {
          sum += static_cast<std::int16_t>(read_u16(bytes, body + f * block_align + 2 * c));
        }
        seg.samples[f] = static_cast<std::int16_t>(
            std::lround(static_cast<double>(sum) / static_cast<double>(channels)));
      }
      return seg;
    }
    pos = body + size + (size & 1u);
  }
  throw CorruptHeader(have_fmt ? "wav: no data chunk" : "wav: no fmt chunk");
}

std::vector<std::uint8_t> wav_serialize(const AudioSegment& segment) {
  const auto data_bytes = static_cast<std::uint32_t>(segment.samples.size() * 2);
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_bytes);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_bytes);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, kFormatPcm);
  put_u16(out, 1);
  put_u32(out, segment.sample_rate);
  put_u32(out, segment.sample_rate * 2);
  put_u16(out, 2);
  put_u16(out, 16);
  put_tag(out, "data");
  put_u32(out, data_bytes);
  for (std::int16_t s : segment.samples) put_u16(out, static_cast<std::uint16_t>(s));
  return out;
}

AudioSegment wav_read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("wav: cannot open " + path.string());
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
  return wav_parse(bytes);
}

void wav_write(const std::filesystem::path& path, const AudioSegment& segment) {
  const std::vector<std::uint8_t> bytes = wav_serialize(segment);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("wav: cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("wav: write failed for " + path.string());
}

Bits audio_to_bits(const AudioSegment& segment) {
  Bits bits(segment.samples.size() * 16);
  for (std::size_t i = 0; i < segment.samples.size(); ++i) {
    const auto word = static_cast<std::uint16_t>(segment.samples[i]);
    for (std::size_t b = 0; b < 16; ++b) bits[i * 16 + b] = (word >> b) & 1u;
  }
  return bits;
}

AudioSegment bits_to_audio(BitView bits, std::uint32_t sample_rate) {
  if (bits.size() % 16 != 0) throw BadLength("bits_to_audio: bit count is not a multiple of 16");
  AudioSegment seg;
  seg.sample_rate = sample_rate;
  seg.samples.resize(bits.size() / 16);
  for (std::size_t i = 0; i < seg.samples.size(); ++i) {
    std::uint16_t word = 0;
    for (std::size_t b = 0; b < 16; ++b) {
      word = static_cast<std::uint16_t>(word | ((bits[i * 16 + b] & 1u) << b));
    }
    seg.samples[i] = static_cast<std::int16_t>(word);
  }
  return seg;
}

AudioSegment make_chirp(std::uint32_t sample_rate, double seconds, double f0_hz, double f1_hz,
                        double amplitude) {
  AudioSegment seg;
  seg.sample_rate = sample_rate;
  const auto count = static_cast<std::size_t>(std::llround(seconds * sample_rate));
  seg.samples.resize(count);
  const double sweep = (f1_hz - f0_hz) / seconds;
  const double peak = amplitude * std::numeric_limits<std::int16_t>::max();
  for (std::size_t i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / sample_rate;
    const double phase = 2.0 * std::numbers::pi * (f0_hz * t + 0.5 * sweep * t * t);
    seg.samples[i] = static_cast<std::int16_t>(std::lround(peak * std::sin(phase)));
  }
  return seg;
}

AudioLinkReport run_audio_link(const AudioSegment& segment, const sim::LinkProfile& profile,
                               double snr_db, std::uint64_t seed) {
  const Bits sent = audio_to_bits(segment);
  const std::vector<std::complex<double>> samples = sim::transmit(sent, profile);
  const channel::ChannelOutput out =
      channel::apply_channel(samples, sim::channel_config_for(profile, snr_db), seed);
  const Bits got = sim::receive(out.samples, out.realizations, profile, sent.size());

  AudioLinkReport report;
  report.received = bits_to_audio(got, segment.sample_rate);
  report.bits = sent.size();
  report.bit_errors = count_bit_errors(sent, got);
  report.ber = report.bits == 0 ? 0.0 : static_cast<double>(report.bit_errors) / report.bits;

  double signal = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i < segment.samples.size(); ++i) {
    const double x = segment.samples[i];
    const double d = x - report.received.samples[i];
    signal += x * x;
    error += d * d;
  }
  report.reconstruction_snr_db = error == 0.0 ? std::numeric_limits<double>::infinity()
                                              : 10.0 * std::log10(signal / error);
  return report;
}

}  // namespace wimax::audio
