#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "wimax/audio_io.hpp"
#include "wimax/errors.hpp"

using namespace wimax;
using namespace wimax::audio;

namespace {

void put16(std::vector<std::uint8_t>& v, unsigned x) {
  v.push_back(static_cast<std::uint8_t>(x & 0xFF));
  v.push_back(static_cast<std::uint8_t>((x >> 8) & 0xFF));
}

void put32(std::vector<std::uint8_t>& v, std::uint32_t x) {
  put16(v, x & 0xFFFF);
  put16(v, x >> 16);
}

void tag(std::vector<std::uint8_t>& v, const char* t) { v.insert(v.end(), t, t + 4); }

// Canonical 44-byte-header WAV built by hand. `data_size` may lie.
std::vector<std::uint8_t> build_wav(unsigned channels, unsigned bits, std::uint32_t rate,
                                    const std::vector<std::uint8_t>& payload,
                                    std::uint32_t data_size) {
  std::vector<std::uint8_t> v;
  tag(v, "RIFF");
  put32(v, 36 + static_cast<std::uint32_t>(payload.size()));
  tag(v, "WAVE");
  tag(v, "fmt ");
  put32(v, 16);
  put16(v, 1);
  put16(v, channels);
  put32(v, rate);
  put32(v, rate * channels * bits / 8);
  put16(v, channels * bits / 8);
  put16(v, bits);
  tag(v, "data");
  put32(v, data_size);
  v.insert(v.end(), payload.begin(), payload.end());
  return v;
}

std::filesystem::path temp_path(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("serialize layout") {
  const AudioSegment seg{8000, {1, -2}};
  const auto bytes = wav_serialize(seg);
  REQUIRE(bytes.size() == 48);
  const std::vector<std::uint8_t> ref = build_wav(1, 16, 8000, {1, 0, 0xFE, 0xFF}, 4);
  CHECK(bytes == ref);
}

TEST_CASE("440 Hz tone roundtrip through a file") {
  AudioSegment tone;
  tone.sample_rate = 16000;
  for (int n = 0; n < 16000; ++n) {
    tone.samples.push_back(static_cast<std::int16_t>(
        std::lround(12000.0 * std::sin(2.0 * 3.141592653589793 * 440.0 * n / 16000.0))));
  }
  const auto path = temp_path("wimax_tone_test.wav");
  wav_write(path, tone);
  CHECK(wav_read(path) == tone);
  std::filesystem::remove(path);
}

TEST_CASE("format and header errors") {
  CHECK_THROWS_AS(wav_parse(build_wav(1, 8, 8000, {128, 129}, 2)), UnsupportedFormat);

  const auto truncated = build_wav(1, 16, 8000, {1, 0, 2, 0}, 4000);
  CHECK_THROWS_AS(wav_parse(truncated), CorruptHeader);

  auto not_pcm = build_wav(1, 16, 8000, {0, 0}, 2);
  not_pcm[20] = 3;  // IEEE float
  CHECK_THROWS_AS(wav_parse(not_pcm), UnsupportedFormat);

  const std::vector<std::uint8_t> junk{'R', 'I', 'F', 'X', 0, 0, 0, 0, 'W', 'A', 'V', 'E'};
  CHECK_THROWS_AS(wav_parse(junk), CorruptHeader);
  CHECK_THROWS_AS(wav_read(temp_path("wimax_definitely_missing.wav")), IoError);
}

TEST_CASE("stereo is downmixed by averaging") {
  std::vector<std::uint8_t> payload;
  for (int s : {100, 201, -3, -4, 32767, 32767}) put16(payload, static_cast<std::uint16_t>(s));
  const AudioSegment seg = wav_parse(build_wav(2, 16, 8000, payload, 12));
  CHECK(seg.samples == std::vector<std::int16_t>{151, -4, 32767});
}

TEST_CASE("unknown chunks are skipped") {
  auto wav = build_wav(1, 16, 8000, {7, 0}, 2);
  std::vector<std::uint8_t> list;
  tag(list, "LIST");
  put32(list, 3);
  list.insert(list.end(), {'a', 'b', 'c', 0});  // odd size plus pad byte
  wav.insert(wav.begin() + 36, list.begin(), list.end());
  CHECK(wav_parse(wav).samples == std::vector<std::int16_t>{7});
}

TEST_CASE("sample to bit serialization") {
  CHECK(audio_to_bits(AudioSegment{8000, {0}}) == Bits(16, 0));
  CHECK(audio_to_bits(AudioSegment{8000, {-1}}) == Bits(16, 1));
  // 0x0102: low byte 0x02 first, LSB first within each byte
  const Bits expect{0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0};
  CHECK(audio_to_bits(AudioSegment{8000, {0x0102}}) == expect);

  std::mt19937 rng(8);
  std::uniform_int_distribution<int> sample(-32768, 32767);
  AudioSegment seg;
  for (int i = 0; i < 1000; ++i) seg.samples.push_back(static_cast<std::int16_t>(sample(rng)));
  CHECK(bits_to_audio(audio_to_bits(seg), seg.sample_rate) == seg);
  CHECK_THROWS_AS(bits_to_audio(Bits(15, 0), 8000), BadLength);
}

TEST_CASE("shipped chirp fixture matches the generator") {
  const AudioSegment fixture = wav_read(WIMAX_CHIRP_FIXTURE);
  CHECK(fixture.sample_rate == 8000);
  CHECK(fixture.samples.size() == 16000);
  CHECK(fixture == make_chirp(8000, 2.0, 200.0, 3000.0));
}

TEST_CASE("audio link is exact at high SNR") {
  const AudioSegment seg = make_chirp(8000, 0.25, 300.0, 1200.0);
  const auto p = sim::LinkProfile::make(modem::Scheme::Bpsk, fec::CodeRate::Half,
                                        channel::ChannelKind::Awgn);
  const AudioLinkReport r = run_audio_link(seg, p, 15.0, 1);
  CHECK(r.received == seg);
  CHECK(r.bit_errors == 0);
  CHECK(r.bits == 16u * seg.samples.size());
  CHECK(std::isinf(r.reconstruction_snr_db));
}
