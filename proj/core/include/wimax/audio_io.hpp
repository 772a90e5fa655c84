#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "wimax/bits.hpp"
#include "wimax/simulator.hpp"

namespace wimax::audio {

// Mono 16-bit PCM.
struct AudioSegment {
  std::uint32_t sample_rate = 8000;
  std::vector<std::int16_t> samples;

  friend bool operator==(const AudioSegment&, const AudioSegment&) = default;
};

// RIFF/WAVE PCM-16 parsing. Multichannel input is downmixed by averaging
// (rounded to nearest). Throws UnsupportedFormat for non-PCM or non-16-bit
// data and CorruptHeader for malformed or truncated files.
AudioSegment wav_parse(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> wav_serialize(const AudioSegment& segment);

// Throws IoError when the file cannot be opened, otherwise as wav_parse.
AudioSegment wav_read(const std::filesystem::path& path);
void wav_write(const std::filesystem::path& path, const AudioSegment& segment);

// Each sample as 16 bits: low byte first, LSB first within a byte.
Bits audio_to_bits(const AudioSegment& segment);
// Throws BadLength unless bits.size() is a multiple of 16.
AudioSegment bits_to_audio(BitView bits, std::uint32_t sample_rate);

// Linear chirp from f0 to f1 Hz, used for the shipped fixture.
AudioSegment make_chirp(std::uint32_t sample_rate, double seconds, double f0_hz, double f1_hz,
                        double amplitude = 0.5);

struct AudioLinkReport {
  AudioSegment received;
  std::uint64_t bits = 0;
  std::uint64_t bit_errors = 0;
  double ber = 0.0;
  // 10 log10(signal energy / reconstruction error energy); +inf when exact.
  double reconstruction_snr_db = 0.0;
};

// Serializes the segment, runs it through transmit -> channel -> receive at
// `snr_db`, and rebuilds the audio.
AudioLinkReport run_audio_link(const AudioSegment& segment, const sim::LinkProfile& profile,
                               double snr_db, std::uint64_t seed);

}  // namespace wimax::audio
