#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "wimax/simulator.hpp"

namespace wimax::cli {

enum class Subcommand { Sweep, Point, Audio, Selftest };
enum class OutputFormat { Csv, Jsonl };

// Bad flag or flag value; the message names the flag. Exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// --help; carries the rendered help text. Exit code 0.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CliConfig {
  Subcommand subcommand = Subcommand::Sweep;

  std::vector<modem::Scheme> modulations;
  std::vector<fec::CodeRate> rates;
  std::vector<channel::ChannelKind> channels;
  int constraint_length = 7;
  interleave::ConvInterleaverParams conv_interleaver{};
  int block_rows = 16;
  int fft_size = 256;
  int data_carriers = 192;
  int cp_divisor = 4;
  bool coding_enabled = true;

  std::vector<double> snr_db;
  channel::SnrMode snr_mode = channel::SnrMode::PerSymbolEs;
  double rician_k_db = 6.0;

  std::uint64_t seed = 1;
  unsigned workers = 1;
  sim::StopRule stop_rule{};

  std::string output = "-";  // "-" is stdout
  OutputFormat format = OutputFormat::Csv;
  bool timing = false;
  bool progress = false;

  std::string input_wav;
  std::string output_wav;

  // Channel-major, then modulation, then rate.
  std::vector<sim::LinkProfile> profiles() const;
  sim::SweepPlan plan() const;
};

// Flags override a --config key=value file, which overrides defaults.
// Throws UsageError or HelpRequested.
CliConfig parse_args(int argc, const char* const* argv);
CliConfig parse_args(const std::vector<std::string>& args);  // args[0] is the program name

// "a:b:step" (inclusive), "a,b,c", or a single value.
std::vector<double> parse_snr_list(const std::string& text);

// 6 significant digits; exponents without '+' or leading zeros (3.5303e-5).
std::string format_number(double value);

extern const std::vector<std::string> kCsvColumns;

// CSV with a header row, or one JSON object per line keyed by the CSV
// columns. elapsed_s is written as 0 unless `timing` is set, so identical
// configurations produce identical bytes.
void emit_records(std::span<const sim::BerRecord> records, OutputFormat format, std::ostream& out,
                  bool timing = false);
// Throws IoError when `path` cannot be written; "-" writes to stdout.
void emit_records(std::span<const sim::BerRecord> records, OutputFormat format,
                  const std::string& path, bool timing = false);

// Noiseless roundtrip of every profile in the modulation x rate x channel
// matrix plus the field axiom checks. Returns true when everything passes.
bool run_selftest(std::ostream& out);

// Executes a parsed configuration. Returns the process exit code:
// 0 success, 1 usage, 2 runtime failure.
int run(const CliConfig& config, std::ostream& out, std::ostream& err);

}  // namespace wimax::cli
