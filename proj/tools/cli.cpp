#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "wimax/audio_io.hpp"
#include "wimax/errors.hpp"

namespace wimax::cli {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

double to_double(const std::string& text, const std::string& flag) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError(flag + ": '" + text + "' is not a number");
  }
}

template <class T, class Parser>
std::vector<T> parse_selection(const std::string& text, const std::string& flag,
                               std::span<const T> all, Parser parser) {
  if (text == "all") return {all.begin(), all.end()};
  std::vector<T> picked;
  for (const std::string& name : split(text, ',')) {
    const auto value = parser(name);
    if (!value) throw UsageError(flag + ": unsupported value '" + name + "'");
    if (std::find(picked.begin(), picked.end(), *value) == picked.end()) picked.push_back(*value);
  }
  if (picked.empty()) throw UsageError(flag + ": empty selection");
  return picked;
}

std::optional<fec::CodeRate> parse_rate(std::string_view name) {
  if (name == "1/2") return fec::CodeRate::Half;
  if (name == "2/3") return fec::CodeRate::TwoThirds;
  return std::nullopt;
}

constexpr fec::CodeRate kAllRates[] = {fec::CodeRate::Half, fec::CodeRate::TwoThirds};

}  // namespace

std::vector<double> parse_snr_list(const std::string& text) {
  const std::string flag = "--snr";
  std::vector<double> points;
  if (text.find(':') != std::string::npos) {
    const std::vector<std::string> parts = split(text, ':');
    if (parts.size() != 3) throw UsageError(flag + ": range must be start:stop:step");
    const double start = to_double(parts[0], flag);
    const double stop = to_double(parts[1], flag);
    const double step = to_double(parts[2], flag);
    if (!(step > 0.0) || stop < start) {
      throw UsageError(flag + ": range needs step > 0 and stop >= start");
    }
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) {
      // Rounded to 1e-9 dB so 0.1-style steps print cleanly.
      points.push_back(std::round((start + static_cast<double>(i) * step) * 1e9) / 1e9);
    }
  } else {
    for (const std::string& item : split(text, ',')) points.push_back(to_double(item, flag));
  }
  if (points.empty()) throw UsageError(flag + ": no SNR values");
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i] > points[i - 1])) throw UsageError(flag + ": values must be strictly increasing");
  }
  return points;
}

std::vector<sim::LinkProfile> CliConfig::profiles() const {
  std::vector<sim::LinkProfile> out;
  for (channel::ChannelKind kind : channels) {
    for (modem::Scheme scheme : modulations) {
      for (fec::CodeRate rate : rates) {
        sim::LinkProfile p = sim::LinkProfile::make(scheme, rate, kind, constraint_length);
        p.conv_interleaver = conv_interleaver;
        p.ofdm.fft_size = fft_size;
        p.ofdm.data_carriers = ofdm::OfdmParams::symmetric_carriers(data_carriers);
        p.ofdm.cp_divisor = cp_divisor;
        const int bits = data_carriers * p.bits_per_symbol();
        p.block_interleaver.rows = block_rows;
        p.block_interleaver.cols = bits / block_rows;
        p.channel.snr_mode = snr_mode;
        p.channel.rician_k_db = rician_k_db;
        p.coding_enabled = coding_enabled;
        out.push_back(std::move(p));
      }
    }
  }
  return out;
}

sim::SweepPlan CliConfig::plan() const {
  sim::SweepPlan plan;
  plan.profiles = profiles();
  plan.snr_points = snr_db;
  plan.stop_rule = stop_rule;
  plan.base_seed = seed;
  return plan;
}

CliConfig parse_args(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());
  return parse_args(static_cast<int>(argv.size()), argv.data());
}

CliConfig parse_args(int argc, const char* const* argv) {
  CLI::App app{"Baseband WiMAX-style OFDM link simulator with a Monte Carlo BER harness",
               "wimaxsim"};
  app.set_config("--config", "", "key=value configuration file (flags take precedence)");
  app.require_subcommand(1, 1);
  app.fallthrough();

  auto* sweep = app.add_subcommand("sweep", "BER over profiles x SNR points");
  auto* point = app.add_subcommand("point", "BER at a single SNR");
  auto* audio = app.add_subcommand("audio", "Send a WAV file through the link");
  auto* selftest = app.add_subcommand("selftest", "Noiseless full-matrix roundtrip and field checks");

  std::string modulation = "all";
  std::string rate = "all";
  std::string channel_name = "all";
  std::string conv_il = "12x17";
  std::string snr = "0:25:1";
  std::string snr_mode = "es";
  std::string cp_ratio = "1/4";
  std::string format = "csv";
  bool uncoded = false;
  CliConfig cfg;
  cfg.workers = std::max(1u, std::thread::hardware_concurrency());

  app.add_option("--modulation", modulation, "bpsk,qpsk,4qam,16qam or all");
  app.add_option("--rate", rate, "convolutional code rate: 1/2, 2/3 or all");
  app.add_option("--channel", channel_name, "awgn,rayleigh,rician or all");
  app.add_option("--constraint-length", cfg.constraint_length, "3, 5 or 7")
      ->check(CLI::IsMember({3, 5, 7}));
  app.add_option("--conv-interleaver", conv_il, "branches x delay step, e.g. 12x17");
  app.add_option("--block-rows", cfg.block_rows, "block interleaver rows")->check(CLI::PositiveNumber);
  app.add_option("--fft-size", cfg.fft_size, "OFDM FFT size")->check(CLI::Range(8, 65536));
  app.add_option("--data-carriers", cfg.data_carriers, "data subcarrier count (even)")
      ->check(CLI::PositiveNumber);
  app.add_option("--cp-ratio", cp_ratio, "cyclic prefix ratio: 1/4, 1/8, 1/16, 1/32");
  app.add_flag("--uncoded", uncoded, "bypass RS, interleavers and convolutional coding");
  app.add_option("--snr", snr, "SNR in dB: start:stop:step, comma list, or single value");
  app.add_option("--snr-mode", snr_mode, "es (per channel sample) or eb (per information bit)");
  app.add_option("--rician-k-db", cfg.rician_k_db, "Rician K-factor in dB");
  app.add_option("--seed", cfg.seed, "base seed");
  app.add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--max-bits", cfg.stop_rule.max_info_bits, "information bit budget per point");
  app.add_option("--min-errors", cfg.stop_rule.min_errors, "stop a point after this many errors");
  app.add_option("-o,--output", cfg.output, "output path, - for stdout");
  app.add_option("--format", format, "csv or jsonl");
  app.add_flag("--timing", cfg.timing, "record wall-clock elapsed_s (output no longer reproducible)");
  app.add_flag("--progress", cfg.progress, "report finished points on stderr");
  app.add_option("--input", cfg.input_wav, "audio: input WAV file");
  app.add_option("--output-wav", cfg.output_wav, "audio: reconstructed WAV file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (sweep->parsed()) cfg.subcommand = Subcommand::Sweep;
  if (point->parsed()) cfg.subcommand = Subcommand::Point;
  if (audio->parsed()) cfg.subcommand = Subcommand::Audio;
  if (selftest->parsed()) cfg.subcommand = Subcommand::Selftest;

  auto given = [&](const char* name) { return app.get_option(name)->count() > 0; };
  if (cfg.subcommand == Subcommand::Audio) {
    if (!given("--modulation")) modulation = "bpsk";
    if (!given("--rate")) rate = "1/2";
    if (!given("--channel")) channel_name = "awgn";
    if (!given("--snr")) snr = "15";
  }
  if (cfg.subcommand == Subcommand::Point && !given("--snr")) {
    throw UsageError("--snr: point requires a single SNR value");
  }

  cfg.modulations = parse_selection<modem::Scheme>(modulation, "--modulation", modem::kAllSchemes,
                                                   modem::parse_scheme);
  cfg.rates = parse_selection<fec::CodeRate>(rate, "--rate", kAllRates, parse_rate);
  cfg.channels = parse_selection<channel::ChannelKind>(channel_name, "--channel",
                                                       channel::kAllChannels, channel::parse_channel);
  cfg.snr_db = parse_snr_list(snr);
  cfg.coding_enabled = !uncoded;

  const auto mode = channel::parse_snr_mode(snr_mode);
  if (!mode) throw UsageError("--snr-mode: expected es or eb, got '" + snr_mode + "'");
  cfg.snr_mode = *mode;

  const std::vector<std::string> il = split(conv_il, 'x');
  if (il.size() != 2) throw UsageError("--conv-interleaver: expected BxM, got '" + conv_il + "'");
  try {
    cfg.conv_interleaver.branches = std::stoi(il[0]);
    cfg.conv_interleaver.delay_step = std::stoi(il[1]);
  } catch (const std::exception&) {
    throw UsageError("--conv-interleaver: expected BxM, got '" + conv_il + "'");
  }
  if (cfg.conv_interleaver.branches < 1 || cfg.conv_interleaver.delay_step < 0) {
    throw UsageError("--conv-interleaver: need B >= 1 and M >= 0");
  }

  if (cp_ratio == "1/4") cfg.cp_divisor = 4;
  else if (cp_ratio == "1/8") cfg.cp_divisor = 8;
  else if (cp_ratio == "1/16") cfg.cp_divisor = 16;
  else if (cp_ratio == "1/32") cfg.cp_divisor = 32;
  else throw UsageError("--cp-ratio: unsupported ratio '" + cp_ratio + "'");

  if (cfg.data_carriers % 2 != 0 || cfg.data_carriers >= cfg.fft_size) {
    throw UsageError("--data-carriers: must be even and smaller than --fft-size");
  }
  if (cfg.fft_size % cfg.cp_divisor != 0) {
    throw UsageError("--cp-ratio: prefix length must be an integer number of samples");
  }
  for (modem::Scheme s : cfg.modulations) {
    const int bits = cfg.data_carriers * modem::Constellation::get(s).bits_per_symbol;
    if (bits % cfg.block_rows != 0) {
      throw UsageError("--block-rows: must divide the coded bits per OFDM symbol (" +
                       std::to_string(bits) + ")");
    }
  }

  if (format == "csv") cfg.format = OutputFormat::Csv;
  else if (format == "jsonl") cfg.format = OutputFormat::Jsonl;
  else throw UsageError("--format: expected csv or jsonl, got '" + format + "'");

  if (cfg.stop_rule.max_info_bits < static_cast<std::uint64_t>(fec::RsParams{}.k) * 8) {
    throw UsageError("--max-bits: must cover at least one RS block (1912 bits)");
  }
  if (cfg.subcommand == Subcommand::Point && cfg.snr_db.size() != 1) {
    throw UsageError("--snr: point requires a single SNR value");
  }
  if (cfg.subcommand == Subcommand::Audio) {
    if (cfg.input_wav.empty()) throw UsageError("--input: audio requires an input WAV file");
    if (cfg.snr_db.size() != 1 || cfg.modulations.size() != 1 || cfg.rates.size() != 1 ||
        cfg.channels.size() != 1) {
      throw UsageError("--modulation/--rate/--channel/--snr: audio runs exactly one profile at one SNR");
    }
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// Record emission

const std::vector<std::string> kCsvColumns = {
    "modulation", "cc_rate",           "constraint_length", "channel",  "rician_k_db",
    "snr_mode",   "snr_db",            "rs_n",              "rs_k",     "conv_interleaver",
    "block_interleaver", "fft_size",   "cp_ratio",          "coding_enabled", "bits_sent",
    "bit_errors", "ber",               "seed",              "elapsed_s"};

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  std::string s(buf);
  const std::size_t e = s.find('e');
  if (e == std::string::npos) return s;
  std::string mantissa = s.substr(0, e);
  std::string exponent = s.substr(e + 1);
  std::string sign;
  if (exponent[0] == '-' || exponent[0] == '+') {
    if (exponent[0] == '-') sign = "-";
    exponent.erase(0, 1);
  }
  exponent.erase(0, std::min(exponent.find_first_not_of('0'), exponent.size() - 1));
  return mantissa + "e" + sign + exponent;
}

namespace {

nlohmann::ordered_json record_json(const sim::BerRecord& r, bool timing) {
  const sim::LinkProfile& p = r.profile;
  nlohmann::ordered_json j;
  j["modulation"] = modem::to_string(p.modulation);
  j["cc_rate"] = p.rate_label();
  j["constraint_length"] = p.conv.constraint_length;
  j["channel"] = channel::to_string(p.channel.kind);
  j["rician_k_db"] = p.channel.rician_k_db;
  j["snr_mode"] = channel::to_string(p.channel.snr_mode);
  j["snr_db"] = r.snr_db;
  j["rs_n"] = p.rs.n;
  j["rs_k"] = p.rs.k;
  j["conv_interleaver"] = p.conv_interleaver.describe();
  j["block_interleaver"] = p.block_interleaver.describe();
  j["fft_size"] = p.ofdm.fft_size;
  j["cp_ratio"] = p.ofdm.cp_ratio();
  j["coding_enabled"] = p.coding_enabled;
  j["bits_sent"] = r.bits_sent;
  j["bit_errors"] = r.bit_errors;
  j["ber"] = r.ber;
  j["seed"] = r.seed;
  j["elapsed_s"] = timing ? r.elapsed_s : 0.0;
  return j;
}

void write_csv_row(const sim::BerRecord& r, std::ostream& out, bool timing) {
  const sim::LinkProfile& p = r.profile;
  out << modem::to_string(p.modulation) << ',' << p.rate_label() << ','
      << p.conv.constraint_length << ',' << channel::to_string(p.channel.kind) << ','
      << format_number(p.channel.rician_k_db) << ',' << channel::to_string(p.channel.snr_mode)
      << ',' << format_number(r.snr_db) << ',' << p.rs.n << ',' << p.rs.k << ','
      << p.conv_interleaver.describe() << ',' << p.block_interleaver.describe() << ','
      << p.ofdm.fft_size << ',' << p.ofdm.cp_ratio() << ','
      << (p.coding_enabled ? "true" : "false") << ',' << r.bits_sent << ',' << r.bit_errors
      << ',' << format_number(r.ber) << ',' << r.seed << ','
      << format_number(timing ? r.elapsed_s : 0.0) << '\n';
}

}  // namespace

void emit_records(std::span<const sim::BerRecord> records, OutputFormat format, std::ostream& out,
                  bool timing) {
  if (format == OutputFormat::Csv) {
    for (std::size_t i = 0; i < kCsvColumns.size(); ++i) {
      out << (i ? "," : "") << kCsvColumns[i];
    }
    out << '\n';
    for (const sim::BerRecord& r : records) write_csv_row(r, out, timing);
  } else {
    for (const sim::BerRecord& r : records) out << record_json(r, timing).dump() << '\n';
  }
}

void emit_records(std::span<const sim::BerRecord> records, OutputFormat format,
                  const std::string& path, bool timing) {
  if (path == "-") {
    emit_records(records, format, std::cout, timing);
    std::cout.flush();
    if (!std::cout) throw IoError("emit_records: write to stdout failed");
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("emit_records: cannot open '" + path + "' for writing");
  emit_records(records, format, file, timing);
  file.flush();
  if (!file) throw IoError("emit_records: write to '" + path + "' failed");
}

// ---------------------------------------------------------------------------
// Execution

int run(const CliConfig& config, std::ostream& out, std::ostream& err) {
  try {
    switch (config.subcommand) {
      case Subcommand::Selftest:
        return run_selftest(out) ? 0 : 2;

      case Subcommand::Audio: {
        const sim::LinkProfile profile = config.profiles().front();
        const audio::AudioSegment input = audio::wav_read(config.input_wav);
        const audio::AudioLinkReport report =
            audio::run_audio_link(input, profile, config.snr_db.front(), config.seed);
        if (!config.output_wav.empty()) audio::wav_write(config.output_wav, report.received);
        out << "samples " << input.samples.size() << '\n'
            << "bits " << report.bits << '\n'
            << "bit_errors " << report.bit_errors << '\n'
            << "ber " << format_number(report.ber) << '\n'
            << "reconstruction_snr_db " << format_number(report.reconstruction_snr_db) << '\n';
        return 0;
      }

      case Subcommand::Sweep:
      case Subcommand::Point: {
        sim::ProgressFn progress;
        if (config.progress) {
          progress = [&err](const sim::BerRecord& r, std::size_t done, std::size_t total) {
            err << '[' << done << '/' << total << "] " << modem::to_string(r.profile.modulation)
                << ' ' << r.profile.rate_label() << ' ' << channel::to_string(r.profile.channel.kind)
                << " snr=" << format_number(r.snr_db) << " ber=" << format_number(r.ber) << '\n';
          };
        }
        const std::vector<sim::BerRecord> records =
            sim::run_sweep(config.plan(), config.workers, progress);
        if (config.output == "-") {
          emit_records(records, config.format, out, config.timing);
        } else {
          emit_records(records, config.format, config.output, config.timing);
        }
        return 0;
      }
    }
  } catch (const std::exception& e) {
    err << "wimaxsim: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace wimax::cli
