#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "wimax/channel.hpp"
#include "wimax/errors.hpp"
#include "wimax/modem.hpp"

using namespace wimax;
using namespace wimax::channel;

namespace {

std::vector<Complex> unit_symbols(std::size_t n, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::bernoulli_distribution coin(0.5);
  const double a = std::sqrt(0.5);
  std::vector<Complex> s(n);
  for (auto& x : s) x = Complex(coin(rng) ? a : -a, coin(rng) ? a : -a);
  return s;
}

std::vector<Complex> gains(ChannelKind kind, double k_db, std::size_t blocks, std::uint64_t seed) {
  ChannelConfig cfg;
  cfg.kind = kind;
  cfg.rician_k_db = k_db;
  cfg.block_length = 1;
  const auto out = apply_channel(std::vector<Complex>(blocks, Complex(1, 0)), cfg, seed);
  std::vector<Complex> h;
  for (const auto& r : out.realizations) h.push_back(r.gain);
  return h;
}

double uncoded_bpsk_ber(ChannelKind kind, double ebn0_db, std::size_t n, std::uint64_t seed) {
  std::mt19937 rng(static_cast<std::uint32_t>(seed));
  std::bernoulli_distribution coin(0.5);
  Bits bits(n);
  for (auto& b : bits) b = coin(rng);
  const auto& c = modem::Constellation::get(modem::Scheme::Bpsk);
  const auto tx = modem::modulate(bits, c);
  ChannelConfig cfg;
  cfg.kind = kind;
  cfg.snr_db = ebn0_db;
  cfg.snr_mode = SnrMode::PerInfoBitEb;
  cfg.block_length = 16;
  const auto out = apply_channel(tx, cfg, seed);
  const auto eq = equalize(out.samples, out.realizations);
  return static_cast<double>(count_bit_errors(bits, modem::demodulate(eq, c))) /
         static_cast<double>(n);
}

}  // namespace

TEST_CASE("noiseless AWGN is the identity") {
  const auto s = unit_symbols(3200, 1);
  ChannelConfig cfg;
  const auto out = apply_channel(s, cfg, 99);
  CHECK(out.samples == s);
  CHECK(out.realizations.size() == 10);
  for (const auto& r : out.realizations) CHECK(r.gain == Complex(1, 0));
  CHECK(cfg.noise_variance() == 0.0);
}

TEST_CASE("noise variance accounting") {
  ChannelConfig cfg;
  cfg.snr_db = 10.0;
  cfg.signal_power = 0.6;
  CHECK(cfg.noise_variance() == doctest::Approx(0.06));
  cfg.snr_mode = SnrMode::PerInfoBitEb;
  cfg.es_per_eb = 2.0;
  CHECK(cfg.noise_variance() == doctest::Approx(0.03));
  cfg.rician_k_db = 0.0;
  CHECK(cfg.rician_k() == doctest::Approx(1.0));
}

TEST_CASE("AWGN at Es/N0 = 0 dB has unit noise-to-signal ratio") {
  const std::size_t n = 1000000;
  const auto s = unit_symbols(n, 2);
  ChannelConfig cfg;
  cfg.snr_db = 0.0;
  cfg.block_length = 1000;
  const auto out = apply_channel(s, cfg, 5);
  double noise = 0.0;
  double signal = 0.0;
  double cross = 0.0;
  double re2 = 0.0;
  double im2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Complex e = out.samples[i] - s[i];
    noise += std::norm(e);
    signal += std::norm(s[i]);
    cross += e.real() * e.imag();
    re2 += e.real() * e.real();
    im2 += e.imag() * e.imag();
  }
  CHECK(std::abs(noise / signal - 1.0) < 0.01);
  CHECK(std::abs(re2 / im2 - 1.0) < 0.01);
  CHECK(std::abs(cross / std::sqrt(re2 * im2)) < 0.01);
}

TEST_CASE("noise is white across consecutive samples") {
  const std::size_t n = 1000000;
  ChannelConfig cfg;
  cfg.snr_db = 0.0;
  cfg.block_length = 500;
  const auto out = apply_channel(std::vector<Complex>(n), cfg, 77);
  double lag = 0.0;
  double power = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    lag += out.samples[i].real() * out.samples[i + 1].real();
    power += out.samples[i].real() * out.samples[i].real();
  }
  CHECK(std::abs(lag / power) < 0.01);
}

TEST_CASE("Rayleigh gain statistics") {
  const auto h = gains(ChannelKind::Rayleigh, 6.0, 10000, 11);
  double p = 0.0;
  for (const auto& g : h) p += std::norm(g);
  CHECK(std::abs(p / static_cast<double>(h.size()) - 1.0) < 0.03);

  // |h| is Rayleigh with E|h|^2 = 1: P(|h| <= r) = 1 - exp(-r^2)
  std::vector<double> mag;
  for (const auto& g : h) mag.push_back(std::abs(g));
  std::sort(mag.begin(), mag.end());
  for (double q : {0.25, 0.5, 0.75}) {
    const double expect = std::sqrt(-std::log(1.0 - q));
    const double got = mag[static_cast<std::size_t>(q * static_cast<double>(mag.size()))];
    CHECK(std::abs(got / expect - 1.0) < 0.05);
  }
}

TEST_CASE("Rician gain statistics") {
  // scatter std is 1/sqrt(K+1) ~ 0.01, so single draws can stray past 2%;
  // the mean and the bulk of the draws may not
  const auto strong = gains(ChannelKind::Rician, 40.0, 1000, 12);
  std::vector<double> dev;
  double mean_mag = 0.0;
  for (const auto& g : strong) {
    dev.push_back(std::abs(std::abs(g) - 1.0));
    mean_mag += std::abs(g);
  }
  std::sort(dev.begin(), dev.end());
  CHECK(std::abs(mean_mag / 1000.0 - 1.0) < 0.02);
  CHECK(dev[949] < 0.02);

  const auto mid = gains(ChannelKind::Rician, 6.0, 20000, 13);
  double p = 0.0;
  double mean_re = 0.0;
  for (const auto& g : mid) {
    p += std::norm(g);
    mean_re += g.real();
  }
  const double k = std::pow(10.0, 0.6);
  CHECK(std::abs(p / static_cast<double>(mid.size()) - 1.0) < 0.03);
  CHECK(std::abs(mean_re / static_cast<double>(mid.size()) - std::sqrt(k / (k + 1))) < 0.02);

  // K = 0 dB is not Rayleigh, but K -> 0 linear is
  std::mt19937_64 a(5);
  std::mt19937_64 b(5);
  CHECK(draw_gain(ChannelKind::Rician, 0.0, a) == draw_gain(ChannelKind::Rayleigh, 0.0, b));
}

TEST_CASE("block fading holds one gain per block") {
  const auto s = unit_symbols(320 * 4, 3);
  ChannelConfig cfg;
  cfg.kind = ChannelKind::Rayleigh;
  const auto out = apply_channel(s, cfg, 21);
  REQUIRE(out.realizations.size() == 4);
  for (std::size_t b = 0; b < 4; ++b) {
    for (std::size_t i = 0; i < 320; ++i) {
      REQUIRE(std::abs(out.samples[b * 320 + i] - out.realizations[b].gain * s[b * 320 + i]) <
              1e-15);
    }
  }
  CHECK(out.realizations[0].gain != out.realizations[1].gain);

  cfg.block_fading = false;
  const auto held = apply_channel(s, cfg, 21);
  for (const auto& r : held.realizations) CHECK(r.gain == held.realizations[0].gain);
}

TEST_CASE("fixed seed gives bit-identical output") {
  const auto s = unit_symbols(320 * 8, 4);
  ChannelConfig cfg;
  cfg.kind = ChannelKind::Rician;
  cfg.snr_db = 3.0;
  const auto a = apply_channel(s, cfg, 1234);
  const auto b = apply_channel(s, cfg, 1234);
  const auto c = apply_channel(s, cfg, 1235);
  CHECK(a.samples == b.samples);
  CHECK(a.samples != c.samples);
  for (std::size_t i = 0; i < a.realizations.size(); ++i) {
    CHECK(a.realizations[i].gain == b.realizations[i].gain);
    CHECK(a.realizations[i].noise_seed == b.realizations[i].noise_seed);
  }
}

TEST_CASE("equalization inverts noiseless fading") {
  const auto s = unit_symbols(320 * 16, 5);
  for (ChannelKind kind : kAllChannels) {
    ChannelConfig cfg;
    cfg.kind = kind;
    const auto out = apply_channel(s, cfg, 31);
    const auto eq = equalize(out.samples, out.realizations);
    for (std::size_t i = 0; i < s.size(); ++i) REQUIRE(std::abs(eq[i] - s[i]) < 1e-9);
  }
}

TEST_CASE("a pure rotation does not change decisions") {
  const auto s = unit_symbols(192, 6);
  const auto& c = modem::Constellation::get(modem::Scheme::Qpsk);
  std::vector<Complex> rotated(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) rotated[i] = s[i] * Complex(0, 1);
  const std::vector<ChannelRealization> r{{Complex(0, 1), 0}};
  CHECK(modem::demodulate(equalize(rotated, r), c) == modem::demodulate(s, c));

  const std::vector<ChannelRealization> unit{{Complex(1, 0), 0}};
  CHECK(equalize(s, unit) == s);
}

TEST_CASE("equalize and apply_channel errors") {
  const std::vector<ChannelRealization> dead{{Complex(1e-13, 0), 0}};
  CHECK_THROWS_AS(equalize(std::vector<Complex>(4), dead), SingularGain);
  const std::vector<ChannelRealization> two(2);
  CHECK_THROWS_AS(equalize(std::vector<Complex>(5), two), BadLength);
  CHECK_THROWS_AS(apply_channel(std::vector<Complex>(321), ChannelConfig{}, 0), BadLength);
  CHECK(apply_channel(std::vector<Complex>{}, ChannelConfig{}, 0).samples.empty());
}

TEST_CASE("Rayleigh is worse than AWGN for uncoded BPSK at 10 dB") {
  const double awgn = uncoded_bpsk_ber(ChannelKind::Awgn, 10.0, 400000, 41);
  const double ray = uncoded_bpsk_ber(ChannelKind::Rayleigh, 10.0, 400000, 41);
  CHECK(ray > awgn);
  // closed forms: Q(sqrt(20)) ~ 3.9e-6 and (1 - sqrt(g/(1+g)))/2 ~ 2.33e-2
  CHECK(ray == doctest::Approx(0.5 * (1.0 - std::sqrt(10.0 / 11.0))).epsilon(0.1));
  CHECK(awgn < 1e-4);
}

TEST_CASE("names") {
  CHECK(to_string(ChannelKind::Rician) == "rician");
  CHECK(to_string(SnrMode::PerInfoBitEb) == "eb");
  CHECK(parse_channel("rayleigh") == ChannelKind::Rayleigh);
  CHECK_FALSE(parse_channel("nakagami").has_value());
  CHECK(parse_snr_mode("es") == SnrMode::PerSymbolEs);
}
