#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "wimax/errors.hpp"
#include "wimax/ofdm.hpp"

using namespace wimax;
using namespace wimax::ofdm;

namespace {

std::vector<Complex> random_qpsk(std::mt19937& rng, std::size_t n) {
  std::bernoulli_distribution coin(0.5);
  const double a = std::sqrt(0.5);
  std::vector<Complex> s(n);
  for (auto& x : s) x = Complex(coin(rng) ? a : -a, coin(rng) ? a : -a);
  return s;
}

std::vector<Complex> random_gaussian(std::mt19937& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<Complex> s(n);
  for (auto& x : s) x = Complex(g(rng), g(rng));
  return s;
}

double energy(std::span<const Complex> v) {
  double e = 0.0;
  for (const auto& x : v) e += std::norm(x);
  return e;
}

}  // namespace

TEST_CASE("default numerology") {
  const OfdmParams p;
  CHECK(p.fft_size == 256);
  CHECK(p.num_data() == 192);
  CHECK(p.cp_len() == 64);
  CHECK(p.block_length() == 320);
  CHECK(p.cp_ratio() == "1/4");
  CHECK(p.data_carriers.front() == -96);
  CHECK(p.data_carriers.back() == 96);
  CHECK(std::find(p.data_carriers.begin(), p.data_carriers.end(), 0) == p.data_carriers.end());
  OfdmParams bad;
  bad.data_carriers.push_back(0);
  CHECK_THROWS(bad.validate());
  bad = OfdmParams{};
  bad.cp_divisor = 3;
  CHECK_THROWS(bad.validate());
}

TEST_CASE("zero symbols give a zero block") {
  const OfdmParams p;
  const auto t = ofdm_modulate(std::vector<Complex>(p.num_data()), p);
  CHECK(t.size() == p.block_length());
  CHECK(energy(t) == 0.0);
}

TEST_CASE("single carrier is a sampled complex exponential") {
  const OfdmParams p;
  const int n_fft = p.fft_size;
  for (std::size_t idx : {std::size_t{0}, std::size_t{95}, std::size_t{96}, std::size_t{191}}) {
    const int k = p.data_carriers[idx];
    std::vector<Complex> s(p.num_data());
    s[idx] = 1.0;
    const auto t = ofdm_modulate(s, p);
    for (int n = 0; n < n_fft; ++n) {
      const double angle = 2.0 * std::numbers::pi * k * n / n_fft;
      const Complex expect = std::polar(1.0 / std::sqrt(static_cast<double>(n_fft)), angle);
      REQUIRE(std::abs(t[static_cast<std::size_t>(p.cp_len() + n)] - expect) < 1e-12);
    }
    for (int n = 0; n < p.cp_len(); ++n) {
      REQUIRE(t[static_cast<std::size_t>(n)] == t[static_cast<std::size_t>(n + n_fft)]);
    }
  }
}

TEST_CASE("modulator agrees with a direct inverse DFT") {
  OfdmParams p;
  p.fft_size = 64;
  p.data_carriers = OfdmParams::symmetric_carriers(48);
  p.cp_divisor = 8;
  std::mt19937 rng(3);
  const auto s = random_gaussian(rng, 48);
  std::vector<Complex> grid(64);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const int k = p.data_carriers[i];
    grid[static_cast<std::size_t>(k < 0 ? k + 64 : k)] = s[i];
  }
  const auto ref = oracle::dft(grid, +1);
  const auto t = ofdm_modulate(s, p);
  for (std::size_t n = 0; n < 64; ++n) REQUIRE(std::abs(t[8 + n] - ref[n]) < 1e-12);
}

TEST_CASE("Parseval and roundtrip") {
  const OfdmParams p;
  std::mt19937 rng(4);
  const auto s = random_qpsk(rng, p.num_data() * 53);
  const auto t = ofdm_modulate(s, p);
  REQUIRE(t.size() == 53 * p.block_length());
  double core = 0.0;
  for (std::size_t b = 0; b < 53; ++b) {
    core += energy(std::span<const Complex>(t).subspan(b * p.block_length() + 64, 256));
  }
  CHECK(std::abs(core - energy(s)) / energy(s) < 1e-9);

  const auto back = ofdm_demodulate(t, p);
  REQUIRE(back.size() == s.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) worst = std::max(worst, std::abs(back[i] - s[i]));
  CHECK(worst < 1e-9);
}

TEST_CASE("cyclic prefix copies the block tail") {
  const OfdmParams p;
  std::mt19937 rng(5);
  const auto t = ofdm_modulate(random_qpsk(rng, p.num_data() * 4), p);
  for (std::size_t b = 0; b < 4; ++b) {
    const std::size_t base = b * p.block_length();
    for (std::size_t n = 0; n < 64; ++n) REQUIRE(t[base + n] == t[base + 256 + n]);
  }
}

TEST_CASE("transform is linear") {
  const OfdmParams p;
  std::mt19937 rng(6);
  const auto a = random_gaussian(rng, p.num_data() * 2);
  const auto b = random_gaussian(rng, p.num_data() * 2);
  std::vector<Complex> ab(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) ab[i] = a[i] + b[i];
  OfdmModem modem(p);
  const auto ta = modem.modulate(a);
  const auto tb = modem.modulate(b);
  const auto tab = modem.modulate(ab);
  for (std::size_t i = 0; i < tab.size(); ++i) REQUIRE(std::abs(tab[i] - ta[i] - tb[i]) < 1e-9);
}

TEST_CASE("a shift inside the cyclic prefix is a per-carrier phase ramp") {
  const OfdmParams p;
  std::mt19937 rng(7);
  const auto s = random_qpsk(rng, p.num_data());
  const auto t = ofdm_modulate(s, p);
  // receiver window starts d samples early, still inside the prefix
  const int d = 10;
  std::vector<Complex> early(t.size());
  for (std::size_t i = d; i < t.size(); ++i) early[i] = t[i - d];
  const auto r = ofdm_demodulate(early, p);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const int k = p.data_carriers[i];
    const Complex ramp = std::polar(1.0, -2.0 * std::numbers::pi * k * d / p.fft_size);
    REQUIRE(std::abs(std::abs(r[i]) - std::abs(s[i])) < 1e-9);
    REQUIRE(std::abs(r[i] - s[i] * ramp) < 1e-9);
  }
}

TEST_CASE("empty input and misaligned lengths") {
  const OfdmParams p;
  CHECK(ofdm_modulate(std::vector<Complex>{}, p).empty());
  CHECK(ofdm_demodulate(std::vector<Complex>{}, p).empty());
  CHECK_THROWS_AS(ofdm_modulate(std::vector<Complex>(191), p), BadLength);
  CHECK_THROWS_AS(ofdm_demodulate(std::vector<Complex>(321), p), BadLength);
}

TEST_CASE("modem is movable") {
  OfdmModem a{OfdmParams{}};
  OfdmModem b = std::move(a);
  std::vector<Complex> s(192, Complex(1, 0));
  CHECK(b.demodulate(b.modulate(s)).size() == 192);
}
