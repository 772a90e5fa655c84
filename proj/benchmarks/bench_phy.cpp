#include <benchmark/benchmark.h>

#include <random>

#include "wimax/channel.hpp"
#include "wimax/convolutional.hpp"
#include "wimax/gf256.hpp"
#include "wimax/ofdm.hpp"
#include "wimax/reed_solomon.hpp"
#include "wimax/simulator.hpp"

using namespace wimax;

namespace {

Bits random_bits(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Bits b(n);
  for (auto& x : b) x = rng() & 1u;
  return b;
}

void BM_GfMul(benchmark::State& state) {
  const auto& f = gf::GaloisField::standard();
  gf::FieldElement acc = 1;
  for (auto _ : state) {
    for (unsigned a = 1; a < 256; ++a) acc = f.mul(acc, static_cast<gf::FieldElement>(a)) | 1u;
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * 255);
}
BENCHMARK(BM_GfMul);

void BM_RsDecode(benchmark::State& state) {
  const fec::ReedSolomon rs;
  std::mt19937_64 rng(1);
  std::vector<gf::FieldElement> msg(239);
  for (auto& s : msg) s = static_cast<gf::FieldElement>(rng());
  auto word = rs.encode(msg);
  for (int i = 0; i < state.range(0); ++i) word[static_cast<std::size_t>(i * 29)] ^= 0x5A;
  for (auto _ : state) {
    auto copy = word;
    benchmark::DoNotOptimize(rs.decode_in_place(copy));
  }
}
BENCHMARK(BM_RsDecode)->Arg(0)->Arg(4)->Arg(8);

void BM_Viterbi(benchmark::State& state) {
  const auto p = fec::ConvParams::standard(static_cast<int>(state.range(0)));
  const Bits coded = fec::conv_encode(random_bits(2040, 2), p);
  fec::ViterbiDecoder dec(p);
  for (auto _ : state) benchmark::DoNotOptimize(dec.decode(coded));
  state.SetItemsProcessed(state.iterations() * 2040);
}
BENCHMARK(BM_Viterbi)->Arg(3)->Arg(5)->Arg(7);

void BM_OfdmRoundtrip(benchmark::State& state) {
  ofdm::OfdmModem modem{ofdm::OfdmParams{}};
  std::vector<ofdm::Complex> symbols(192 * 16, ofdm::Complex(0.7, -0.7));
  for (auto _ : state) benchmark::DoNotOptimize(modem.demodulate(modem.modulate(symbols)));
  state.SetItemsProcessed(state.iterations() * 16);
}
BENCHMARK(BM_OfdmRoundtrip);

void BM_Frame(benchmark::State& state) {
  const auto profile = sim::LinkProfile::make(static_cast<modem::Scheme>(state.range(0)),
                                              fec::CodeRate::Half, channel::ChannelKind::Rayleigh);
  sim::Transmitter tx(profile);
  sim::Receiver rx(profile);
  const auto cfg = sim::channel_config_for(profile, 6.0);
  const Bits info = random_bits(1912, 3);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const auto out = channel::apply_channel(tx.send(info), cfg, ++seed);
    benchmark::DoNotOptimize(rx.receive(out.samples, out.realizations));
  }
  state.SetItemsProcessed(state.iterations() * 1912);
}
BENCHMARK(BM_Frame)->DenseRange(0, 3);

}  // namespace

BENCHMARK_MAIN();
