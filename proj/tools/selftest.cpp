#include <ostream>
#include <random>

#include "cli.hpp"
#include "wimax/gf256.hpp"

namespace wimax::cli {

namespace {

unsigned shift_and_add(unsigned a, unsigned b, unsigned poly) {
  unsigned product = 0;
  while (b) {
    if (b & 1u) product ^= a;
    b >>= 1;
    a <<= 1;
    if (a & 0x100u) a ^= poly;
  }
  return product;
}

bool field_checks(std::ostream& out) {
  const gf::GaloisField& f = gf::GaloisField::standard();
  bool ok = true;
  for (unsigned a = 0; a < 256 && ok; ++a) {
    for (unsigned b = 0; b < 256; ++b) {
      if (f.mul(static_cast<gf::FieldElement>(a), static_cast<gf::FieldElement>(b)) !=
          shift_and_add(a, b, f.primitive_poly())) {
        ok = false;
        break;
      }
    }
  }
  for (unsigned a = 1; a < 256 && ok; ++a) {
    const auto x = static_cast<gf::FieldElement>(a);
    ok = f.mul(x, f.inv(x)) == 1;
  }
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> byte(0, 255);
  for (int i = 0; i < 10000 && ok; ++i) {
    const auto a = static_cast<gf::FieldElement>(byte(rng));
    const auto b = static_cast<gf::FieldElement>(byte(rng));
    const auto c = static_cast<gf::FieldElement>(byte(rng));
    ok = f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c) &&
         f.mul(a, gf::gf_add(b, c)) == gf::gf_add(f.mul(a, b), f.mul(a, c)) &&
         f.mul(a, b) == f.mul(b, a);
  }
  out << (ok ? "PASS" : "FAIL") << " gf256 field axioms\n";
  return ok;
}

bool roundtrip_checks(std::ostream& out) {
  bool all_ok = true;
  std::mt19937_64 rng(11);
  CliConfig cfg;
  cfg.modulations.assign(std::begin(modem::kAllSchemes), std::end(modem::kAllSchemes));
  cfg.rates = {fec::CodeRate::Half, fec::CodeRate::TwoThirds};
  cfg.channels.assign(std::begin(channel::kAllChannels), std::end(channel::kAllChannels));
  for (const sim::LinkProfile& p : cfg.profiles()) {
    Bits bits(2 * p.info_bits_per_frame() + 77);
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng() & 1u);
    const auto samples = sim::transmit(bits, p);
    const auto faded = channel::apply_channel(samples, sim::channel_config_for(p, channel::kNoiseless),
                                              rng());
    const bool ok = sim::receive(faded.samples, faded.realizations, p, bits.size()) == bits;
    all_ok = all_ok && ok;
    out << (ok ? "PASS" : "FAIL") << " noiseless roundtrip " << modem::to_string(p.modulation) << ' '
        << p.rate_label() << ' ' << channel::to_string(p.channel.kind) << '\n';
  }
  return all_ok;
}

}  // namespace

bool run_selftest(std::ostream& out) {
  const bool field = field_checks(out);
  const bool link = roundtrip_checks(out);
  return field && link;
}

}  // namespace wimax::cli
