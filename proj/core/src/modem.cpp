#include "wimax/modem.hpp"

#include <cmath>
#include <limits>

#include "wimax/errors.hpp"

namespace wimax::modem {

namespace {

Constellation make_bpsk() {
  return {Scheme::Bpsk, 1, {{1.0, 0.0}, {-1.0, 0.0}}};
}

Constellation make_qpsk() {
  const double a = 1.0 / std::sqrt(2.0);
  // b0 selects the I sign, b1 the Q sign.
  return {Scheme::Qpsk, 2, {{a, a}, {a, -a}, {-a, a}, {-a, -a}}};
}

Constellation make_qam4() {
  const double a = 1.0 / std::sqrt(2.0);
  return {Scheme::Qam4, 2, {{a, a}, {-a, a}, {-a, -a}, {a, -a}}};
}

Constellation make_qam16() {
  // Per-axis Gray: 00 -> -3, 01 -> -1, 11 -> +1, 10 -> +3.
  constexpr double level[4] = {-3.0, -1.0, 3.0, 1.0};
  const double scale = 1.0 / std::sqrt(10.0);
  Constellation c{Scheme::Qam16, 4, {}};
  c.points.resize(16);
  for (unsigned label = 0; label < 16; ++label) {
    c.points[label] = Complex(level[label >> 2], level[label & 3u]) * scale;
  }
  return c;
}

}  // namespace

std::string to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::Bpsk: return "bpsk";
    case Scheme::Qpsk: return "qpsk";
    case Scheme::Qam4: return "4qam";
    case Scheme::Qam16: return "16qam";
  }
  return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  if (name == "bpsk") return Scheme::Bpsk;
  if (name == "qpsk") return Scheme::Qpsk;
  if (name == "4qam" || name == "qam4" || name == "4-qam") return Scheme::Qam4;
  if (name == "16qam" || name == "qam16" || name == "16-qam") return Scheme::Qam16;
  return std::nullopt;
}

const Constellation& Constellation::get(Scheme scheme) {
  static const Constellation bpsk = make_bpsk();
  static const Constellation qpsk = make_qpsk();
  static const Constellation qam4 = make_qam4();
  static const Constellation qam16 = make_qam16();
  switch (scheme) {
    case Scheme::Bpsk: return bpsk;
    case Scheme::Qpsk: return qpsk;
    case Scheme::Qam4: return qam4;
    case Scheme::Qam16: return qam16;
  }
  return bpsk;
}

double Constellation::min_distance() const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      best = std::min(best, std::abs(points[i] - points[j]));
    }
  }
  return best;
}

std::vector<Complex> modulate(BitView bits, const Constellation& c) {
  const auto bps = static_cast<std::size_t>(c.bits_per_symbol);
  if (bits.size() % bps != 0) {
    throw BadLength("modulate: bit count is not a multiple of bits per symbol");
  }
  std::vector<Complex> out(bits.size() / bps);
  for (std::size_t s = 0; s < out.size(); ++s) {
    unsigned label = 0;
    for (std::size_t b = 0; b < bps; ++b) label = (label << 1) | (bits[s * bps + b] & 1u);
    out[s] = c.points[label];
  }
  return out;
}

Bits demodulate(std::span<const Complex> symbols, const Constellation& c) {
  const auto bps = static_cast<std::size_t>(c.bits_per_symbol);
  Bits out(symbols.size() * bps);
  for (std::size_t s = 0; s < symbols.size(); ++s) {
    unsigned best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (unsigned label = 0; label < c.points.size(); ++label) {
      const double d = std::norm(symbols[s] - c.points[label]);
      if (d < best_dist) {
        best_dist = d;
        best = label;
      }
    }
    for (std::size_t b = 0; b < bps; ++b) {
      out[s * bps + b] = static_cast<std::uint8_t>((best >> (bps - 1 - b)) & 1u);
    }
  }
  return out;
}

}  // namespace wimax::modem
