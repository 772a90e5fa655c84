#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wimax/bits.hpp"

namespace wimax::modem {

using Complex = std::complex<double>;

// QPSK and QAM4 share the point set {(+-1 +-j)/sqrt2}; QPSK is Gray labelled,
// QAM4 uses natural binary labels counter-clockwise from the first quadrant.
enum class Scheme { Bpsk, Qpsk, Qam4, Qam16 };

inline constexpr Scheme kAllSchemes[] = {Scheme::Bpsk, Scheme::Qpsk, Scheme::Qam4,
                                         Scheme::Qam16};

std::string to_string(Scheme scheme);
std::optional<Scheme> parse_scheme(std::string_view name);

// Unit mean energy point set. points[label] is the point carrying `label`;
// the first bit of each group in the stream is the label's MSB.
struct Constellation {
  Scheme scheme = Scheme::Bpsk;
  int bits_per_symbol = 1;
  std::vector<Complex> points;

  static const Constellation& get(Scheme scheme);

  // Smallest distance between two distinct points.
  double min_distance() const;
};

// Throws BadLength unless bits.size() is a multiple of bits_per_symbol.
std::vector<Complex> modulate(BitView bits, const Constellation& c);

// Minimum Euclidean distance; equidistant candidates resolve to the lowest
// label.
Bits demodulate(std::span<const Complex> symbols, const Constellation& c);

}  // namespace wimax::modem
