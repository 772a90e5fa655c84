#pragma once

// Reference implementations used only by tests. None of these touch the
// library's tables or transforms.

#include <cmath>
#include <complex>
#include <cstdint>
#include <deque>
#include <numbers>
#include <vector>

namespace oracle {

// Shift-and-XOR ("Russian peasant") multiplication modulo `poly`.
inline unsigned peasant_mul(unsigned a, unsigned b, unsigned poly = 0x11D) {
  unsigned product = 0;
  while (b) {
    if (b & 1u) product ^= a;
    b >>= 1;
    a <<= 1;
    if (a & 0x100u) a ^= poly;
  }
  return product;
}

inline unsigned peasant_pow(unsigned a, int e, unsigned poly = 0x11D) {
  unsigned r = 1;
  for (int i = 0; i < e; ++i) r = peasant_mul(r, a, poly);
  return r;
}

// sum c_i x^(deg - i), each power computed by repeated multiplication.
inline unsigned power_sum(const std::vector<std::uint8_t>& coeffs, unsigned x) {
  unsigned acc = 0;
  const int deg = static_cast<int>(coeffs.size()) - 1;
  for (int i = 0; i <= deg; ++i) acc ^= peasant_mul(coeffs[static_cast<std::size_t>(i)], peasant_pow(x, deg - i));
  return acc;
}

// RS parity by schoolbook long division of m(x) x^(2t) by
// prod (x - alpha^(fcr + i)).
inline std::vector<std::uint8_t> rs_parity_long_division(const std::vector<std::uint8_t>& msg,
                                                         int two_t, int fcr = 0) {
  std::vector<unsigned> g{1};
  for (int i = 0; i < two_t; ++i) {
    const unsigned root = peasant_pow(2, fcr + i);
    std::vector<unsigned> next(g.size() + 1, 0);
    for (std::size_t j = 0; j < g.size(); ++j) {
      next[j] ^= g[j];
      next[j + 1] ^= peasant_mul(g[j], root);
    }
    g = next;
  }
  std::vector<unsigned> rem(msg.begin(), msg.end());
  rem.resize(msg.size() + static_cast<std::size_t>(two_t), 0);
  for (std::size_t i = 0; i < msg.size(); ++i) {
    const unsigned c = rem[i];
    if (!c) continue;
    for (std::size_t j = 0; j < g.size(); ++j) rem[i + j] ^= peasant_mul(c, g[j]);
  }
  return {rem.end() - two_t, rem.end()};
}

// Convolutional interleaver as an explicit bank of std::deque FIFOs.
inline std::vector<int> fifo_bank(const std::vector<int>& in, int branches, int delay_step,
                                  bool deinterleave, int fill = 0) {
  std::vector<std::deque<int>> bank(static_cast<std::size_t>(branches));
  for (int j = 0; j < branches; ++j) {
    const int depth = deinterleave ? branches - 1 - j : j;
    bank[static_cast<std::size_t>(j)].assign(static_cast<std::size_t>(depth * delay_step), fill);
  }
  std::vector<int> out;
  for (std::size_t i = 0; i < in.size(); ++i) {
    auto& q = bank[i % static_cast<std::size_t>(branches)];
    q.push_back(in[i]);
    out.push_back(q.front());
    q.pop_front();
  }
  return out;
}

// Unitary DFT by direct summation; sign = -1 forward, +1 inverse.
inline std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& x, int sign) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> y(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc{};
    for (std::size_t t = 0; t < n; ++t) {
      const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(k * t % n) /
                           static_cast<double>(n);
      acc += x[t] * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    y[k] = acc / std::sqrt(static_cast<double>(n));
  }
  return y;
}

inline double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

}  // namespace oracle
