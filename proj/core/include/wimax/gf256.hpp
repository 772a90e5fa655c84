#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace wimax::gf {

// One GF(2^8) symbol: a polynomial over GF(2) of degree < 8.
using FieldElement = std::uint8_t;

// x^8 + x^4 + x^3 + x^2 + 1, the IEEE 802.16 Reed-Solomon field polynomial.
inline constexpr unsigned kDefaultPrimitivePoly = 0x11D;

// Multiplicative group order.
inline constexpr int kFieldOrder = 255;

struct FieldTables {
  // exp[i] = alpha^i; doubled so that exp[log a + log b] needs no reduction.
  std::array<FieldElement, 512> exp{};
  // log[a] for a != 0; log[0] is unused and set to -1.
  std::array<int, 256> log{};
  unsigned primitive_poly = kDefaultPrimitivePoly;
};

constexpr FieldElement gf_add(FieldElement a, FieldElement b) noexcept {
  return static_cast<FieldElement>(a ^ b);
}

// Table-driven GF(2^8) with generator alpha = 2. Immutable after
// construction, so one instance can be shared across threads.
class GaloisField {
 public:
  // Throws std::invalid_argument unless `primitive_poly` is a degree-8
  // polynomial for which alpha = 2 generates all 255 nonzero elements.
  explicit GaloisField(unsigned primitive_poly = kDefaultPrimitivePoly);

  // The 0x11D field, built once on first use.
  static const GaloisField& standard();

  FieldElement mul(FieldElement a, FieldElement b) const noexcept {
    if (a == 0 || b == 0) return 0;
    return tables_.exp[tables_.log[a] + tables_.log[b]];
  }

  // Throws ZeroInverse for a == 0.
  FieldElement inv(FieldElement a) const;

  // a / b; throws ZeroInverse for b == 0.
  FieldElement div(FieldElement a, FieldElement b) const;

  // alpha^power for any integer power (reduced mod 255).
  FieldElement exp(int power) const noexcept {
    int p = power % kFieldOrder;
    if (p < 0) p += kFieldOrder;
    return tables_.exp[p];
  }

  // Discrete log base alpha; a must be nonzero.
  int log(FieldElement a) const noexcept { return tables_.log[a]; }

  FieldElement pow(FieldElement a, int e) const noexcept;

  // Horner evaluation; coeffs[0] is the highest-degree coefficient.
  // An empty polynomial evaluates to 0.
  FieldElement poly_eval(std::span<const FieldElement> coeffs,
                         FieldElement x) const noexcept;

  const FieldTables& tables() const noexcept { return tables_; }
  unsigned primitive_poly() const noexcept { return tables_.primitive_poly; }

 private:
  FieldTables tables_;
};

// Conveniences on GaloisField::standard().
FieldElement gf_mul(FieldElement a, FieldElement b) noexcept;
FieldElement gf_inv(FieldElement a);
FieldElement poly_eval(std::span<const FieldElement> coeffs, FieldElement x) noexcept;

}  // namespace wimax::gf
