#include "wimax/gf256.hpp"

#include <stdexcept>

#include "wimax/errors.hpp"

namespace wimax::gf {

GaloisField::GaloisField(unsigned primitive_poly) {
  if (primitive_poly < 0x100 || primitive_poly > 0x1FF) {
    throw std::invalid_argument("gf256: primitive polynomial must have degree 8");
  }
  tables_.primitive_poly = primitive_poly;
  tables_.log.fill(-1);

  unsigned x = 1;
  for (int i = 0; i < kFieldOrder; ++i) {
    if (tables_.log[x] != -1) {
      throw std::invalid_argument("gf256: polynomial is not primitive");
    }
    tables_.exp[i] = static_cast<FieldElement>(x);
    tables_.log[x] = i;
    x <<= 1;
    if (x & 0x100) x ^= primitive_poly;
  }
  if (x != 1) {
    throw std::invalid_argument("gf256: polynomial is not primitive");
  }
  for (int i = kFieldOrder; i < static_cast<int>(tables_.exp.size()); ++i) {
    tables_.exp[i] = tables_.exp[i - kFieldOrder];
  }
}

const GaloisField& GaloisField::standard() {
  static const GaloisField field(kDefaultPrimitivePoly);
  return field;
}

FieldElement GaloisField::inv(FieldElement a) const {
  if (a == 0) throw ZeroInverse();
  return tables_.exp[kFieldOrder - tables_.log[a]];
}

FieldElement GaloisField::div(FieldElement a, FieldElement b) const {
  if (b == 0) throw ZeroInverse();
  if (a == 0) return 0;
  return tables_.exp[tables_.log[a] + kFieldOrder - tables_.log[b]];
}

FieldElement GaloisField::pow(FieldElement a, int e) const noexcept {
  if (e == 0) return 1;
  if (a == 0) return 0;
  long long p = static_cast<long long>(tables_.log[a]) * e % kFieldOrder;
  if (p < 0) p += kFieldOrder;
  return tables_.exp[static_cast<std::size_t>(p)];
}

FieldElement GaloisField::poly_eval(std::span<const FieldElement> coeffs,
                                    FieldElement x) const noexcept {
  FieldElement acc = 0;
  for (FieldElement c : coeffs) {
    acc = gf_add(mul(acc, x), c);
  }
  return acc;
}

FieldElement gf_mul(FieldElement a, FieldElement b) noexcept {
  return GaloisField::standard().mul(a, b);
}

FieldElement gf_inv(FieldElement a) { return GaloisField::standard().inv(a); }

FieldElement poly_eval(std::span<const FieldElement> coeffs, FieldElement x) noexcept {
  return GaloisField::standard().poly_eval(coeffs, x);
}

}  // namespace wimax::gf
