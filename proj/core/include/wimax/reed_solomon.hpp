#pragma once

#include <span>
#include <utility>
#include <vector>

#include "wimax/gf256.hpp"

namespace wimax::fec {

using gf::FieldElement;

struct RsParams {
  int n = 255;  // codeword symbols
  int k = 239;  // message symbols
  int t = 8;    // correctable symbol errors
  // Generator roots are alpha^(fcr), ..., alpha^(fcr + 2t - 1).
  int first_consecutive_root = 0;

  int parity() const noexcept { return n - k; }

  // Throws std::invalid_argument unless 0 < k < n <= 255 and n - k == 2t.
  void validate() const;

  friend bool operator==(const RsParams&, const RsParams&) = default;
};

struct DecodeReport {
  int corrected_symbols = 0;
  bool decode_failure = false;
};

// Systematic RS encoder / Berlekamp-Massey decoder. Codewords are laid out
// message first, highest-degree coefficient at index 0.
class ReedSolomon {
 public:
  explicit ReedSolomon(RsParams params = {},
                       const gf::GaloisField& field = gf::GaloisField::standard());

  const RsParams& params() const noexcept { return params_; }

  // Monic, highest-degree first, 2t + 1 coefficients.
  const std::vector<FieldElement>& generator() const noexcept { return generator_; }

  // Throws BadLength unless message.size() == k.
  std::vector<FieldElement> encode(std::span<const FieldElement> message) const;

  // Writes the 2t parity symbols for codeword[0, k) into codeword[k, n).
  void encode_in_place(std::span<FieldElement> codeword) const;

  // S_i = r(alpha^(fcr + i)), i = 0 .. 2t-1.
  std::vector<FieldElement> syndromes(std::span<const FieldElement> codeword) const;

  // Corrects `codeword` in place. On failure the buffer is left untouched and
  // decode_failure is set; an unflagged result is always a valid codeword.
  // Throws BadLength unless codeword.size() == n.
  DecodeReport decode_in_place(std::span<FieldElement> codeword) const;

  // Returns the (corrected) systematic prefix.
  std::pair<std::vector<FieldElement>, DecodeReport> decode(
      std::span<const FieldElement> received) const;

 private:
  RsParams params_;
  const gf::GaloisField* field_;
  std::vector<FieldElement> generator_;
};

std::vector<FieldElement> rs_encode(std::span<const FieldElement> message,
                                    const RsParams& params = {});

std::pair<std::vector<FieldElement>, DecodeReport> rs_decode(
    std::span<const FieldElement> received, const RsParams& params = {});

}  // namespace wimax::fec
