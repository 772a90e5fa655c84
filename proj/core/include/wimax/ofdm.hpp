#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace wimax::ofdm {

using Complex = std::complex<double>;

struct OfdmParams {
  int fft_size = 256;
  // Signed subcarrier indices in mapping order; DC excluded.
  std::vector<int> data_carriers = symmetric_carriers(192);
  // Cyclic prefix = fft_size / cp_divisor; one of 4, 8, 16, 32.
  int cp_divisor = 4;

  // -count/2 .. -1, 1 .. count/2 in ascending order; count must be even.
  static std::vector<int> symmetric_carriers(int count);

  int cp_len() const noexcept { return fft_size / cp_divisor; }
  std::size_t block_length() const noexcept {
    return static_cast<std::size_t>(fft_size + cp_len());
  }
  std::size_t num_data() const noexcept { return data_carriers.size(); }
  std::string cp_ratio() const { return "1/" + std::to_string(cp_divisor); }

  // Throws std::invalid_argument on duplicate, DC or out-of-band carriers or
  // a non-integer prefix length.
  void validate() const;

  friend bool operator==(const OfdmParams&, const OfdmParams&) = default;
};

// Unitary (1/sqrt N both ways) OFDM block transform with cyclic prefix.
// Owns FFT plans and scratch buffers: one instance per thread.
class OfdmModem {
 public:
  explicit OfdmModem(OfdmParams params);
  ~OfdmModem();
  OfdmModem(OfdmModem&&) noexcept;
  OfdmModem& operator=(OfdmModem&&) noexcept;
  OfdmModem(const OfdmModem&) = delete;
  OfdmModem& operator=(const OfdmModem&) = delete;

  const OfdmParams& params() const noexcept { return params_; }

  // Throws BadLength unless symbols.size() is a multiple of num_data().
  std::vector<Complex> modulate(std::span<const Complex> symbols);

  // Throws BadLength unless samples.size() is a multiple of block_length().
  std::vector<Complex> demodulate(std::span<const Complex> samples);

 private:
  struct Plans;
  OfdmParams params_;
  std::vector<std::size_t> bins_;
  std::unique_ptr<Plans> plans_;
};

std::vector<Complex> ofdm_modulate(std::span<const Complex> symbols, const OfdmParams& p);
std::vector<Complex> ofdm_demodulate(std::span<const Complex> samples, const OfdmParams& p);

}  // namespace wimax::ofdm
