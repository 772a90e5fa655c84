#include "wimax/ofdm.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <set>
#include <stdexcept>

#include "wimax/errors.hpp"

namespace wimax::ofdm {

namespace {

// FFTW planning and plan destruction are not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

std::vector<int> OfdmParams::symmetric_carriers(int count) {
  if (count <= 0 || count % 2 != 0) {
    throw std::invalid_argument("ofdm: symmetric carrier count must be positive and even");
  }
  std::vector<int> carriers;
  carriers.reserve(static_cast<std::size_t>(count));
  for (int k = -count / 2; k <= count / 2; ++k) {
    if (k != 0) carriers.push_back(k);
  }
  return carriers;
}

void OfdmParams::validate() const {
  if (fft_size < 2) throw std::invalid_argument("ofdm: fft_size must be >= 2");
  if (cp_divisor != 4 && cp_divisor != 8 && cp_divisor != 16 && cp_divisor != 32) {
    throw std::invalid_argument("ofdm: cyclic prefix ratio must be 1/4, 1/8, 1/16 or 1/32");
  }
  if (fft_size % cp_divisor != 0) {
    throw std::invalid_argument("ofdm: cyclic prefix length must be an integer");
  }
  if (data_carriers.empty()) throw std::invalid_argument("ofdm: no data carriers");
  std::set<int> seen;
  for (int k : data_carriers) {
    if (k == 0) throw std::invalid_argument("ofdm: DC carrier cannot carry data");
    if (2 * k <= -fft_size || 2 * k >= fft_size) {
      throw std::invalid_argument("ofdm: data carrier outside (-N/2, N/2)");
    }
    if (!seen.insert(k).second) throw std::invalid_argument("ofdm: duplicate data carrier");
  }
}

struct OfdmModem::Plans {
  fftw_complex* time = nullptr;
  fftw_complex* freq = nullptr;
  fftw_plan inverse = nullptr;
  fftw_plan forward = nullptr;

  explicit Plans(int n) {
    std::lock_guard lock(planner_mutex());
    time = fftw_alloc_complex(static_cast<std::size_t>(n));
    freq = fftw_alloc_complex(static_cast<std::size_t>(n));
    inverse = fftw_plan_dft_1d(n, freq, time, FFTW_BACKWARD, FFTW_ESTIMATE);
    forward = fftw_plan_dft_1d(n, time, freq, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  ~Plans() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(inverse);
    fftw_destroy_plan(forward);
    fftw_free(time);
    fftw_free(freq);
  }
  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;
};

OfdmModem::OfdmModem(OfdmParams params) : params_(std::move(params)) {
  params_.validate();
  const int n = params_.fft_size;
  bins_.reserve(params_.num_data());
  for (int k : params_.data_carriers) {
    bins_.push_back(static_cast<std::size_t>(k < 0 ? k + n : k));
  }
  plans_ = std::make_unique<Plans>(n);
}

OfdmModem::~OfdmModem() = default;
OfdmModem::OfdmModem(OfdmModem&&) noexcept = default;
OfdmModem& OfdmModem::operator=(OfdmModem&&) noexcept = default;

std::vector<Complex> OfdmModem::modulate(std::span<const Complex> symbols) {
  const std::size_t data = params_.num_data();
  if (symbols.size() % data != 0) {
    throw BadLength("ofdm_modulate: symbol count is not a multiple of the data carrier count");
  }
  const auto n = static_cast<std::size_t>(params_.fft_size);
  const auto cp = static_cast<std::size_t>(params_.cp_len());
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  auto* freq = reinterpret_cast<Complex*>(plans_->freq);
  const auto* time = reinterpret_cast<const Complex*>(plans_->time);

  const std::size_t blocks = symbols.size() / data;
  std::vector<Complex> out(blocks * (n + cp));
  for (std::size_t b = 0; b < blocks; ++b) {
    std::fill(freq, freq + n, Complex{});
    for (std::size_t i = 0; i < data; ++i) freq[bins_[i]] = symbols[b * data + i];
    fftw_execute(plans_->inverse);
    Complex* block = out.data() + b * (n + cp);
    for (std::size_t i = 0; i < n; ++i) block[cp + i] = time[i] * scale;
    std::copy(block + n, block + n + cp, block);
  }
  return out;
}

std::vector<Complex> OfdmModem::demodulate(std::span<const Complex> samples) {
  const auto n = static_cast<std::size_t>(params_.fft_size);
  const auto cp = static_cast<std::size_t>(params_.cp_len());
  if (samples.size() % (n + cp) != 0) {
    throw BadLength("ofdm_demodulate: sample count is not a multiple of the block length");
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  auto* time = reinterpret_cast<Complex*>(plans_->time);
  const auto* freq = reinterpret_cast<const Complex*>(plans_->freq);
  const std::size_t data = params_.num_data();

  const std::size_t blocks = samples.size() / (n + cp);
  std::vector<Complex> out(blocks * data);
  for (std::size_t b = 0; b < blocks; ++b) {
    const Complex* block = samples.data() + b * (n + cp) + cp;
    std::copy(block, block + n, time);
    fftw_execute(plans_->forward);
    for (std::size_t i = 0; i < data; ++i) out[b * data + i] = freq[bins_[i]] * scale;
  }
  return out;
}

std::vector<Complex> ofdm_modulate(std::span<const Complex> symbols, const OfdmParams& p) {
  return OfdmModem(p).modulate(symbols);
}

std::vector<Complex> ofdm_demodulate(std::span<const Complex> samples, const OfdmParams& p) {
  return OfdmModem(p).demodulate(samples);
}

}  // namespace wimax::ofdm
