#include "wimax/reed_solomon.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "wimax/errors.hpp"

namespace wimax::fec {

void RsParams::validate() const {
  if (k <= 0 || n <= k || n > gf::kFieldOrder) {
    throw std::invalid_argument("rs: require 0 < k < n <= 255");
  }
  if (n - k != 2 * t) {
    throw std::invalid_argument("rs: n - k must equal 2t");
  }
}

ReedSolomon::ReedSolomon(RsParams params, const gf::GaloisField& field)
    : params_(params), field_(&field) {
  params_.validate();
  // g(x) = prod (x - alpha^(fcr+i)), built highest-degree first.
  generator_.assign(1, 1);
  for (int i = 0; i < params_.parity(); ++i) {
    const FieldElement root = field_->exp(params_.first_consecutive_root + i);
    std::vector<FieldElement> next(generator_.size() + 1, 0);
    for (std::size_t j = 0; j < generator_.size(); ++j) {
      next[j] = gf::gf_add(next[j], generator_[j]);
      next[j + 1] = gf::gf_add(next[j + 1], field_->mul(generator_[j], root));
    }
    generator_ = std::move(next);
  }
}

void ReedSolomon::encode_in_place(std::span<FieldElement> codeword) const {
  if (codeword.size() != static_cast<std::size_t>(params_.n)) {
    throw BadLength("rs_encode: codeword buffer must hold n symbols");
  }
  const auto parity_len = static_cast<std::size_t>(params_.parity());
  const auto k = static_cast<std::size_t>(params_.k);
  std::span<FieldElement> parity = codeword.subspan(k, parity_len);
  std::fill(parity.begin(), parity.end(), 0);

  // LFSR division of x^(2t) m(x) by g(x).
  for (std::size_t i = 0; i < k; ++i) {
    const FieldElement feedback = gf::gf_add(codeword[i], parity[0]);
    std::copy(parity.begin() + 1, parity.end(), parity.begin());
    parity[parity_len - 1] = 0;
    if (feedback != 0) {
      for (std::size_t j = 0; j < parity_len; ++j) {
        parity[j] = gf::gf_add(parity[j], field_->mul(feedback, generator_[j + 1]));
      }
    }
  }
}

std::vector<FieldElement> ReedSolomon::encode(std::span<const FieldElement> message) const {
  if (message.size() != static_cast<std::size_t>(params_.k)) {
    throw BadLength("rs_encode: message must be " + std::to_string(params_.k) +
                    " symbols, got " + std::to_string(message.size()));
  }
  std::vector<FieldElement> codeword(static_cast<std::size_t>(params_.n), 0);
  std::copy(message.begin(), message.end(), codeword.begin());
  encode_in_place(codeword);
  return codeword;
}

std::vector<FieldElement> ReedSolomon::syndromes(std::span<const FieldElement> codeword) const {
  std::vector<FieldElement> s(static_cast<std::size_t>(params_.parity()));
  for (std::size_t i = 0; i < s.size(); ++i) {
    s[i] = field_->poly_eval(
        codeword, field_->exp(params_.first_consecutive_root + static_cast<int>(i)));
  }
  return s;
}

DecodeReport ReedSolomon::decode_in_place(std::span<FieldElement> codeword) const {
  const gf::GaloisField& f = *field_;
  const int n = params_.n;
  const int two_t = params_.parity();
  if (codeword.size() != static_cast<std::size_t>(n)) {
    throw BadLength("rs_decode: received word must be " + std::to_string(n) + " symbols");
  }

  const std::vector<FieldElement> synd = syndromes(codeword);
  if (std::all_of(synd.begin(), synd.end(), [](FieldElement s) { return s == 0; })) {
    return {};
  }
  const DecodeReport failed{0, true};

  // Berlekamp-Massey; locator polynomials are stored lowest degree first.
  std::vector<FieldElement> lambda(static_cast<std::size_t>(two_t + 1), 0);
  std::vector<FieldElement> prev(lambda.size(), 0);
  lambda[0] = 1;
  prev[0] = 1;
  int degree = 0;
  int shift = 1;
  FieldElement prev_discrepancy = 1;
  for (int step = 0; step < two_t; ++step) {
    FieldElement d = synd[static_cast<std::size_t>(step)];
    for (int i = 1; i <= degree; ++i) {
      d = gf::gf_add(d, f.mul(lambda[static_cast<std::size_t>(i)],
                              synd[static_cast<std::size_t>(step - i)]));
    }
    if (d == 0) {
      ++shift;
      continue;
    }
    const FieldElement scale = f.div(d, prev_discrepancy);
    std::vector<FieldElement> updated = lambda;
    for (std::size_t i = 0; i + static_cast<std::size_t>(shift) < updated.size(); ++i) {
      updated[i + static_cast<std::size_t>(shift)] =
          gf::gf_add(updated[i + static_cast<std::size_t>(shift)], f.mul(scale, prev[i]));
    }
    if (2 * degree <= step) {
      prev = std::move(lambda);
      degree = step + 1 - degree;
      prev_discrepancy = d;
      shift = 1;
    } else {
      ++shift;
    }
    lambda = std::move(updated);
  }
  if (degree > params_.t) return failed;
  for (std::size_t i = static_cast<std::size_t>(degree) + 1; i < lambda.size(); ++i) {
    if (lambda[i] != 0) return failed;
  }

  // Omega(x) = S(x) Lambda(x) mod x^(2t).
  std::vector<FieldElement> omega(static_cast<std::size_t>(two_t), 0);
  for (int i = 0; i < two_t; ++i) {
    for (int j = 0; j <= std::min(i, degree); ++j) {
      omega[static_cast<std::size_t>(i)] =
          gf::gf_add(omega[static_cast<std::size_t>(i)],
                     f.mul(lambda[static_cast<std::size_t>(j)],
                           synd[static_cast<std::size_t>(i - j)]));
    }
  }

  auto eval_low_first = [&f](std::span<const FieldElement> poly, FieldElement x) {
    FieldElement acc = 0;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) {
      acc = gf::gf_add(f.mul(acc, x), *it);
    }
    return acc;
  };

  // Chien search over every codeword position, then Forney.
  std::vector<std::pair<int, FieldElement>> corrections;
  const std::span<const FieldElement> locator(lambda.data(), static_cast<std::size_t>(degree) + 1);
  for (int pos = 0; pos < n; ++pos) {
    const int power = n - 1 - pos;
    const FieldElement x_inv = f.exp(-power);
    if (eval_low_first(locator, x_inv) != 0) continue;

    FieldElement derivative = 0;
    for (int i = 1; i <= degree; i += 2) {
      derivative = gf::gf_add(derivative,
                              f.mul(lambda[static_cast<std::size_t>(i)], f.pow(x_inv, i - 1)));
    }
    if (derivative == 0) return failed;
    const FieldElement numerator = f.mul(f.exp(power * (1 - params_.first_consecutive_root)),
                                         eval_low_first(omega, x_inv));
    corrections.emplace_back(pos, f.div(numerator, derivative));
  }
  if (static_cast<int>(corrections.size()) != degree) return failed;

  std::vector<FieldElement> candidate(codeword.begin(), codeword.end());
  for (const auto& [pos, value] : corrections) {
    candidate[static_cast<std::size_t>(pos)] =
        gf::gf_add(candidate[static_cast<std::size_t>(pos)], value);
  }
  const std::vector<FieldElement> check = syndromes(candidate);
  if (!std::all_of(check.begin(), check.end(), [](FieldElement s) { return s == 0; })) {
    return failed;
  }
  std::copy(candidate.begin(), candidate.end(), codeword.begin());
  return {degree, false};
}

std::pair<std::vector<FieldElement>, DecodeReport> ReedSolomon::decode(
    std::span<const FieldElement> received) const {
  std::vector<FieldElement> work(received.begin(), received.end());
  const DecodeReport report = decode_in_place(work);
  work.resize(static_cast<std::size_t>(params_.k));
  return {std::move(work), report};
}

std::vector<FieldElement> rs_encode(std::span<const FieldElement> message,
                                    const RsParams& params) {
  return ReedSolomon(params).encode(message);
}

std::pair<std::vector<FieldElement>, DecodeReport> rs_decode(
    std::span<const FieldElement> received, const RsParams& params) {
  return ReedSolomon(params).decode(received);
}

}  // namespace wimax::fec
