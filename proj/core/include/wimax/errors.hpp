#pragma once

#include <stdexcept>
#include <string>

namespace wimax {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A stage received input whose length does not match its framing contract.
class BadLength : public Error {
 public:
  using Error::Error;
};

class ZeroInverse : public Error {
 public:
  ZeroInverse() : Error("gf256: zero has no multiplicative inverse") {}
};

// Zero-forcing equalization against a vanishing channel gain.
class SingularGain : public Error {
 public:
  using Error::Error;
};

class UnsupportedFormat : public Error {
 public:
  using Error::Error;
};

class CorruptHeader : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace wimax
