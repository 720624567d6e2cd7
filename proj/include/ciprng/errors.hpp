#pragma once

#include <stdexcept>
#include <string>

namespace ciprng {

/// Invalid argument or precondition violation (bad seed, out-of-range index).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Request exceeds the explicit size limits of an exhaustive analysis.
class ResourceError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Grid or combination-array configuration that cannot run.
class ConfigError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Non-invertible element or similar modular-arithmetic failure.
class ArithmeticError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Encryption randomness shares a factor with the modulus.
class KeyLeakError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Malformed ciphertext, key file or serialized stream.
class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Message length not a whole number of blocks.
class PaddingError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// No witness exists (e.g. iteration graph not strongly connected).
class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Output sink failure.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ciprng
