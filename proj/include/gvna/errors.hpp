#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gvna {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: wrong dimensions, non-projections, elements outside an algebra.
class InputError : public Error {
 public:
  using Error::Error;
};

/// The hypotheses of a proposition do not hold for the given inputs.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A quantity that must be an integer (rank, block size) was not, within tolerance.
class NumericalInconsistency : public Error {
 public:
  using Error::Error;
};

class DegenerateSpectrum : public NumericalInconsistency {
 public:
  DegenerateSpectrum(const std::string& what, std::uint64_t seed)
      : NumericalInconsistency(what + " (seed " + std::to_string(seed) + ")"), seed_(seed) {}
  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
};

class InternalLimit : public Error {
 public:
  using Error::Error;
};

/// A structural fact that must hold at finite dimension failed.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace gvna
