#pragma once

#include <stdexcept>

namespace kkbounds {

/// A mathematical hypothesis of a construction does not hold for the given
/// input (s below the largest Gauss node, missing sign certificate, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computed quantity failed its own post-condition check.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a function, e.g. |t| > 1 for a potential.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed external input: files, potential specs, catalog names.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kkbounds
