#pragma once

#include <stdexcept>
#include <string>

namespace spectral_walks {

/// A precondition on the inputs was violated (wrong parity, bad length, non-symmetric input, ...).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed external data, e.g. an edge list that is not a simple graph.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A size guard was exceeded (matrix dimension cap, walk enumeration budget).
class ResourceError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// An iterative numerical routine failed or lost too much accuracy.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rejection sampling gave up.
class SamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid experiment configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace spectral_walks
