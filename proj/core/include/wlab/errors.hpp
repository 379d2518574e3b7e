#pragma once

#include <stdexcept>

namespace wlab {

/// Invalid parameters supplied by the caller (out-of-range a, bad b_seq, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical precondition inside a module does not hold for the given input
/// (grid too coarse, too few samples, aliasing u-grid, ...).
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace wlab
