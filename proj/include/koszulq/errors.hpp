#pragma once

#include <stdexcept>
#include <string>

namespace koszulq {

/// Caller violated an operation's preconditions (bad index, mismatched sizes).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The input is well-formed but mathematically unsuitable (non-summand
/// relation module, inconsistent constraint system, ...).
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation needed data beyond the materialized degree window.
class CutoffError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

}  // namespace koszulq
