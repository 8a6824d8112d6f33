#pragma once

#include <stdexcept>

namespace brt {

/// Raised when an argument lies outside the domain of an operation
/// (a Δ past the slab, a grid mismatch, a logarithm of a non-positive value).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Raised when the caller picked the wrong operation for its input,
/// e.g. simulating single-family data for a medium with scattering contrast.
class PreconditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

} // namespace brt
