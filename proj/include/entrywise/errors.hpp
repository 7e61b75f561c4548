#pragma once

#include <stdexcept>
#include <string>

namespace entrywise {

/// Bad arguments: out-of-range indices, mismatched dimensions, violated
/// preconditions on matrices (non-Hermitian, non-PSD, entries outside the disc).
class parameter_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The inputs are well-formed but the requested value is undefined there
/// (vanishing denominator, repeated nodes in a Vandermonde solve).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An enumeration or search exceeded its budget.
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {
inline void require(bool ok, const std::string& what) {
  if (!ok) throw parameter_error(what);
}
}  // namespace detail

}  // namespace entrywise
