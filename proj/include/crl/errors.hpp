#pragma once

#include <stdexcept>
#include <string>

namespace crl {

/// Raised when an argument lies outside the domain of an operation
/// (bad partition, chart index out of range, degree mismatch, ...).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a Groebner computation exceeds its configured caps.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace crl
