#pragma once

#include <stdexcept>
#include <string>

namespace pcfcert {

/// Precondition violated by the caller (bad range, non-prime modulus, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A computation would exceed its configured size budget.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pcfcert
