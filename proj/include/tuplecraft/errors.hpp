#pragma once

#include <stdexcept>
#include <string>

namespace tuplecraft {

// Precondition violated by an argument value (x < 2 for li, n = 0 for phi, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Exact integer result left the representable range.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// Argument outside the range the implementation supports (primality beyond 2^64, ...).
class UnsupportedRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

}  // namespace tuplecraft
