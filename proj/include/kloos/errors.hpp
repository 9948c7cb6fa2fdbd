#pragma once

#include <stdexcept>
#include <string>

namespace kloos {

/// Argument outside the mathematical domain of an operation (a = 0, bad parity, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A size guard on an enumeration was exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exactness or cross-route assertion failed; indicates a transcription or logic bug.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace kloos
