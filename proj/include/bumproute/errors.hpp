#pragma once

#include <stdexcept>
#include <string>

namespace bumproute {

// Argument outside the closed domain of an analytic function or operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A value was inserted that already occurs in the tableau.
class DistinctEntriesError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A tableau (or other value) failed one of its structural invariants.
class InvariantViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A requested experiment exceeds the configured resource limits.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File-system failure; the message carries the offending path.
class IoError : public std::runtime_error {
 public:
  IoError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace bumproute
