#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace decat {

// Two operands were built over different schemas.
class SchemaMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An argument lies outside the domain an operation is defined on
// (element not in a carrier, non-closed selection, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A single broken invariant found by one of the validate_* operations.
struct Violation {
  std::string kind;     // "dangling-endpoint", "relation", "naturality", ...
  std::string message;  // human readable
  std::size_t index = 0;  // relation / arrow index when meaningful
  std::string witness;    // witness element id when meaningful
};

struct ValidationResult {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  explicit operator bool() const { return ok(); }
};

}  // namespace decat
