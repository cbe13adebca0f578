#pragma once

#include <stdexcept>
#include <string>

namespace vpow {

// Every failure the library reports falls into one of these buckets so that
// callers (the CLI in particular) can map it to a stable exit status.
enum class ErrorCategory {
  Parse,       // malformed input text or JSON
  Validation,  // structurally valid input that violates a documented precondition
  Domain,      // a quantity or formula asked for outside its domain
  Resource,    // the request exceeds a configured size/time budget
  Internal,    // a broken internal invariant; always a bug
};

const char* to_string(ErrorCategory category);

class Error : public std::runtime_error {
public:
  Error(ErrorCategory category, const std::string& message)
      : std::runtime_error(message), category_(category) {}

  ErrorCategory category() const { return category_; }

private:
  ErrorCategory category_;
};

inline const char* to_string(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::Parse: return "parse";
    case ErrorCategory::Validation: return "validation";
    case ErrorCategory::Domain: return "domain";
    case ErrorCategory::Resource: return "resource";
    case ErrorCategory::Internal: return "internal";
  }
  return "internal";
}

}  // namespace vpow
