#pragma once

#include <stdexcept>
#include <string>

namespace possdiag {

enum class ErrorKind {
  kValidation,
  kLevelNotInScale,
  kUniverseMismatch,
  kLookup,
  kMissingProfile,
  kInadmissible,
  kMode,
};

const char* to_string(ErrorKind kind);

/// Raised by engine and core operations when a precondition does not hold.
class DiagnosisError : public std::runtime_error {
 public:
  DiagnosisError(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace possdiag
