#pragma once

#include <stdexcept>
#include <string>

namespace mgpf {

enum class ErrorKind {
  InvalidDimension,
  DimensionMismatch,
  InvalidState,
  SamplingFailure,
  DegenerateFoci,
  NoActiveEdges,
  NotSpanning,
  UnknownNode,
  SizeLimit,
  InvalidTerminals,
  GenerationFailure,
  Config,
  SchemaMismatch,
  UnsupportedDimension,
};

const char* to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` distinguishes failure modes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mgpf
