#pragma once

#include <stdexcept>
#include <string>

namespace boldscale {

enum class ErrorKind {
  InvalidArgument,
  InvalidProblem,
  InvalidWeighting,
  EmptyInput,
  UndefinedCoefficient,
  TooFewVariables,
  DimensionMismatch,
  InvalidFacet,
  EmptyRegion,
  MissingResponses,
  DegenerateSolution,
  ConstantItem,
  LengthMismatch,
  GenerationFailure,
  Parse,
  IdMismatch,
  MissingStage,
  SchemaVersion,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

// Input-side failures map to CLI exit code 2, everything else to 3.
inline bool is_input_error(ErrorKind kind) noexcept {
  return kind == ErrorKind::Parse || kind == ErrorKind::IdMismatch ||
         kind == ErrorKind::SchemaVersion;
}

}  // namespace boldscale
