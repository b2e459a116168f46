#pragma once

#include <stdexcept>
#include <string>

namespace wfd {

// Error taxonomy shared by all modules. The CLI maps kinds to exit codes:
// input/validation problems exit with 2, resource exhaustion with 3.
enum class ErrorKind {
  EmptySimplex,
  ResourceLimit,
  PartialAssignment,
  DimensionViolation,
  CarrierViolation,
  DanglingOutputVertex,
  MissingDelta,
  VertexNotInImage,
  WitnessInvalid,
  MissingLocalWitness,
  DimensionUnsupported,
  NotSimplicial,
  NotConnected,
  NotACovering,
  InconsistentValency,
  NoBivalentChild,
  InconsistentOracle,
  SchemaViolation,
  InvalidArgument,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Outcome of a re-verification pass. `ok == false` carries a short diagnosis
// naming the first condition that failed.
struct CheckResult {
  bool ok = true;
  std::string why;
};

}  // namespace wfd
