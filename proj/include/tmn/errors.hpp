#pragma once

#include <stdexcept>
#include <string>

namespace tmn {

// Machine-readable failure categories. The CLI prints these verbatim as the
// error-code prefix, so names are part of the tool's output contract.
enum class ErrorCode {
    // network construction
    EmptyNetwork,
    DuplicateId,
    IndexRuleViolation,
    ArcEndpointMissing,
    RoleMismatch,
    DisconnectedNetwork,
    InvalidGeometry,
    InvalidForceModel,
    // digraph / flow annotation
    UnknownCompartment,
    NegativeWeight,
    // mechanics
    NonpositiveMass,
    NonpositiveStep,
    InvalidState,
    StalledSegment,
    UnreachableEnd,
    // journeys
    RouteMismatch,
    MissingMilestone,
    // circularity
    NonpositiveDelta,
    InvalidHorizon,
    // strategies
    InvalidFraction,
    RewireConflict,
    // scenario files / CLI
    ParseError,
    UnknownKey,
    MixedDelta,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

} // namespace tmn
