#include "tmn/errors.hpp"

namespace tmn {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::EmptyNetwork: return "EmptyNetwork";
        case ErrorCode::DuplicateId: return "DuplicateId";
        case ErrorCode::IndexRuleViolation: return "IndexRuleViolation";
        case ErrorCode::ArcEndpointMissing: return "ArcEndpointMissing";
        case ErrorCode::RoleMismatch: return "RoleMismatch";
        case ErrorCode::DisconnectedNetwork: return "DisconnectedNetwork";
        case ErrorCode::InvalidGeometry: return "InvalidGeometry";
        case ErrorCode::InvalidForceModel: return "InvalidForceModel";
        case ErrorCode::UnknownCompartment: return "UnknownCompartment";
        case ErrorCode::NegativeWeight: return "NegativeWeight";
        case ErrorCode::NonpositiveMass: return "NonpositiveMass";
        case ErrorCode::NonpositiveStep: return "NonpositiveStep";
        case ErrorCode::InvalidState: return "InvalidState";
        case ErrorCode::StalledSegment: return "StalledSegment";
        case ErrorCode::UnreachableEnd: return "UnreachableEnd";
        case ErrorCode::RouteMismatch: return "RouteMismatch";
        case ErrorCode::MissingMilestone: return "MissingMilestone";
        case ErrorCode::NonpositiveDelta: return "NonpositiveDelta";
        case ErrorCode::InvalidHorizon: return "InvalidHorizon";
        case ErrorCode::InvalidFraction: return "InvalidFraction";
        case ErrorCode::RewireConflict: return "RewireConflict";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::UnknownKey: return "UnknownKey";
        case ErrorCode::MixedDelta: return "MixedDelta";
    }
    return "Unknown";
}

} // namespace tmn
