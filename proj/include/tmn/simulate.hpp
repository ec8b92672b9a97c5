#pragma once

#include <map>
#include <string>
#include <vector>

#include "tmn/mechanics.hpp"
#include "tmn/network.hpp"

namespace tmn {

// The tracked element of target material.
struct MaterialElement {
    double mass = 0.0;               // kg, > 0
    std::string material;            // target material name
    double renewable_fraction = 0.0; // rho in [0, 1]

    void check() const;

    bool operator==(const MaterialElement&) const = default;
};

// Alternating node/arc/node/.../node id sequence plus per-node dwell times.
struct Route {
    std::vector<CompartmentId> sequence;
    std::map<CompartmentId, double> dwell_durations; // node id -> s, >= 0

    bool operator==(const Route&) const = default;
};

enum class JourneyEventKind {
    ExitNode,
    EnterNode,
    ExitReservoirNonrenewable,
    EnterLandfill,
    EnterIncinerator,
    EnterEnvironment,
};

const char* to_string(JourneyEventKind kind);

// Classification kinds (everything except the plain Exit/Enter pair) are
// emitted in addition to the base event at the same instant.
bool is_classification(JourneyEventKind kind);

struct JourneyEvent {
    double time = 0.0;
    CompartmentId compartment = 0;
    JourneyEventKind kind = JourneyEventKind::ExitNode;
    double mass = 0.0; // kg, > 0

    bool operator==(const JourneyEvent&) const = default;
};

struct JourneyLog {
    std::vector<JourneyEvent> events;                // time-ordered
    std::map<CompartmentId, Trajectory> trajectories; // arc id -> trajectory
    std::map<std::string, double> milestone_times;    // "t0".."t5" -> s
};

// Throws RouteMismatch unless the sequence alternates node/arc/node against
// `net` with consistent arc endpoints, starting and ending on nodes.
void validate_route(const TMNetwork& net, const Route& route);

// Simulates one material journey: integrates each arc from rest (arrival
// resets velocity to zero), inserts node dwells, and emits boundary-crossing
// events with their unsustainability classifications. The journey clock
// starts at the first departure (t0 = 0) and the stored trajectories carry
// the globally cumulative path coordinate.
JourneyLog run_journey(const TMNetwork& net, const MaterialElement& element,
                       const Route& route, double dt,
                       const IntegrationOptions& options = {});

// Milestone instants t0..t5; throws MissingMilestone when the journey never
// enters a terminal compartment (landfill, incinerator, environment).
std::map<std::string, double> milestone_times(const JourneyLog& log);

} // namespace tmn
