#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "tmn/circularity.hpp"
#include "tmn/optimize.hpp"

namespace tmn {

// Numerical settings shared by every simulation of one scenario file.
struct SimParams {
    double dt = 1e-3;     // s
    double gravity = kStandardGravity;
    double delta = 1.0;   // s, flow-to-mass conversion interval
    Horizon horizon = Horizon::unbounded();
    double max_time = 1e6; // s, stall budget per arc

    IntegrationOptions integration() const {
        IntegrationOptions options;
        options.max_time = max_time;
        return options;
    }

    bool operator==(const SimParams&) const = default;
};

struct ScenarioBundle {
    Scenario scenario;
    SimParams sim;
    StrategyMenu menu;

    bool operator==(const ScenarioBundle&) const = default;
};

// Strict scenario-file parsing: unknown keys are hard errors, all numeric
// fields are SI with unit-suffixed names, and the result is fully validated
// (network, route, element, sim parameters).
ScenarioBundle parse_scenario_file(const std::string& text);

ScenarioBundle load_scenario_file(const std::filesystem::path& path);

// Canonical form: defaults are materialised and keys sorted, so
// parse(serialize(b)) == b and serialization is a fixed point.
std::string serialize_scenario(const ScenarioBundle& bundle);

const char* to_string(CompartmentRole role);
CompartmentRole role_from_string(const std::string& name);
const char* to_string(FrameAxis axis);
FrameAxis frame_axis_from_string(const std::string& name);

// Trajectory CSV: header "t,s,s_dot,s_ddot,x,y,z", one row per sample, full
// round-trip precision.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& trajectory);
Trajectory read_trajectory_csv(const std::filesystem::path& path);

} // namespace tmn
