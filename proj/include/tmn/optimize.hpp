#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "tmn/circularity.hpp"
#include "tmn/network.hpp"
#include "tmn/simulate.hpp"

namespace tmn {

// Circular-economy strategies applied to a base scenario.

// Source part of "reduce": the manufacturer covers `fraction` of the material
// demand from renewable feedstock.
struct ReduceRenewable {
    double fraction = 0.0; // rho in [0, 1]
    bool operator==(const ReduceRenewable&) const = default;
};

// Demand part of "reduce": the product needs only `factor` of the material.
struct ReduceMaterial {
    double factor = 1.0; // kappa in (0, 1]
    bool operator==(const ReduceMaterial&) const = default;
};

// "Repair and reuse": reroute the journey through a repair/second-use node
// before the terminal compartment, replacing the direct collection arc.
struct InsertRepair {
    CompartmentId repair_node = 0;
    CompartmentId inbound_arc = 0;
    CompartmentId outbound_arc = 0;
    double second_use_dwell = 0.0; // s
    bool operator==(const InsertRepair&) const = default;
};

using Strategy = std::variant<ReduceRenewable, ReduceMaterial, InsertRepair>;

// Short deterministic label suffix, e.g. "rr=0.5", "rm=0.8", "repair".
std::string strategy_tag(const Strategy& strategy);

using StrategyMenu = std::vector<std::vector<Strategy>>;

struct Scenario {
    std::string label;
    TMNetwork network;
    MaterialElement element;
    Route route;
    std::map<CompartmentId, double> flows; // continuous arc id -> kg/s
    std::vector<Strategy> applied;

    bool operator==(const Scenario&) const = default;
};

Scenario apply_strategy(const Scenario& base, const Strategy& strategy);

// All combinations of picking at most one strategy per menu group, base
// included, deduplicated by label.
std::vector<Scenario> enumerate_scenarios(const Scenario& base, const StrategyMenu& menu);

struct RankedScenario {
    Scenario scenario;
    CircularityReport report;
};

// Simulates every scenario and ranks by lambda (descending, label ascending
// on ties). The head is the argmax N*.
std::vector<RankedScenario> argmax_circularity(const std::vector<Scenario>& scenarios,
                                               const Horizon& horizon, double delta, double dt,
                                               const IntegrationOptions& options = {});

} // namespace tmn
