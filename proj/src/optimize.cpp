#include "tmn/optimize.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace tmn {

namespace {

std::string format_fraction(double value) {
    std::ostringstream oss;
    oss << value;
    return oss.str();
}

Scenario apply_reduce_renewable(Scenario scenario, const ReduceRenewable& reduce) {
    if (!(reduce.fraction >= 0.0) || !(reduce.fraction <= 1.0)) {
        fail(ErrorCode::InvalidFraction, "renewable fraction must lie in [0, 1]");
    }
    scenario.element.renewable_fraction = reduce.fraction;
    return scenario;
}

Scenario apply_reduce_material(Scenario scenario, const ReduceMaterial& reduce) {
    if (!(reduce.factor > 0.0) || !(reduce.factor <= 1.0)) {
        fail(ErrorCode::InvalidFraction, "material factor must lie in (0, 1]");
    }
    scenario.element.mass *= reduce.factor;
    return scenario;
}

Scenario apply_insert_repair(Scenario scenario, const InsertRepair& repair) {
    auto& seq = scenario.route.sequence;
    if (seq.size() < 3) {
        fail(ErrorCode::RewireConflict, "route has no collection arc to replace");
    }
    if (!(repair.second_use_dwell >= 0.0)) {
        fail(ErrorCode::NegativeWeight, "second-use dwell must be >= 0 s");
    }
    const CompartmentId terminal = seq[seq.size() - 1];
    const CompartmentId replaced_arc = seq[seq.size() - 2];
    const CompartmentId use_node = seq[seq.size() - 3];
    const Compartment& replaced = scenario.network.at(replaced_arc);

    const auto expect_arc = [&](CompartmentId id, CompartmentId from, CompartmentId to,
                                const char* what) -> Compartment {
        if (const Compartment* existing = scenario.network.find(id)) {
            if (!existing->is_arc() || existing->origin != from || existing->destination != to) {
                fail(ErrorCode::RewireConflict,
                     std::string(what) + " arc " + std::to_string(id) +
                         " exists but does not connect " + std::to_string(from) + " -> " +
                         std::to_string(to));
            }
            return *existing;
        }
        // Absent arcs inherit the collection arc's transport characteristics.
        return Compartment::arc(id, from, to, replaced.role, *replaced.geometry,
                                replaced.carrier_mass, *replaced.forces);
    };

    Compartment repair_node;
    if (const Compartment* existing = scenario.network.find(repair.repair_node)) {
        if (!existing->is_node()) {
            fail(ErrorCode::RewireConflict,
                 "repair compartment " + std::to_string(repair.repair_node) + " is an arc");
        }
        repair_node = *existing;
    } else {
        repair_node = Compartment::node(repair.repair_node, CompartmentRole::RepairStage);
    }
    const Compartment inbound =
        expect_arc(repair.inbound_arc, use_node, repair.repair_node, "inbound");
    const Compartment outbound =
        expect_arc(repair.outbound_arc, repair.repair_node, terminal, "outbound");

    // Rebuild the network without the replaced arc, mirroring the paper's
    // repair configuration which drops the direct collection arc.
    std::vector<Compartment> compartments;
    compartments.reserve(scenario.network.size() + 2);
    for (const Compartment& c : scenario.network.compartments()) {
        if (c.id != replaced_arc) compartments.push_back(c);
    }
    const auto add_if_absent = [&](const Compartment& c) {
        for (const Compartment& existing : compartments) {
            if (existing.id == c.id) return;
        }
        compartments.push_back(c);
    };
    add_if_absent(repair_node);
    add_if_absent(inbound);
    add_if_absent(outbound);
    scenario.network = build_network(std::move(compartments), scenario.network.material());

    seq.pop_back();
    seq.pop_back();
    seq.push_back(repair.inbound_arc);
    seq.push_back(repair.repair_node);
    seq.push_back(repair.outbound_arc);
    seq.push_back(terminal);
    scenario.route.dwell_durations[repair.repair_node] = repair.second_use_dwell;
    scenario.flows.erase(replaced_arc);

    validate_route(scenario.network, scenario.route);
    return scenario;
}

} // namespace

std::string strategy_tag(const Strategy& strategy) {
    return std::visit(
        [](const auto& s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ReduceRenewable>) {
                return "rr=" + format_fraction(s.fraction);
            } else if constexpr (std::is_same_v<T, ReduceMaterial>) {
                return "rm=" + format_fraction(s.factor);
            } else {
                return "repair";
            }
        },
        strategy);
}

Scenario apply_strategy(const Scenario& base, const Strategy& strategy) {
    Scenario result = std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ReduceRenewable>) {
                return apply_reduce_renewable(base, s);
            } else if constexpr (std::is_same_v<T, ReduceMaterial>) {
                return apply_reduce_material(base, s);
            } else {
                return apply_insert_repair(base, s);
            }
        },
        strategy);
    result.label = base.label + "+" + strategy_tag(strategy);
    result.applied.push_back(strategy);
    return result;
}

std::vector<Scenario> enumerate_scenarios(const Scenario& base, const StrategyMenu& menu) {
    std::vector<Scenario> scenarios{base};
    for (const auto& group : menu) {
        const std::size_t current = scenarios.size();
        for (std::size_t i = 0; i < current; ++i) {
            for (const Strategy& strategy : group) {
                scenarios.push_back(apply_strategy(scenarios[i], strategy));
            }
        }
    }
    std::set<std::string> seen;
    std::vector<Scenario> unique;
    unique.reserve(scenarios.size());
    for (Scenario& s : scenarios) {
        if (seen.insert(s.label).second) unique.push_back(std::move(s));
    }
    return unique;
}

std::vector<RankedScenario> argmax_circularity(const std::vector<Scenario>& scenarios,
                                               const Horizon& horizon, double delta, double dt,
                                               const IntegrationOptions& options) {
    if (scenarios.empty()) {
        fail(ErrorCode::InvalidState, "argmax needs at least one scenario");
    }
    std::vector<RankedScenario> ranked;
    ranked.reserve(scenarios.size());
    for (const Scenario& scenario : scenarios) {
        try {
            const JourneyLog log =
                run_journey(scenario.network, scenario.element, scenario.route, dt, options);
            ranked.push_back(
                {scenario, circularity(log, scenario.network, scenario.flows, horizon, delta)});
        } catch (const Error& e) {
            fail(e.code(), "scenario '" + scenario.label + "': " + e.what());
        }
    }
    std::sort(ranked.begin(), ranked.end(), [](const RankedScenario& a, const RankedScenario& b) {
        if (a.report.lambda != b.report.lambda) return a.report.lambda > b.report.lambda;
        return a.scenario.label < b.scenario.label;
    });
    return ranked;
}

} // namespace tmn
