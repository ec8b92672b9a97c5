#include "tmn/circularity.hpp"

#include <cmath>
#include <string>

namespace tmn {

Horizon Horizon::at(double phi) {
    if (!(phi > 0.0) || !std::isfinite(phi)) {
        fail(ErrorCode::InvalidHorizon, "a bounded horizon must be > 0 s");
    }
    Horizon h;
    h.bounded_ = true;
    h.phi_ = phi;
    return h;
}

double unsustainable_batch_mass(const JourneyLog& log, const Horizon& horizon) {
    double total = 0.0;
    for (const JourneyEvent& ev : log.events) {
        if (is_classification(ev.kind) && horizon.contains(ev.time)) {
            total += ev.mass;
        }
    }
    return total;
}

double unsustainable_continuous_flow(const TMNetwork& net,
                                     const std::map<CompartmentId, double>& flows) {
    double total = 0.0;
    for (const auto& [id, rate] : flows) {
        const Compartment& arc = net.at(id);
        if (!arc.is_arc() || arc.role != CompartmentRole::TransportContinuous) {
            fail(ErrorCode::RoleMismatch,
                 "flow rate assigned to compartment " + std::to_string(id) +
                     " which is not a continuous transport arc");
        }
        if (rate < 0.0) {
            fail(ErrorCode::NegativeWeight,
                 "flow rate on arc " + std::to_string(id) + " must be >= 0 kg/s");
        }
        if (is_unsustainable_source(net.at(arc.origin).role)) total += rate;
        if (is_unsustainable_sink(net.at(arc.destination).role)) total += rate;
    }
    return total;
}

CircularityReport circularity(const JourneyLog& log, const TMNetwork& net,
                              const std::map<CompartmentId, double>& flows,
                              const Horizon& horizon, double delta) {
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        fail(ErrorCode::NonpositiveDelta, "delta must be > 0 s");
    }

    CircularityReport report;
    report.horizon = horizon;
    report.delta = delta;
    for (const JourneyEvent& ev : log.events) {
        if (is_classification(ev.kind) && horizon.contains(ev.time)) {
            report.batch_contributions.emplace_back(ev, ev.mass);
        }
    }
    report.continuous_contribution = unsustainable_continuous_flow(net, flows) * delta;

    double batch_total = 0.0;
    for (const auto& [ev, contributed] : report.batch_contributions) {
        batch_total += contributed;
    }
    report.lambda = -(batch_total + report.continuous_contribution);
    return report;
}

double life_extension(const JourneyLog& log_a, const JourneyLog& log_b) {
    const auto t5_of = [](const JourneyLog& log) {
        const auto it = log.milestone_times.find("t5");
        if (it == log.milestone_times.end()) {
            fail(ErrorCode::MissingMilestone,
                 "journey never enters a terminal compartment, no t5 milestone");
        }
        return it->second;
    };
    return t5_of(log_b) - t5_of(log_a);
}

} // namespace tmn
