#include "tmn/simulate.hpp"

#include <cmath>
#include <string>

namespace tmn {

const char* to_string(JourneyEventKind kind) {
    switch (kind) {
        case JourneyEventKind::ExitNode: return "ExitNode";
        case JourneyEventKind::EnterNode: return "EnterNode";
        case JourneyEventKind::ExitReservoirNonrenewable: return "ExitReservoirNonrenewable";
        case JourneyEventKind::EnterLandfill: return "EnterLandfill";
        case JourneyEventKind::EnterIncinerator: return "EnterIncinerator";
        case JourneyEventKind::EnterEnvironment: return "EnterEnvironment";
    }
    return "Unknown";
}

bool is_classification(JourneyEventKind kind) {
    return kind != JourneyEventKind::ExitNode && kind != JourneyEventKind::EnterNode;
}

void MaterialElement::check() const {
    if (!(mass > 0.0) || !std::isfinite(mass)) {
        fail(ErrorCode::NonpositiveMass, "material mass must be > 0 kg");
    }
    if (!(renewable_fraction >= 0.0) || !(renewable_fraction <= 1.0)) {
        fail(ErrorCode::InvalidFraction, "renewable fraction must lie in [0, 1]");
    }
}

void validate_route(const TMNetwork& net, const Route& route) {
    const auto& seq = route.sequence;
    if (seq.empty()) {
        fail(ErrorCode::RouteMismatch, "route sequence is empty");
    }
    if (seq.size() % 2 == 0) {
        fail(ErrorCode::RouteMismatch, "route must start and end on node compartments");
    }
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const Compartment& c = net.at(seq[i]);
        const bool want_node = (i % 2 == 0);
        if (want_node != c.is_node()) {
            fail(ErrorCode::RouteMismatch,
                 "route position " + std::to_string(i) + " expects a " +
                     (want_node ? std::string("node") : std::string("arc")) +
                     ", got compartment " + std::to_string(c.id));
        }
        if (!want_node) {
            if (c.origin != seq[i - 1] || c.destination != seq[i + 1]) {
                fail(ErrorCode::RouteMismatch,
                     "arc " + std::to_string(c.id) + " does not connect route nodes " +
                         std::to_string(seq[i - 1]) + " -> " + std::to_string(seq[i + 1]));
            }
        }
    }
    for (const auto& [node, dwell] : route.dwell_durations) {
        if (!(dwell >= 0.0)) {
            fail(ErrorCode::NegativeWeight,
                 "dwell duration at node " + std::to_string(node) + " must be >= 0 s");
        }
    }
}

namespace {

double dwell_at(const Route& route, CompartmentId node) {
    const auto it = route.dwell_durations.find(node);
    return it == route.dwell_durations.end() ? 0.0 : it->second;
}

// Labels the first boundary instants t0..t4 and the terminal entry t5.
std::map<std::string, double> label_milestones(const std::vector<JourneyEvent>& events) {
    std::map<std::string, double> milestones;
    int next = 0;
    for (const JourneyEvent& ev : events) {
        if (!is_classification(ev.kind) && next <= 4) {
            milestones["t" + std::to_string(next)] = ev.time;
            ++next;
        }
        if (milestones.find("t5") == milestones.end() &&
            (ev.kind == JourneyEventKind::EnterLandfill ||
             ev.kind == JourneyEventKind::EnterIncinerator ||
             ev.kind == JourneyEventKind::EnterEnvironment)) {
            milestones["t5"] = ev.time;
        }
    }
    return milestones;
}

} // namespace

JourneyLog run_journey(const TMNetwork& net, const MaterialElement& element,
                       const Route& route, double dt, const IntegrationOptions& options) {
    element.check();
    if (!(dt > 0.0)) {
        fail(ErrorCode::NonpositiveStep, "simulation step must be > 0 s");
    }
    validate_route(net, route);

    JourneyLog log;
    const auto& seq = route.sequence;
    const double mass = element.mass;

    const auto emit_exit = [&](const Compartment& node, double time) {
        log.events.push_back({time, node.id, JourneyEventKind::ExitNode, mass});
        const double nonrenewable = (1.0 - element.renewable_fraction) * mass;
        if (is_unsustainable_source(node.role) && nonrenewable > 0.0) {
            log.events.push_back(
                {time, node.id, JourneyEventKind::ExitReservoirNonrenewable, nonrenewable});
        }
    };
    const auto emit_enter = [&](const Compartment& node, double time) {
        log.events.push_back({time, node.id, JourneyEventKind::EnterNode, mass});
        switch (node.role) {
            case CompartmentRole::Landfill:
                log.events.push_back({time, node.id, JourneyEventKind::EnterLandfill, mass});
                break;
            case CompartmentRole::Incinerator:
                log.events.push_back({time, node.id, JourneyEventKind::EnterIncinerator, mass});
                break;
            case CompartmentRole::Environment:
                log.events.push_back({time, node.id, JourneyEventKind::EnterEnvironment, mass});
                break;
            default:
                break;
        }
    };

    double clock = 0.0;             // departure from the first node defines t = 0
    double path_offset = 0.0;       // cumulative length of completed arcs
    for (std::size_t i = 1; i + 1 < seq.size(); i += 2) {
        const Compartment& from = net.at(seq[i - 1]);
        const Compartment& arc = net.at(seq[i]);
        const Compartment& to = net.at(seq[i + 1]);

        emit_exit(from, clock);

        const double total_mass = arc.carrier_mass + mass;
        SegmentState depart;
        depart.t = clock;
        depart.s = 0.0;
        depart.s_dot = 0.0;
        Trajectory traj;
        try {
            traj = integrate_segment(depart, total_mass, *arc.geometry, *arc.forces, dt, options);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::StalledSegment) {
                fail(ErrorCode::StalledSegment,
                     "arc " + std::to_string(arc.id) + ": " + e.what());
            }
            throw;
        }

        const double arrival = traj.exit_time;
        for (TrajectorySample& smp : traj.samples) {
            smp.s += path_offset; // global-cumulative path coordinate
        }
        path_offset += arc.geometry->length;
        log.trajectories.emplace(arc.id, std::move(traj));

        emit_enter(to, arrival);
        // Arrival is an instantaneous stop; the dwell keys the next departure.
        clock = arrival;
        if (i + 2 < seq.size()) {
            clock += dwell_at(route, to.id);
        }
    }

    log.milestone_times = label_milestones(log.events);
    return log;
}

std::map<std::string, double> milestone_times(const JourneyLog& log) {
    if (log.milestone_times.find("t5") == log.milestone_times.end()) {
        fail(ErrorCode::MissingMilestone,
             "journey never enters a landfill, incinerator, or environment compartment");
    }
    return log.milestone_times;
}

} // namespace tmn
