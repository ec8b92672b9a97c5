#pragma once

// Test-side oracles and fixture builders. The reference integrator here is
// written independently of the library's mechanics code so the two can be
// checked against each other.

#include <cmath>
#include <random>
#include <vector>

#include "tmn/circularity.hpp"
#include "tmn/network.hpp"
#include "tmn/optimize.hpp"
#include "tmn/simulate.hpp"

namespace tmn::test {

struct PointForces {
    double mass = 1.0;
    double propulsion = 0.0;
    double resist_const = 0.0;
    double resist_linear = 0.0;
    double gravity_drive = 0.0; // m * g * sin(alpha), already resolved
};

inline double reference_accel(const PointForces& p, double v) {
    const double drive = p.propulsion + p.gravity_drive;
    double resist;
    if (v != 0.0) {
        resist = std::copysign(p.resist_const + p.resist_linear * std::abs(v), v);
    } else {
        resist = std::min(p.resist_const, std::max(-p.resist_const, drive));
    }
    return (drive - resist) / p.mass;
}

// Brute-force fine-step RK4 from rest with Kahan-compensated state updates;
// exit time located by bisection over the final step. Used as the
// ground-truth oracle for integrator accuracy and convergence checks.
inline double reference_exit_time(double length, double dt, const PointForces& p) {
    double s = 0.0, v = 0.0;
    double comp_s = 0.0, comp_v = 0.0;
    long long n = 0;
    const auto increments = [&](double s0, double v0, double h, double& ds, double& dv) {
        (void)s0;
        const double a1 = reference_accel(p, v0);
        const double v2 = v0 + 0.5 * h * a1, a2 = reference_accel(p, v2);
        const double v3 = v0 + 0.5 * h * a2, a3 = reference_accel(p, v3);
        const double v4 = v0 + h * a3, a4 = reference_accel(p, v4);
        ds = h * (v0 + 2.0 * v2 + 2.0 * v3 + v4) / 6.0;
        dv = h * (a1 + 2.0 * a2 + 2.0 * a3 + a4) / 6.0;
    };
    while (true) {
        double ds, dv;
        increments(s, v, dt, ds, dv);
        if (s + ds >= length) {
            double lo = 0.0, hi = dt;
            for (int i = 0; i < 100; ++i) {
                const double mid = 0.5 * (lo + hi);
                if (mid == lo || mid == hi) break;
                increments(s, v, mid, ds, dv);
                (s + ds < length ? lo : hi) = mid;
            }
            return static_cast<double>(n) * dt + 0.5 * (lo + hi);
        }
        double y = ds - comp_s, t = s + y;
        comp_s = (t - s) - y;
        s = t;
        y = dv - comp_v;
        t = v + y;
        comp_v = (t - v) - y;
        v = t;
        ++n;
    }
}

// Exit time for linear drag from rest via the exponential closed form,
// solved by bisection: s(t) = vinf*t - vinf*tau*(1 - exp(-t/tau)).
inline double exact_drag_exit_time(double length, double mass, double net_force,
                                   double resist_linear) {
    const double vinf = net_force / resist_linear;
    const double tau = mass / resist_linear;
    double lo = 0.0, hi = 1e9;
    for (int i = 0; i < 300; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double s = vinf * mid - vinf * tau * (1.0 - std::exp(-mid / tau));
        (s < length ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Trapezoidal path work over logged samples: integral of
// (m g sin(alpha) + xi(v)) ds with xi recomputed here, not taken from the
// library. Compared against the kinetic-energy change of the same samples.
inline double trapezoid_path_work(const std::vector<TrajectorySample>& samples,
                                  double total_mass, const ArcGeometry& geometry,
                                  const ForceModel& forces) {
    const double gravity_drive =
        geometry.frame_axis == FrameAxis::XZIncline
            ? total_mass * forces.gravity * std::sin(geometry.incline_angle)
            : 0.0;
    const auto integrand = [&](double v) {
        const double drive = forces.propulsion + gravity_drive;
        double resist;
        if (v != 0.0) {
            resist = std::copysign(
                forces.resistance_constant + forces.resistance_linear * std::abs(v), v);
        } else {
            resist = std::min(forces.resistance_constant,
                              std::max(-forces.resistance_constant, drive));
        }
        return gravity_drive + forces.propulsion - resist;
    };
    double work = 0.0;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        const double ds = samples[i].s - samples[i - 1].s;
        work += 0.5 * (integrand(samples[i].s_dot) + integrand(samples[i - 1].s_dot)) * ds;
    }
    return work;
}

inline double kinetic_energy_change(const std::vector<TrajectorySample>& samples,
                                    double total_mass) {
    const double v0 = samples.front().s_dot;
    const double v1 = samples.back().s_dot;
    return 0.5 * total_mass * (v1 * v1 - v0 * v0);
}

// The paper-style linear chain: reservoir -> truck -> manufacturer -> ship ->
// use -> garbage truck -> landfill, with constant-force arcs so closed-form
// milestone oracles stay available.
struct LinearFixture {
    TMNetwork network;
    MaterialElement element;
    Route route;
    std::map<CompartmentId, double> flows;

    Scenario scenario(const std::string& label = "linear") const {
        return {label, network, element, route, flows, {}};
    }
};

inline LinearFixture make_linear_fixture(double element_mass = 1.0,
                                         double renewable_fraction = 0.0,
                                         double manufacturer_dwell = 3600.0,
                                         double use_dwell = 0.0) {
    ForceModel truck;
    truck.propulsion = 5000.0;
    truck.resistance_constant = 2000.0;
    ForceModel ship;
    ship.propulsion = 3000.0;
    ship.resistance_constant = 2000.0;

    std::vector<Compartment> comps{
        Compartment::node(1, CompartmentRole::NonrenewableReservoir),
        Compartment::node(2, CompartmentRole::Manufacturer),
        Compartment::node(3, CompartmentRole::UseStage),
        Compartment::node(4, CompartmentRole::Landfill),
        Compartment::arc(5, 1, 2, CompartmentRole::TransportBatch,
                         ArcGeometry::incline(1e4, 0.0), 1e4 - element_mass, truck),
        Compartment::arc(6, 2, 3, CompartmentRole::TransportBatch,
                         ArcGeometry::level(1e6, FrameAxis::XAxis), 1e5 - element_mass, ship),
        Compartment::arc(7, 3, 4, CompartmentRole::TransportBatch,
                         ArcGeometry::level(1e3, FrameAxis::YAxis), 1e4 - element_mass, truck),
    };

    LinearFixture f;
    f.network = build_network(std::move(comps), "beta");
    f.element = {element_mass, "beta", renewable_fraction};
    f.route.sequence = {1, 5, 2, 6, 3, 7, 4};
    f.route.dwell_durations = {{2, manufacturer_dwell}, {3, use_dwell}};
    return f;
}

// Random connected chain scenarios whose arcs always make forward progress.
struct ScenarioGenerator {
    std::mt19937 rng;

    explicit ScenarioGenerator(unsigned seed) : rng(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    }
    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

    Scenario make(const std::string& label) {
        const int inner = pick(3); // 0..2 intermediate nodes
        const int node_count = 2 + inner;
        std::vector<Compartment> comps;
        Route route;

        const CompartmentRole sources[] = {CompartmentRole::NonrenewableReservoir,
                                           CompartmentRole::RenewableReservoir};
        const CompartmentRole middles[] = {CompartmentRole::Manufacturer,
                                           CompartmentRole::UseStage,
                                           CompartmentRole::RepairStage};
        const CompartmentRole sinks[] = {CompartmentRole::Landfill,
                                         CompartmentRole::Incinerator,
                                         CompartmentRole::Environment};

        for (int i = 0; i < node_count; ++i) {
            CompartmentRole role;
            if (i == 0) {
                role = sources[pick(2)];
            } else if (i == node_count - 1) {
                role = sinks[pick(3)];
            } else {
                role = middles[pick(3)];
            }
            comps.push_back(Compartment::node(i + 1, role));
            route.sequence.push_back(i + 1);
            if (i > 0 && i < node_count - 1) {
                route.dwell_durations[i + 1] = uniform(0.5, 100.0);
            }
        }

        const double element_mass = uniform(0.1, 10.0);
        for (int i = 0; i < node_count - 1; ++i) {
            const int arc_id = node_count + 1 + i;
            const double carrier = uniform(10.0, 500.0);
            const double total = carrier + element_mass;
            const double target_accel = uniform(0.2, 2.0);

            ArcGeometry geometry;
            switch (pick(3)) {
                case 0: geometry = ArcGeometry::incline(uniform(10.0, 200.0),
                                                        uniform(0.0, 0.4)); break;
                case 1: geometry = ArcGeometry::level(uniform(10.0, 200.0),
                                                      FrameAxis::XAxis); break;
                default: geometry = ArcGeometry::level(uniform(10.0, 200.0),
                                                       FrameAxis::YAxis); break;
            }

            ForceModel forces;
            forces.resistance_constant = uniform(0.0, total);
            forces.resistance_linear = uniform(0.0, total / 50.0);
            // F - c0 = m_tot * a keeps every start (and restart) feasible.
            forces.propulsion = forces.resistance_constant + total * target_accel;
            comps.push_back(Compartment::arc(arc_id, i + 1, i + 2,
                                             CompartmentRole::TransportBatch, geometry,
                                             carrier, forces));
            route.sequence.insert(route.sequence.begin() + (2 * i + 1), arc_id);
        }

        Scenario scenario;
        scenario.label = label;
        scenario.network = build_network(std::move(comps), "beta");
        scenario.element = {element_mass, "beta", uniform(0.0, 1.0)};
        scenario.route = route;
        return scenario;
    }
};

} // namespace tmn::test
