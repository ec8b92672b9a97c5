#include "tmn/mechanics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace tmn {

namespace {

constexpr double kHalfPi = 1.5707963267948966;

// Driving force along +s: propulsion plus the gravity component on an incline.
double drive_force(double total_mass, const ArcGeometry& geometry, const ForceModel& forces) {
    double drive = forces.propulsion;
    if (geometry.frame_axis == FrameAxis::XZIncline) {
        drive += total_mass * forces.gravity * std::sin(geometry.incline_angle);
    }
    return drive;
}

// Signed resistance. For |s_dot| > 0 it opposes motion with magnitude
// c0 + c1*|s_dot|; at rest it cancels the drive up to the static limit c0,
// which keeps the force continuous as a start from rest gets under way.
double resistance_force(const ForceModel& forces, double s_dot, double drive) {
    if (s_dot != 0.0) {
        return std::copysign(
            forces.resistance_constant + forces.resistance_linear * std::abs(s_dot), s_dot);
    }
    return std::clamp(drive, -forces.resistance_constant, forces.resistance_constant);
}

double accel_at(double s_dot, double total_mass, const ArcGeometry& geometry,
                const ForceModel& forces) {
    const double drive = drive_force(total_mass, geometry, forces);
    return (drive - resistance_force(forces, s_dot, drive)) / total_mass;
}

void check_mass(double total_mass) {
    if (!(total_mass > 0.0)) {
        fail(ErrorCode::NonpositiveMass,
             "total mass must be > 0 kg, got " + std::to_string(total_mass));
    }
}

struct Derivative {
    double ds;
    double dv;
};

} // namespace

ArcGeometry ArcGeometry::incline(double length, double angle) {
    return incline(length, angle, length * std::sin(angle));
}

ArcGeometry ArcGeometry::incline(double length, double angle, double elevation) {
    ArcGeometry g;
    g.length = length;
    g.incline_angle = angle;
    g.elevation = elevation;
    g.frame_axis = FrameAxis::XZIncline;
    g.check();
    return g;
}

ArcGeometry ArcGeometry::level(double length, FrameAxis axis, double elevation) {
    ArcGeometry g;
    g.length = length;
    g.incline_angle = 0.0;
    g.elevation = elevation;
    g.frame_axis = axis;
    g.check();
    return g;
}

void ArcGeometry::check() const {
    if (!(length > 0.0)) {
        fail(ErrorCode::InvalidGeometry, "path length must be > 0 m");
    }
    if (!(std::abs(incline_angle) < kHalfPi)) {
        fail(ErrorCode::InvalidGeometry, "|incline angle| must be < pi/2");
    }
    if (frame_axis != FrameAxis::XZIncline && incline_angle != 0.0) {
        fail(ErrorCode::InvalidGeometry, "level frame axes require a zero incline angle");
    }
    if (!std::isfinite(length) || !std::isfinite(incline_angle) || !std::isfinite(elevation)) {
        fail(ErrorCode::InvalidGeometry, "geometry fields must be finite");
    }
}

void ForceModel::check() const {
    if (!(propulsion >= 0.0) || !(resistance_constant >= 0.0) || !(resistance_linear >= 0.0)) {
        fail(ErrorCode::InvalidForceModel, "force coefficients must be >= 0");
    }
    if (!std::isfinite(propulsion) || !std::isfinite(resistance_constant) ||
        !std::isfinite(resistance_linear) || !std::isfinite(gravity)) {
        fail(ErrorCode::InvalidForceModel, "force coefficients must be finite");
    }
}

double lagrange_accel(const SegmentState& state, double total_mass,
                      const ArcGeometry& geometry, const ForceModel& forces) {
    check_mass(total_mass);
    return accel_at(state.s_dot, total_mass, geometry, forces);
}

EnergyBreakdown energy_breakdown(const SegmentState& state, double total_mass,
                                 const ArcGeometry& geometry, const ForceModel& forces) {
    check_mass(total_mass);
    EnergyBreakdown e;
    e.kinetic = 0.5 * total_mass * state.s_dot * state.s_dot;
    if (geometry.frame_axis == FrameAxis::XZIncline) {
        e.potential = total_mass * forces.gravity *
                      (geometry.elevation - state.s * std::sin(geometry.incline_angle));
    } else {
        e.potential = total_mass * forces.gravity * geometry.elevation;
    }
    e.lagrangian = e.kinetic - e.potential;
    const double drive = drive_force(total_mass, geometry, forces);
    e.nonconservative = forces.propulsion - resistance_force(forces, state.s_dot, drive);
    return e;
}

std::array<double, 3> frame_kinematics(double s_ddot, const ArcGeometry& geometry) {
    switch (geometry.frame_axis) {
        case FrameAxis::XZIncline:
            return {s_ddot * std::cos(geometry.incline_angle), 0.0,
                    -s_ddot * std::sin(geometry.incline_angle)};
        case FrameAxis::XAxis:
            return {s_ddot, 0.0, 0.0};
        case FrameAxis::YAxis:
            return {0.0, s_ddot, 0.0};
    }
    return {0.0, 0.0, 0.0};
}

std::array<double, 3> world_position(double s, const ArcGeometry& geometry) {
    switch (geometry.frame_axis) {
        case FrameAxis::XZIncline:
            return {s * std::cos(geometry.incline_angle), 0.0,
                    geometry.elevation - s * std::sin(geometry.incline_angle)};
        case FrameAxis::XAxis:
            return {s, 0.0, geometry.elevation};
        case FrameAxis::YAxis:
            return {0.0, s, geometry.elevation};
    }
    return {0.0, 0.0, 0.0};
}

namespace {

// One classical RK4 step of (s' = v, v' = a(v)) over h. The acceleration for
// this force family depends on v only, but the staging is kept general.
SegmentState rk4_step(const SegmentState& st, double h, double total_mass,
                      const ArcGeometry& geometry, const ForceModel& forces) {
    const auto eval = [&](double v) -> Derivative {
        return {v, accel_at(v, total_mass, geometry, forces)};
    };
    const Derivative k1 = eval(st.s_dot);
    const Derivative k2 = eval(st.s_dot + 0.5 * h * k1.dv);
    const Derivative k3 = eval(st.s_dot + 0.5 * h * k2.dv);
    const Derivative k4 = eval(st.s_dot + h * k3.dv);
    SegmentState out;
    out.t = st.t + h;
    out.s = st.s + h * (k1.ds + 2.0 * k2.ds + 2.0 * k3.ds + k4.ds) / 6.0;
    out.s_dot = st.s_dot + h * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv) / 6.0;
    return out;
}

} // namespace

Trajectory integrate_segment(const SegmentState& initial, double total_mass,
                             const ArcGeometry& geometry, const ForceModel& forces,
                             double dt, const IntegrationOptions& options) {
    check_mass(total_mass);
    geometry.check();
    forces.check();
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        fail(ErrorCode::NonpositiveStep, "integration step must be > 0 s");
    }
    const double length = geometry.length;
    if (!(initial.s >= 0.0) || !(initial.s < length)) {
        fail(ErrorCode::InvalidState, "initial path coordinate must lie in [0, length)");
    }
    if (!std::isfinite(initial.t) || !std::isfinite(initial.s_dot)) {
        fail(ErrorCode::InvalidState, "initial state must be finite");
    }

    const auto sample_of = [&](const SegmentState& st) {
        TrajectorySample smp;
        smp.t = st.t;
        smp.s = st.s;
        smp.s_dot = st.s_dot;
        smp.s_ddot = accel_at(st.s_dot, total_mass, geometry, forces);
        const auto pos = world_position(st.s, geometry);
        smp.x = pos[0];
        smp.y = pos[1];
        smp.z = pos[2];
        return smp;
    };

    Trajectory traj;
    traj.samples.reserve(std::min<std::size_t>(options.max_samples, 4096));
    traj.samples.push_back(sample_of(initial));

    SegmentState state = initial;
    std::size_t steps = 0;
    std::size_t stride = 1;

    while (true) {
        // A state that cannot start (or restart) forward motion never exits:
        // the dynamics are autonomous in v and the drive is constant.
        if (state.s_dot <= 0.0 &&
            accel_at(0.0, total_mass, geometry, forces) <= 0.0) {
            fail(ErrorCode::StalledSegment,
                 "no forward progress possible at t = " + std::to_string(state.t));
        }
        if (state.t - initial.t > options.max_time) {
            fail(ErrorCode::StalledSegment,
                 "segment incomplete after max_time = " + std::to_string(options.max_time) + " s");
        }

        SegmentState trial = rk4_step(state, dt, total_mass, geometry, forces);
        if (trial.s >= length) {
            // Bisect the step size until the bracket collapses; s is monotone
            // in h across the crossing.
            double lo = 0.0;
            double hi = dt;
            for (int iter = 0; iter < 100; ++iter) {
                const double mid = 0.5 * (lo + hi);
                if (mid == lo || mid == hi) break;
                const SegmentState probe = rk4_step(state, mid, total_mass, geometry, forces);
                (probe.s < length ? lo : hi) = mid;
            }
            SegmentState crossing = rk4_step(state, 0.5 * (lo + hi), total_mass, geometry, forces);
            if (std::abs(crossing.s - length) > 1e-9 * length) {
                fail(ErrorCode::StalledSegment,
                     "boundary bisection failed to localise the crossing");
            }
            traj.samples.push_back(sample_of(crossing));
            traj.exit_time = crossing.t;
            return traj;
        }

        state = trial;
        ++steps;
        // Keep t free of additive drift over long legs.
        state.t = initial.t + static_cast<double>(steps) * dt;

        if (steps % stride == 0) {
            if (traj.samples.size() >= options.max_samples) {
                // Halve the retained history and double the stride.
                std::vector<TrajectorySample> kept;
                kept.reserve(traj.samples.size() / 2 + 1);
                for (std::size_t i = 0; i < traj.samples.size(); i += 2) {
                    kept.push_back(traj.samples[i]);
                }
                traj.samples.swap(kept);
                stride *= 2;
                if (steps % stride != 0) continue;
            }
            traj.samples.push_back(sample_of(state));
        }
    }
}

SegmentSolution analytic_segment_solution(double total_mass, const ArcGeometry& geometry,
                                          const ForceModel& forces,
                                          const SegmentState& initial) {
    check_mass(total_mass);
    geometry.check();
    forces.check();
    if (forces.resistance_linear != 0.0) {
        fail(ErrorCode::InvalidForceModel,
             "closed-form solution requires zero velocity-linear resistance");
    }
    if (initial.s_dot < 0.0) {
        fail(ErrorCode::InvalidState, "closed form covers forward transport only");
    }
    const double distance = geometry.length - initial.s;
    if (!(distance > 0.0)) {
        fail(ErrorCode::InvalidState, "initial path coordinate must lie before the leg end");
    }

    const double drive = drive_force(total_mass, geometry, forces);
    const double accel = (drive - forces.resistance_constant) / total_mass;
    const double v0 = initial.s_dot;

    if (v0 == 0.0 && accel <= 0.0) {
        fail(ErrorCode::UnreachableEnd, "segment cannot start from rest");
    }
    const double discriminant = v0 * v0 + 2.0 * accel * distance;
    if (discriminant < 0.0) {
        fail(ErrorCode::UnreachableEnd, "element stops before the leg end");
    }
    const double exit_velocity = std::sqrt(discriminant);
    const double denom = v0 + exit_velocity;
    if (denom <= 0.0) {
        fail(ErrorCode::UnreachableEnd, "element stops exactly at rest before the leg end");
    }
    // t* = 2d / (v0 + sqrt(v0^2 + 2 a d)) is stable for every sign of a.
    const double duration = 2.0 * distance / denom;
    return {initial.t + duration, exit_velocity};
}

} // namespace tmn
