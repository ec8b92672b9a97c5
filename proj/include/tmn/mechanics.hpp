#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "tmn/errors.hpp"

namespace tmn {

inline constexpr double kStandardGravity = 9.80665; // m/s^2

// Maps the 1-D path coordinate of a transport leg into the world frame.
enum class FrameAxis {
    XZIncline, // motion in the x-z plane, descending at incline_angle
    XAxis,     // level motion along x (e.g. a ship)
    YAxis,     // level motion along y (e.g. a garbage truck)
};

struct ArcGeometry {
    double length = 0.0;        // path length l_k in m, > 0
    double incline_angle = 0.0; // rad, |angle| < pi/2; nonzero only for XZIncline
    double elevation = 0.0;     // entry elevation h in m
    FrameAxis frame_axis = FrameAxis::XZIncline;

    // Convention: the leg ends at elevation 0, i.e. h = l * sin(angle).
    static ArcGeometry incline(double length, double angle);
    static ArcGeometry incline(double length, double angle, double elevation);
    static ArcGeometry level(double length, FrameAxis axis, double elevation = 0.0);

    void check() const; // throws InvalidGeometry

    bool operator==(const ArcGeometry&) const = default;
};

// Constant propulsion plus affine-in-speed resistance. Resistance always
// opposes motion; at rest it acts as a static hold up to resistance_constant.
struct ForceModel {
    double propulsion = 0.0;          // N, >= 0
    double resistance_constant = 0.0; // N, >= 0
    double resistance_linear = 0.0;   // N*s/m, >= 0
    double gravity = kStandardGravity;

    void check() const; // throws InvalidForceModel

    bool operator==(const ForceModel&) const = default;
};

struct SegmentState {
    double t = 0.0;     // s
    double s = 0.0;     // m, path coordinate
    double s_dot = 0.0; // m/s
};

struct EnergyBreakdown {
    double kinetic = 0.0;         // T, J
    double potential = 0.0;       // V, J
    double lagrangian = 0.0;      // L = T - V, J
    double nonconservative = 0.0; // xi, N
};

struct TrajectorySample {
    double t = 0.0;
    double s = 0.0;
    double s_dot = 0.0;
    double s_ddot = 0.0;
    double x = 0.0, y = 0.0, z = 0.0; // world position, relative to the leg's entry
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    double exit_time = 0.0; // absolute t at which s reaches the leg length
};

struct IntegrationOptions {
    double max_time = 1e6;           // simulated-seconds budget before StalledSegment
    std::size_t max_samples = 1u << 17; // stored-sample cap; stride doubles when hit
};

struct SegmentSolution {
    double exit_time = 0.0;
    double exit_velocity = 0.0;
};

// Path acceleration from Lagrange's equation on the 1-D leg coordinate:
//   m s'' = m g sin(alpha) + F - resistance   (incline frame; level frames drop
// the gravity term). Resistance is applied against the sign of s_dot, with a
// static hold at rest.
double lagrange_accel(const SegmentState& state, double total_mass,
                      const ArcGeometry& geometry, const ForceModel& forces);

EnergyBreakdown energy_breakdown(const SegmentState& state, double total_mass,
                                 const ArcGeometry& geometry, const ForceModel& forces);

// World-frame acceleration components (x'', y'', z'') of a path acceleration.
std::array<double, 3> frame_kinematics(double s_ddot, const ArcGeometry& geometry);

// World-frame position of path coordinate s, relative to the leg's entry point.
std::array<double, 3> world_position(double s, const ArcGeometry& geometry);

// Fixed-step classical 4th-order integration of the leg dynamics from
// `initial` until s reaches geometry.length. The boundary crossing is located
// by bisection over the last step down to machine resolution (well inside the
// 1e-9 * length guarantee). Stored samples are decimated once max_samples is
// reached; integration accuracy is unaffected.
Trajectory integrate_segment(const SegmentState& initial, double total_mass,
                             const ArcGeometry& geometry, const ForceModel& forces,
                             double dt, const IntegrationOptions& options = {});

// Closed-form exit time/velocity for constant net force (resistance_linear
// must be zero). Serves as the independent dual of integrate_segment.
SegmentSolution analytic_segment_solution(double total_mass, const ArcGeometry& geometry,
                                          const ForceModel& forces,
                                          const SegmentState& initial);

} // namespace tmn
