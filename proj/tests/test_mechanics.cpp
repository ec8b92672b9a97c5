#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "tmn/mechanics.hpp"

using namespace tmn;

namespace {

ForceModel forces_of(double propulsion, double c0, double c1 = 0.0) {
    ForceModel f;
    f.propulsion = propulsion;
    f.resistance_constant = c0;
    f.resistance_linear = c1;
    return f;
}

bool error_code(const Error& e, ErrorCode code) { return e.code() == code; }

} // namespace

TEST_CASE("path acceleration from the equation of motion") {
    SegmentState moving{0.0, 0.0, 1.0};

    SUBCASE("level truck: (F - c0) / m") {
        const double a = lagrange_accel(moving, 10000.0, ArcGeometry::incline(100.0, 0.0),
                                        forces_of(5000.0, 2000.0));
        CHECK(a == 0.3);
    }
    SUBCASE("pure gravity on a 30 degree incline") {
        const double expected = kStandardGravity * std::sin(M_PI / 6.0); // 4.903325...
        const double a = lagrange_accel(moving, 1000.0, ArcGeometry::incline(100.0, M_PI / 6.0),
                                        forces_of(500.0, 500.0));
        CHECK(a == doctest::Approx(expected).epsilon(1e-12));
        CHECK(a == doctest::Approx(4.903325).epsilon(1e-6));
    }
    SUBCASE("no forces, no motion") {
        CHECK(lagrange_accel({0.0, 0.0, 0.0}, 1.0, ArcGeometry::incline(10.0, 0.0),
                             forces_of(0.0, 0.0)) == 0.0);
    }
    SUBCASE("static resistance holds a weak drive at rest") {
        CHECK(lagrange_accel({0.0, 0.0, 0.0}, 10.0, ArcGeometry::incline(10.0, 0.0),
                             forces_of(5.0, 20.0)) == 0.0);
    }
    SUBCASE("resistance opposes backward motion") {
        const double a = lagrange_accel({0.0, 0.0, -1.0}, 10.0,
                                        ArcGeometry::incline(10.0, 0.0), forces_of(0.0, 20.0));
        CHECK(a > 0.0);
    }
    SUBCASE("nonpositive mass") {
        try {
            lagrange_accel(moving, 0.0, ArcGeometry::incline(10.0, 0.0), forces_of(1.0, 0.0));
            FAIL("expected NonpositiveMass");
        } catch (const Error& e) {
            CHECK(error_code(e, ErrorCode::NonpositiveMass));
        }
    }
}

TEST_CASE("energy breakdown") {
    SUBCASE("rest at origin with zero elevation") {
        const auto e = energy_breakdown({0.0, 0.0, 0.0}, 1.0,
                                        ArcGeometry::incline(10.0, 0.0, 0.0), forces_of(0, 0));
        CHECK(e.kinetic == 0.0);
        CHECK(e.potential == 0.0);
        CHECK(e.lagrangian == 0.0);
    }
    SUBCASE("kinetic term") {
        const auto e = energy_breakdown({0.0, 0.0, 3.0}, 2.0, ArcGeometry::incline(10.0, 0.0),
                                        forces_of(0, 0));
        CHECK(e.kinetic == 9.0);
        CHECK(e.lagrangian == e.kinetic - e.potential);
    }
    SUBCASE("potential vanishes once the descent is complete") {
        const ArcGeometry geometry = ArcGeometry::incline(50.0, 0.2); // h = l sin(alpha)
        const auto e = energy_breakdown({0.0, 50.0, 0.0}, 1.0, geometry, forces_of(0, 0));
        CHECK(e.potential == 0.0);
    }
    SUBCASE("level frames keep V constant at m g h") {
        const ArcGeometry geometry = ArcGeometry::level(50.0, FrameAxis::XAxis, 3.0);
        const auto start = energy_breakdown({0.0, 0.0, 0.0}, 2.0, geometry, forces_of(0, 0));
        const auto end = energy_breakdown({9.0, 50.0, 1.0}, 2.0, geometry, forces_of(0, 0));
        CHECK(start.potential == end.potential);
        CHECK(start.potential == 2.0 * kStandardGravity * 3.0);
    }
    SUBCASE("nonconservative force sum") {
        const auto e = energy_breakdown({0.0, 0.0, 2.0}, 1.0, ArcGeometry::incline(10.0, 0.0),
                                        forces_of(30.0, 5.0, 2.0));
        CHECK(e.nonconservative == 30.0 - (5.0 + 2.0 * 2.0));
    }
}

TEST_CASE("frame kinematics") {
    SUBCASE("incline splits into x and z") {
        const auto a = frame_kinematics(2.0, ArcGeometry::incline(10.0, M_PI / 6.0));
        CHECK(a[0] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
        CHECK(a[1] == 0.0);
        CHECK(a[2] == doctest::Approx(-1.0).epsilon(1e-15));
    }
    SUBCASE("level axes map straight through") {
        const auto ax = frame_kinematics(2.0, ArcGeometry::level(10.0, FrameAxis::XAxis));
        CHECK(ax == std::array<double, 3>{2.0, 0.0, 0.0});
        const auto ay = frame_kinematics(2.0, ArcGeometry::level(10.0, FrameAxis::YAxis));
        CHECK(ay == std::array<double, 3>{0.0, 2.0, 0.0});
    }
    SUBCASE("zero maps to zero") {
        const auto a = frame_kinematics(0.0, ArcGeometry::incline(10.0, 0.7));
        CHECK(a == std::array<double, 3>{0.0, 0.0, 0.0});
    }
}

TEST_CASE("closed-form segment solution") {
    SUBCASE("uniform acceleration from rest") {
        const auto sol = analytic_segment_solution(1.0, ArcGeometry::incline(50.0, 0.0),
                                                   forces_of(1.0, 0.0), {});
        CHECK(sol.exit_time == doctest::Approx(10.0).epsilon(1e-14));
        CHECK(sol.exit_velocity == doctest::Approx(10.0).epsilon(1e-14));
    }
    SUBCASE("uniform motion") {
        const auto sol = analytic_segment_solution(1.0, ArcGeometry::incline(100.0, 0.0),
                                                   forces_of(0.0, 0.0), {0.0, 0.0, 5.0});
        CHECK(sol.exit_time == 20.0);
        CHECK(sol.exit_velocity == 5.0);
    }
    SUBCASE("deceleration that still reaches the end") {
        // a = -1, v0 = 10, d = 18 -> first crossing at t = 2
        ForceModel f = forces_of(0.0, 10.0);
        const auto sol = analytic_segment_solution(10.0, ArcGeometry::incline(18.0, 0.0), f,
                                                   {0.0, 0.0, 10.0});
        CHECK(sol.exit_time == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(sol.exit_velocity == doctest::Approx(8.0).epsilon(1e-14));
    }
    SUBCASE("decelerating from rest never leaves") {
        CHECK_THROWS_AS(analytic_segment_solution(1.0, ArcGeometry::incline(50.0, 0.0),
                                                  forces_of(0.0, 1.0), {}),
                        Error);
        try {
            analytic_segment_solution(1.0, ArcGeometry::incline(50.0, 0.0), forces_of(0.0, 1.0),
                                      {});
        } catch (const Error& e) {
            CHECK(error_code(e, ErrorCode::UnreachableEnd));
        }
    }
    SUBCASE("stops short of the end") {
        // v0 = 1, a = -1: travels only 0.5 m of 10 m.
        ForceModel f = forces_of(0.0, 10.0);
        try {
            analytic_segment_solution(10.0, ArcGeometry::incline(10.0, 0.0), f, {0.0, 0.0, 1.0});
            FAIL("expected UnreachableEnd");
        } catch (const Error& e) {
            CHECK(error_code(e, ErrorCode::UnreachableEnd));
        }
    }
    SUBCASE("rejects linear resistance") {
        try {
            analytic_segment_solution(1.0, ArcGeometry::incline(10.0, 0.0),
                                      forces_of(10.0, 0.0, 1.0), {});
            FAIL("expected InvalidForceModel");
        } catch (const Error& e) {
            CHECK(error_code(e, ErrorCode::InvalidForceModel));
        }
    }
}

TEST_CASE("segment integration") {
    SUBCASE("constant acceleration hits the closed form") {
        const auto traj = integrate_segment({}, 1.0, ArcGeometry::incline(50.0, 0.0),
                                            forces_of(1.0, 0.0), 1e-3);
        CHECK(traj.exit_time == doctest::Approx(10.0).epsilon(1e-8));
        CHECK(traj.samples.back().s_dot == doctest::Approx(10.0).epsilon(1e-8));
        CHECK(traj.samples.back().s == doctest::Approx(50.0).epsilon(1e-9));
        CHECK(traj.samples.front().s == 0.0);
    }
    SUBCASE("linear drag against the fine-step reference and the exponential solution") {
        // m = 1000 kg, F = 3000 N, c1 = 100 N s/m, l = 500 m
        const auto traj = integrate_segment({}, 1000.0, ArcGeometry::incline(500.0, 0.0),
                                            forces_of(3000.0, 0.0, 100.0), 1e-3);
        test::PointForces p{1000.0, 3000.0, 0.0, 100.0, 0.0};
        const double reference = test::reference_exit_time(500.0, 1e-6, p);
        CHECK(std::abs(traj.exit_time - reference) / reference < 1e-6);
        const double exact = test::exact_drag_exit_time(500.0, 1000.0, 3000.0, 100.0);
        CHECK(exact == doctest::Approx(25.917800469958).epsilon(1e-11));
        CHECK(std::abs(traj.exit_time - exact) / exact < 1e-9);
    }
    SUBCASE("nonzero start time shifts the exit time") {
        const auto traj = integrate_segment({5.0, 0.0, 0.0}, 1.0, ArcGeometry::incline(50.0, 0.0),
                                            forces_of(1.0, 0.0), 1e-3);
        CHECK(traj.exit_time == doctest::Approx(15.0).epsilon(1e-9));
    }
    SUBCASE("stalls immediately without forces") {
        try {
            integrate_segment({}, 1.0, ArcGeometry::incline(10.0, 0.0), forces_of(0.0, 0.0),
                              1e-3);
            FAIL("expected StalledSegment");
        } catch (const Error& e) {
            CHECK(error_code(e, ErrorCode::StalledSegment));
        }
    }
    SUBCASE("stalls when coasting dies out") {
        // Drive below static resistance: the initial velocity decays, then holds.
        try {
            integrate_segment({0.0, 0.0, 1.0}, 1.0, ArcGeometry::incline(100.0, 0.0),
                              forces_of(0.0, 5.0), 1e-3);
            FAIL("expected StalledSegment");
        } catch (const Error& e) {
            CHECK(error_code(e, ErrorCode::StalledSegment));
        }
    }
    SUBCASE("rejects nonpositive step") {
        try {
            integrate_segment({}, 1.0, ArcGeometry::incline(10.0, 0.0), forces_of(1.0, 0.0),
                              0.0);
            FAIL("expected NonpositiveStep");
        } catch (const Error& e) {
            CHECK(error_code(e, ErrorCode::NonpositiveStep));
        }
    }
    SUBCASE("rejects an initial coordinate at or past the end") {
        try {
            integrate_segment({0.0, 10.0, 1.0}, 1.0, ArcGeometry::incline(10.0, 0.0),
                              forces_of(1.0, 0.0), 1e-3);
            FAIL("expected InvalidState");
        } catch (const Error& e) {
            CHECK(error_code(e, ErrorCode::InvalidState));
        }
    }
    SUBCASE("sample decimation keeps endpoints and monotonicity") {
        IntegrationOptions options;
        options.max_samples = 64;
        const auto traj = integrate_segment({}, 1.0, ArcGeometry::incline(5000.0, 0.0),
                                            forces_of(1.0, 0.0), 1e-3, options);
        CHECK(traj.samples.size() <= 65);
        CHECK(traj.samples.front().t == 0.0);
        CHECK(traj.samples.back().s == doctest::Approx(5000.0).epsilon(1e-9));
        for (std::size_t i = 1; i < traj.samples.size(); ++i) {
            CHECK(traj.samples[i].t > traj.samples[i - 1].t);
            CHECK(traj.samples[i].s >= traj.samples[i - 1].s);
        }
    }
}

TEST_CASE("integration properties over random constant-force segments") {
    std::mt19937 rng(7001);
    std::uniform_real_distribution<double> mass_dist(0.5, 2000.0);
    std::uniform_real_distribution<double> len_dist(5.0, 500.0);
    std::uniform_real_distribution<double> accel_dist(0.1, 3.0);
    std::uniform_real_distribution<double> angle_dist(0.0, 0.5);

    for (int i = 0; i < 100; ++i) {
        const double mass = mass_dist(rng);
        const double angle = angle_dist(rng);
        const ArcGeometry geometry = ArcGeometry::incline(len_dist(rng), angle);
        ForceModel forces;
        forces.resistance_constant = mass_dist(rng);
        forces.propulsion = forces.resistance_constant + mass * accel_dist(rng);

        const auto sol = analytic_segment_solution(mass, geometry, forces, {});
        const auto traj = integrate_segment({}, mass, geometry, forces, 1e-3);
        CHECK(std::abs(traj.exit_time - sol.exit_time) / sol.exit_time < 1e-8);
        CHECK(std::abs(traj.samples.back().s_dot - sol.exit_velocity) /
                  sol.exit_velocity < 1e-8);
    }
}

TEST_CASE("work-energy consistency on integrated segments") {
    std::mt19937 rng(7002);
    std::uniform_real_distribution<double> u(0.0, 1.0);

    for (int i = 0; i < 40; ++i) {
        const double mass = 1.0 + 500.0 * u(rng);
        const double angle = 0.45 * u(rng);
        const ArcGeometry geometry = ArcGeometry::incline(20.0 + 200.0 * u(rng), angle);
        ForceModel forces;
        forces.resistance_constant = mass * u(rng);
        forces.resistance_linear = mass / 50.0 * u(rng);
        forces.propulsion = forces.resistance_constant + mass * (0.2 + 2.0 * u(rng));

        const auto traj = integrate_segment({}, mass, geometry, forces, 1e-3);
        const double work = test::trapezoid_path_work(traj.samples, mass, geometry, forces);
        const double delta_T = test::kinetic_energy_change(traj.samples, mass);
        CHECK(std::abs(work - delta_T) / std::abs(delta_T) < 1e-5);
    }
}

TEST_CASE("frame consistency on integrated samples") {
    std::mt19937 rng(7003);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 30; ++i) {
        ArcGeometry geometry;
        const int axis = i % 3;
        if (axis == 0) {
            geometry = ArcGeometry::incline(50.0, 0.5 * u(rng));
        } else {
            geometry = ArcGeometry::level(50.0, axis == 1 ? FrameAxis::XAxis : FrameAxis::YAxis);
        }
        ForceModel forces;
        forces.propulsion = 1.0 + 10.0 * u(rng);
        forces.resistance_linear = 0.1 * u(rng);
        const auto traj = integrate_segment({}, 2.0, geometry, forces, 1e-2);
        for (const TrajectorySample& smp : traj.samples) {
            const auto world = frame_kinematics(smp.s_ddot, geometry);
            const double squared = world[0] * world[0] + world[1] * world[1] + world[2] * world[2];
            CHECK(squared == doctest::Approx(smp.s_ddot * smp.s_ddot).epsilon(1e-13));
        }
    }
}

TEST_CASE("fourth-order convergence of exit times") {
    // Exit mid-transient so the truncation error is visible above rounding.
    const double mass = 1.0, propulsion = 100.0, c1 = 20.0, length = 0.4;
    test::PointForces p{mass, propulsion, 0.0, c1, 0.0};
    const double reference = test::reference_exit_time(length, 1e-6, p);

    double previous = 0.0;
    for (const double dt : {1e-2, 5e-3, 2.5e-3}) {
        const auto traj = integrate_segment({}, mass, ArcGeometry::incline(length, 0.0),
                                            forces_of(propulsion, 0.0, c1), dt);
        const double error = std::abs(traj.exit_time - reference);
        if (previous != 0.0) {
            CHECK(previous / error >= 8.0);
        }
        previous = error;
    }
}
