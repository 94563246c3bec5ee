#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "invwave/errors.hpp"
#include "invwave/front.hpp"
#include "invwave/model.hpp"
#include "invwave/sim.hpp"

using namespace invwave;

namespace {

KineticModel lv_default() {
    return make_builtin("lotka_volterra", {{"a", 0.5}, {"r", 1.0}, {"b", 1.0}, {"d", 1.0}});
}

FieldState state_from(const Grid1D& grid, double t,
                      const std::function<double(double)>& u_of_x,
                      const std::function<double(double)>& v_of_x) {
    FieldState s;
    s.t = t;
    s.u.resize(grid.nx);
    s.v.resize(grid.nx);
    for (std::size_t i = 0; i < grid.nx; ++i) {
        s.u[i] = u_of_x(grid.x(i));
        s.v[i] = v_of_x(grid.x(i));
    }
    return s;
}

}  // namespace

TEST_CASE("front_position: step profile") {
    const Grid1D grid{0.0, 40.0, 401};
    const double mu = 1.0;
    const FieldState s = state_from(
        grid, 0.0, [](double) { return 1.0; },
        [mu](double x) { return x <= 10.0 ? mu : 0.0; });
    const double xf = front_position(s, grid, Species::Predator, mu / 2.0);
    CHECK(std::abs(xf - 10.0) <= grid.dx());
}

TEST_CASE("front_position: exact on a linear ramp") {
    const Grid1D grid{0.0, 40.0, 401};
    const FieldState s = state_from(
        grid, 0.0, [](double) { return 1.0; },
        [](double x) { return std::max(0.0, -0.1 * (x - 20.0)); });
    const double xf = front_position(s, grid, Species::Predator, 0.5);
    CHECK(xf == doctest::Approx(15.0).epsilon(1e-12));
}

TEST_CASE("front_position: absent front is a typed error") {
    const Grid1D grid{0.0, 40.0, 101};
    const FieldState s = state_from(
        grid, 0.0, [](double) { return 1.0; }, [](double) { return 0.0; });
    CHECK_THROWS_AS(front_position(s, grid, Species::Predator, 0.5), FrontNotPresent);
}

TEST_CASE("prey front is the rightmost rising crossing") {
    const Grid1D grid{0.0, 100.0, 1001};
    // Depressed prey behind x = 30, carrying capacity ahead.
    const FieldState s = state_from(
        grid, 0.0,
        [](double x) { return x < 30.0 ? 1.0 / 3.0 : (x < 40.0 ? 1.0 / 3.0 + (x - 30.0) / 15.0 : 1.0); },
        [](double) { return 0.0; });
    const double xf = front_position(s, grid, Species::Prey, 0.5);
    CHECK(xf == doctest::Approx(32.5).epsilon(1e-10));
}

TEST_CASE("front_position is translation-equivariant by whole nodes") {
    const Grid1D grid{0.0, 100.0, 501};
    const double dx = grid.dx();
    FieldState s = state_from(
        grid, 0.0, [](double) { return 1.0; },
        [](double x) { return 1.0 / (1.0 + std::exp(2.0 * (x - 37.0))); });
    const double base = front_position(s, grid, Species::Predator, 0.5);
    for (std::size_t shift : {1u, 5u, 20u}) {
        FieldState shifted = s;
        for (std::size_t i = grid.nx; i-- > shift;) {
            shifted.v[i] = s.v[i - shift];
        }
        for (std::size_t i = 0; i < shift; ++i) {
            shifted.v[i] = s.v[0];
        }
        const double moved = front_position(shifted, grid, Species::Predator, 0.5);
        CHECK(moved - base == doctest::Approx(dx * static_cast<double>(shift)).epsilon(1e-9));
    }
}

TEST_CASE("estimate_speed: exact line") {
    FrontTrace trace;
    trace.species = Species::Predator;
    trace.level = 0.5;
    for (int k = 0; k < 30; ++k) {
        const double t = static_cast<double>(k);
        trace.points.emplace_back(t, 2.5 * t + 1.0);
    }
    const SpeedEstimate est = estimate_speed(trace, 0.0, 29.0);
    CHECK(est.c_measured == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(est.intercept == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(est.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(est.trusted);
}

TEST_CASE("estimate_speed under node-interpolation jitter") {
    // +-dx/2 uniform jitter around slope 2, dx = 0.2; frozen seed.
    std::mt19937 rng(987654321);
    std::uniform_real_distribution<double> jitter(-0.1, 0.1);
    FrontTrace trace;
    for (int k = 0; k <= 50; ++k) {
        const double t = 40.0 + static_cast<double>(k);
        trace.points.emplace_back(t, 2.0 * t + 3.0 + jitter(rng));
    }
    const SpeedEstimate est = estimate_speed(trace, 40.0, 90.0);
    CHECK(std::abs(est.c_measured - 2.0) <= 0.02);
    CHECK(est.r_squared > 0.999);
    CHECK(est.trusted);
}

TEST_CASE("estimate_speed is time-translation invariant and space-equivariant") {
    std::mt19937 rng(24601);
    std::uniform_real_distribution<double> jitter(-0.05, 0.05);
    std::vector<double> noise;
    for (int k = 0; k < 20; ++k) {
        noise.push_back(jitter(rng));
    }
    auto build = [&noise](double t0, double x0) {
        FrontTrace tr;
        for (int k = 0; k < 20; ++k) {
            const double t = t0 + static_cast<double>(k);
            tr.points.emplace_back(t, 1.7 * (t - t0) + x0 + noise[static_cast<std::size_t>(k)]);
        }
        return tr;
    };
    const SpeedEstimate a = estimate_speed(build(0.0, 0.0), 0.0, 19.0);
    const SpeedEstimate b = estimate_speed(build(100.0, 0.0), 100.0, 119.0);
    const SpeedEstimate c = estimate_speed(build(0.0, 55.0), 0.0, 19.0);
    CHECK(a.c_measured == doctest::Approx(b.c_measured).epsilon(1e-12));
    CHECK(a.c_measured == doctest::Approx(c.c_measured).epsilon(1e-12));
    CHECK(c.intercept - a.intercept == doctest::Approx(55.0).epsilon(1e-9));
}

TEST_CASE("estimate_speed needs at least 10 points in the window") {
    FrontTrace trace;
    for (int k = 0; k < 5; ++k) {
        trace.points.emplace_back(static_cast<double>(k), 2.0 * k);
    }
    CHECK_THROWS_AS(estimate_speed(trace, 0.0, 4.0), AnalysisError);
}

TEST_CASE("moving_frame_profile: equilibrium profile has zero residual") {
    const KineticModel m = lv_default();
    SimConfig cfg;
    cfg.grid = {-20.0, 20.0, 201};
    cfg.t_end = 1.0;
    cfg.snapshot_every = 1.0;
    Trajectory traj;
    traj.config = cfg;
    // phi = 1, psi = 0 except a small synthetic step so the front exists.
    FieldState s = {};
    s.t = 1.0;
    s.u.assign(cfg.grid.nx, 1.0);
    s.v.assign(cfg.grid.nx, 0.0);
    for (std::size_t i = 0; i < 50; ++i) {
        s.v[i] = 0.6;  // flat block: zero second and first differences away from the edge
    }
    traj.snapshots.push_back(s);
    const Profile prof = moving_frame_profile(traj, m, 2.0, 1.0, 0.5);
    // Away from the synthetic step, both residuals vanish: (1,0) solves the
    // profile equations for any c.
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < prof.z.size(); ++i) {
        if (i > 53) {
            worst = std::max(worst, std::max(std::abs(prof.resid_u[i]), std::abs(prof.resid_v[i])));
        }
    }
    CHECK(worst == 0.0);
}

TEST_CASE("moving_frame_profile requires a snapshot at t_ref") {
    const KineticModel m = lv_default();
    Trajectory traj;
    traj.config.grid = {-10.0, 10.0, 101};
    FieldState s = {};
    s.t = 2.0;
    s.u.assign(101, 1.0);
    s.v.assign(101, 0.0);
    traj.snapshots.push_back(s);
    CHECK_THROWS_AS(moving_frame_profile(traj, m, 2.0, 3.0, 0.5), AnalysisError);
}

TEST_CASE("persistence_check on synthetic trailing states") {
    const Grid1D grid{-100.0, 300.0, 2001};
    SimConfig cfg;
    cfg.grid = grid;
    cfg.t_end = 1.0;
    Trajectory traj;
    traj.config = cfg;

    auto push_snapshot = [&](double u_behind, double v_behind, double x_front) {
        traj.snapshots.clear();
        FieldState s = {};
        s.t = 1.0;
        s.u.resize(grid.nx);
        s.v.resize(grid.nx);
        for (std::size_t i = 0; i < grid.nx; ++i) {
            const double x = grid.x(i);
            s.u[i] = x < x_front ? u_behind : 1.0;
            s.v[i] = x < x_front ? v_behind : 0.0;
        }
        traj.snapshots.push_back(s);
    };

    FrontTrace trace;
    trace.species = Species::Predator;
    trace.level = 0.5;

    push_snapshot(1.0 / 3.0, 4.0 / 3.0, 200.0);
    const PersistenceReport good = persistence_check(traj, trace, 1.0, 2.2);
    CHECK(good.mu_check);
    CHECK(good.phi_lower_check);
    CHECK(good.phi_upper_check);
    CHECK(good.psi_upper_check);
    CHECK(good.all());
    CHECK(good.psi_trailing_min == doctest::Approx(4.0 / 3.0));
    CHECK(good.phi_trailing_max == doctest::Approx(1.0 / 3.0));

    // No predator at all: the window anchors at the right edge and the mu
    // check fails.
    push_snapshot(1.0, 0.0, -1e9);
    const PersistenceReport empty = persistence_check(traj, trace, 1.0, 2.2);
    CHECK(!empty.mu_check);
    CHECK(empty.psi_trailing_min == 0.0);

    // Predator invades but prey stays at carrying capacity: upper check fails.
    push_snapshot(1.0, 4.0 / 3.0, 200.0);
    const PersistenceReport stuck = persistence_check(traj, trace, 1.0, 2.2);
    CHECK(!stuck.phi_upper_check);
    CHECK(stuck.mu_check);

    // Trailing window escaping the grid is a typed error.
    push_snapshot(1.0 / 3.0, 4.0 / 3.0, 20.0);
    CHECK_THROWS_AS(persistence_check(traj, trace, 1.0, 2.2, 50.0, 100.0), AnalysisError);
}

TEST_CASE("v = 0 everywhere fails the mu check") {
    const Grid1D grid{0.0, 200.0, 1001};
    SimConfig cfg;
    cfg.grid = grid;
    Trajectory traj;
    traj.config = cfg;
    FieldState s = {};
    s.t = 1.0;
    s.u.assign(grid.nx, 1.0);
    s.v.assign(grid.nx, 0.0);
    traj.snapshots.push_back(s);
    FrontTrace trace;
    trace.species = Species::Predator;
    trace.level = 0.5;
    const PersistenceReport rep = persistence_check(traj, trace, 1.0, 2.2);
    CHECK(!rep.mu_check);
    CHECK(rep.psi_trailing_min == 0.0);
    CHECK(!rep.all());
}
