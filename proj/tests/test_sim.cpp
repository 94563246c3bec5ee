#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>

#include "invwave/errors.hpp"
#include "invwave/model.hpp"
#include "invwave/sim.hpp"

using namespace invwave;

namespace {

KineticModel lv_default() {
    return make_builtin("lotka_volterra", {{"a", 0.5}, {"r", 1.0}, {"b", 1.0}, {"d", 1.0}});
}

SimConfig small_config() {
    SimConfig cfg;
    cfg.grid = {-20.0, 60.0, 401};
    cfg.t_end = 10.0;
    cfg.cfl = 0.4;
    cfg.snapshot_every = 2.0;
    cfg.initial.kind = InitialKind::PreyCarryingWithBump;
    cfg.initial.bump_center = 0.0;
    cfg.initial.bump_half_width = 5.0;
    cfg.initial.bump_height = 0.25;
    return cfg;
}

SimConfig constant_config(double u, double v, std::size_t nx = 201, double t_end = 10.0) {
    SimConfig cfg;
    cfg.grid = {0.0, 40.0, nx};
    cfg.t_end = t_end;
    cfg.cfl = 0.4;
    cfg.snapshot_every = t_end;
    cfg.initial.kind = InitialKind::Custom;
    cfg.initial.custom_u.assign(nx, u);
    cfg.initial.custom_v.assign(nx, v);
    return cfg;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

}  // namespace

TEST_CASE("bump initial data: flat core, monotone cosine flanks, compact support") {
    InitialData init;
    init.kind = InitialKind::PreyCarryingWithBump;
    init.bump_center = 0.0;
    init.bump_half_width = 10.0;
    init.bump_height = 0.25;
    CHECK(bump_profile(0.0, init) == 0.25);
    CHECK(bump_profile(4.9, init) == 0.25);
    CHECK(bump_profile(-4.9, init) == 0.25);
    CHECK(bump_profile(10.0, init) == 0.0);
    CHECK(bump_profile(12.0, init) == 0.0);
    double prev = bump_profile(5.0, init);
    for (double x = 5.1; x <= 10.0; x += 0.1) {
        const double cur = bump_profile(x, init);
        CHECK(cur <= prev + 1e-15);
        prev = cur;
    }
    CHECK(bump_profile(-7.3, init) == bump_profile(7.3, init));
}

TEST_CASE("rhs vanishes at the three boundary equilibria and at coexistence") {
    const KineticModel m = lv_default();
    const Grid1D grid{0.0, 10.0, 101};

    auto check_zero = [&](double u, double v, double tol) {
        FieldState s;
        s.u.assign(grid.nx, u);
        s.v.assign(grid.nx, v);
        const RhsResult r = rhs(s, m, grid);
        for (std::size_t i = 0; i < grid.nx; ++i) {
            CHECK(std::abs(r.du_dt[i]) <= tol);
            CHECK(std::abs(r.dv_dt[i]) <= tol);
        }
    };
    check_zero(1.0, 0.0, 0.0);  // prey-only: F(1,0) = 0 exactly
    check_zero(0.0, 0.0, 0.0);
    check_zero(0.0, 1.0, 0.0);        // predator-only at mu = 1
    check_zero(1.0 / 3.0, 4.0 / 3.0, 1e-14);  // coexistence oracle: 1-u-v/2 = 0, 1-v+u = 0
}

TEST_CASE("steady states are fixed to round-off over many steps") {
    const KineticModel m = lv_default();
    for (auto [u, v] : {std::pair{1.0, 0.0}, {0.0, 1.0}, {1.0 / 3.0, 4.0 / 3.0}}) {
        const SimConfig cfg = constant_config(u, v, 201, 10.0);
        const Trajectory traj = run(cfg, m);
        const FieldState& last = traj.snapshots.back();
        double drift = 0.0;
        for (std::size_t i = 0; i < cfg.grid.nx; ++i) {
            drift = std::max({drift, std::abs(last.u[i] - u), std::abs(last.v[i] - v)});
        }
        CHECK(drift <= 1e-11);  // <= 1e-12 per unit time
    }
}

TEST_CASE("v = 0 is invariant") {
    const KineticModel m = lv_default();
    SimConfig cfg = constant_config(0.7, 0.0, 151, 5.0);
    const Trajectory traj = run(cfg, m);
    for (const FieldState& s : traj.snapshots) {
        for (double v : s.v) {
            CHECK(v == 0.0);
        }
    }
    // u relaxes toward carrying capacity meanwhile.
    CHECK(traj.snapshots.back().u[75] > 0.9);
}

TEST_CASE("first snapshot equals the initial data; times strictly increase") {
    const KineticModel m = lv_default();
    const SimConfig cfg = small_config();
    const Trajectory traj = run(cfg, m);
    REQUIRE(!traj.snapshots.empty());
    CHECK(traj.snapshots.front().t == 0.0);
    for (std::size_t i = 0; i < cfg.grid.nx; ++i) {
        CHECK(traj.snapshots.front().u[i] == 1.0);
        CHECK(traj.snapshots.front().v[i] == bump_profile(cfg.grid.x(i), cfg.initial));
    }
    for (std::size_t k = 1; k < traj.snapshots.size(); ++k) {
        CHECK(traj.snapshots[k].t > traj.snapshots[k - 1].t);
    }
    CHECK(traj.snapshots.back().t == cfg.t_end);
}

TEST_CASE("step_rk4 refuses a dt above the CFL bound") {
    const KineticModel m = lv_default();
    const Grid1D grid{0.0, 10.0, 101};
    FieldState s;
    s.u.assign(grid.nx, 1.0);
    s.v.assign(grid.nx, 0.0);
    const double dx = grid.dx();
    const double dt_max = dx * dx / 2.0;
    CHECK_THROWS_AS(step_rk4(s, m, grid, 2.0 * dt_max), NumericsError);
    CHECK_NOTHROW(step_rk4(s, m, grid, 0.5 * dt_max));
}

TEST_CASE("blow-up aborts with a typed error") {
    KineticModel m = lv_default();
    m.F = [](double u, double) { return 10.0 * (1.0 + u); };  // superlinear growth
    m.G = [](double, double) { return 1.0 - 0.0; };
    SimConfig cfg = constant_config(1.0, 0.0, 101, 50.0);
    cfg.snapshot_every = 1.0;
    CHECK_THROWS_AS(run(cfg, m), NumericsError);
}

TEST_CASE("non-finite kinetics abort with the node index") {
    KineticModel m = lv_default();
    m.F = [](double u, double) { return u > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 0.0; };
    SimConfig cfg = constant_config(1.0, 0.1, 101, 1.0);
    CHECK_THROWS_AS(run(cfg, m), NumericsError);
}

TEST_CASE("bump height must stay below mu") {
    const KineticModel m = lv_default();
    SimConfig cfg = small_config();
    cfg.initial.bump_height = 1.5;  // mu = 1
    CHECK_THROWS_AS(run(cfg, m), ConfigError);
}

TEST_CASE("config validation") {
    const KineticModel m = lv_default();
    SimConfig cfg = small_config();
    cfg.cfl = 1.5;
    CHECK_THROWS_AS(run(cfg, m), ConfigError);
    cfg = small_config();
    cfg.t_end = -1.0;
    CHECK_THROWS_AS(run(cfg, m), ConfigError);
    cfg = small_config();
    cfg.grid.nx = 2;
    CHECK_THROWS_AS(run(cfg, m), ConfigError);
    CHECK_THROWS_AS(laplacian_1d({1.0, 2.0}, 0.1), ConfigError);
}

TEST_CASE("scalar run: w = mu is constant in time") {
    const KineticModel m = lv_default();
    SimConfig cfg = constant_config(0.0, 1.0, 151, 8.0);  // g(w) = 1 - w, mu = 1
    const Trajectory traj = scalar_run(cfg, m);
    const FieldState& last = traj.snapshots.back();
    for (double w : last.v) {
        CHECK(std::abs(w - 1.0) <= 1e-12);
    }
    for (double u : last.u) {
        CHECK(u == 0.0);
    }
    CHECK(traj.scalar_mode);
}

TEST_CASE("comparison ordering: full-system v dominates the scalar equation") {
    const KineticModel m = lv_default();
    SimConfig cfg = small_config();
    cfg.t_end = 8.0;
    cfg.snapshot_every = 1.0;
    const Trajectory full = run(cfg, m);

    SimConfig scalar_cfg = cfg;
    scalar_cfg.initial.kind = InitialKind::ScalarBump;
    const Trajectory cmp = scalar_run(scalar_cfg, m);

    REQUIRE(full.snapshots.size() == cmp.snapshots.size());
    for (std::size_t k = 0; k < full.snapshots.size(); ++k) {
        REQUIRE(full.snapshots[k].t == cmp.snapshots[k].t);
        double worst = 0.0;
        for (std::size_t i = 0; i < cfg.grid.nx; ++i) {
            worst = std::min(worst, full.snapshots[k].v[i] - cmp.snapshots[k].v[i]);
        }
        CHECK(worst >= -1e-8);
    }
}

TEST_CASE("trajectories stay in the invariant region") {
    const KineticModel m = lv_default();
    SimConfig cfg = small_config();
    const Trajectory traj = run(cfg, m);
    const double v0 = find_v0(m, find_mu(m));
    for (const FieldState& s : traj.snapshots) {
        for (std::size_t i = 0; i < cfg.grid.nx; ++i) {
            CHECK(s.u[i] >= 0.0);
            CHECK(s.u[i] <= 1.0 + 1e-9);
            CHECK(s.v[i] >= 0.0);
            CHECK(s.v[i] <= v0 + 1e-9);
        }
    }
}

TEST_CASE("runs are bit-identical across repetitions") {
    const KineticModel m = lv_default();
    const SimConfig cfg = small_config();
    const Trajectory a = run(cfg, m);
    const Trajectory b = run(cfg, m);
    REQUIRE(a.snapshots.size() == b.snapshots.size());
    for (std::size_t k = 0; k < a.snapshots.size(); ++k) {
        CHECK(std::memcmp(a.snapshots[k].u.data(), b.snapshots[k].u.data(),
                          cfg.grid.nx * sizeof(double)) == 0);
        CHECK(std::memcmp(a.snapshots[k].v.data(), b.snapshots[k].v.data(),
                          cfg.grid.nx * sizeof(double)) == 0);
    }
    CHECK(a.clamped_mass == b.clamped_mass);
}

TEST_CASE("public rhs clamps negative inputs before evaluating") {
    const KineticModel m = lv_default();
    const Grid1D grid{0.0, 10.0, 101};
    FieldState s;
    s.u.assign(grid.nx, -1e-13);
    s.v.assign(grid.nx, -1e-13);
    const RhsResult r = rhs(s, m, grid);
    for (std::size_t i = 0; i < grid.nx; ++i) {
        CHECK(r.du_dt[i] == 0.0);
        CHECK(r.dv_dt[i] == 0.0);
    }
}
