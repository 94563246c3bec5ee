#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "invwave/assumptions.hpp"
#include "invwave/errors.hpp"
#include "invwave/model.hpp"

using namespace invwave;

namespace {

KineticModel lv_default() {
    return make_builtin("lotka_volterra", {{"a", 0.5}, {"r", 1.0}, {"b", 1.0}, {"d", 1.0}});
}

// Independent oracle for the predator ceiling: exhaustive grid scan for the
// smallest v >= mu whose u-row of G is nonpositive everywhere.
double v0_boundary_oracle(const KineticModel& model, double mu, double v_hi) {
    const int nv = 30000;
    for (int j = 0; j <= nv; ++j) {
        const double v = mu + (v_hi - mu) * static_cast<double>(j) / nv;
        double gmax = -1e300;
        for (int i = 0; i <= 2000; ++i) {
            gmax = std::max(gmax, model.G(static_cast<double>(i) / 2000.0, v));
        }
        if (gmax <= 0.0) {
            return v;
        }
    }
    return -1.0;
}

}  // namespace

TEST_CASE("lotka-volterra kinetics match the defining formulas") {
    const KineticModel m = lv_default();
    CHECK(m.F(0.5, 1.0) == doctest::Approx(0.0).epsilon(1e-15));  // 1 - 0.5 - 0.5*1
    CHECK(m.F(0.0, 0.0) == 1.0);
    CHECK(m.G(0.0, 0.0) == 1.0);
    CHECK(m.G(1.0, 0.0) == 2.0);
    CHECK(m.d == 1.0);
}

TEST_CASE("builtin factory rejects bad parameters with the offending key") {
    CHECK_THROWS_AS(make_builtin("lotka_volterra", {{"a", -1.0}, {"r", 1.0}, {"b", 1.0}, {"d", 1.0}}),
                    ConfigError);
    try {
        make_builtin("lotka_volterra", {{"a", -1.0}, {"r", 1.0}, {"b", 1.0}, {"d", 1.0}});
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("'a'") != std::string::npos);
    }
    CHECK_THROWS_AS(make_builtin("lotka_volterra", {{"r", 1.0}, {"b", 1.0}, {"d", 1.0}}),
                    ConfigError);
    CHECK_THROWS_AS(make_builtin("no_such_model", {}), ConfigError);
    CHECK_THROWS_AS(make_builtin("lotka_volterra",
                                 {{"a", 0.5}, {"r", 1.0}, {"b", 1.0}, {"d", 1.0}, {"zz", 1.0}}),
                    ConfigError);
}

TEST_CASE("sigma_eps: identity branch, continuity and positive floor") {
    const double eps = 0.25;
    CHECK(sigma_eps(0.25, eps) == 0.25);
    CHECK(sigma_eps(0.3, eps) == 0.3);
    // Floor at u = 0: eps * e^{-1/eps}; high-precision reference value.
    CHECK(sigma_eps(0.0, eps) == doctest::Approx(0.004578909722183545).epsilon(1e-14));

    // Left limit approaches the right branch monotonically as h -> 0+.
    double prev_gap = 1e300;
    for (double h : {1e-2, 1e-4, 1e-6}) {
        const double gap = std::abs(sigma_eps(eps - h, eps) - sigma_eps(eps, eps));
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    CHECK(prev_gap <= 1e-6 + 1e-12);
}

TEST_CASE("find_mu: lotka-volterra root of 1 - v") {
    CHECK(std::abs(find_mu(lv_default()) - 1.0) <= 1e-12);
}

TEST_CASE("find_mu: leslie-gower root of 1 - v/e2") {
    const KineticModel m = make_builtin(
        "leslie_gower", {{"a", 0.3}, {"e1", 0.2}, {"r", 1.0}, {"e2", 0.4}, {"d", 1.0}});
    CHECK(std::abs(find_mu(m) - 0.4) <= 1e-12);
}

TEST_CASE("find_mu: holling-tanner regularized hits eps * e^{-1/eps}") {
    const KineticModel m = make_builtin("holling_tanner_reg",
                                        {{"alpha", 1.0},
                                         {"r", 1.0},
                                         {"d", 1.0},
                                         {"eps", 0.25},
                                         {"m_exp", 2.0},
                                         {"beta1", 0.0},
                                         {"beta2", 0.0}});
    const double mu = find_mu(m);
    CHECK(std::abs(mu - 0.25 * std::exp(-4.0)) <= 1e-12);
    CHECK(std::abs(m.G(0.0, mu)) <= 1e-12);
}

TEST_CASE("find_mu requires a sign change") {
    KineticModel m = lv_default();
    m.G = [](double, double) { return 1.0; };  // never negative
    CHECK_THROWS_AS(find_mu(m), AssumptionError);
    m.G = [](double, double) { return -1.0; };  // G(0,0) <= 0
    CHECK_THROWS_AS(find_mu(m), AssumptionError);
}

TEST_CASE("find_v0 against the grid-scan oracle") {
    const KineticModel lv = lv_default();
    const double mu_lv = find_mu(lv);
    const double v0_lv = find_v0(lv, mu_lv);
    CHECK(v0_lv == doctest::Approx(2.2).epsilon(1e-8));
    const double boundary = v0_boundary_oracle(lv, mu_lv, 4.0);
    CHECK(v0_lv == doctest::Approx(1.1 * boundary).epsilon(2e-4));

    const KineticModel lg = make_builtin(
        "leslie_gower", {{"a", 0.3}, {"e1", 0.2}, {"r", 1.0}, {"e2", 0.4}, {"d", 1.0}});
    const double v0_lg = find_v0(lg, find_mu(lg));
    CHECK(v0_lg == doctest::Approx(1.54).epsilon(1e-8));
}

TEST_CASE("find_v0 postcondition: strict negativity on a 1001-point grid") {
    const KineticModel m = lv_default();
    const double v0 = find_v0(m, find_mu(m));
    double gmax = -1e300;
    for (int i = 0; i <= 1000; ++i) {
        gmax = std::max(gmax, m.G(static_cast<double>(i) / 1000.0, v0));
    }
    CHECK(gmax < 0.0);
}

TEST_CASE("find_v0 errors when the predator never declines") {
    KineticModel m = lv_default();
    m.G = [](double, double) { return 0.5; };
    CHECK_THROWS_AS(find_v0(m, 1.0), AssumptionError);
}

TEST_CASE("wave constants: c_star, lambda1 and the defining quadratic") {
    const KineticModel m = lv_default();
    CHECK(c_star(m) == 2.0 * std::sqrt(2.0));  // exact: G(1,0) = 2, d = 1

    const WaveConstants at_cstar = wave_constants(m, 2.0 * std::sqrt(2.0));
    CHECK(at_cstar.lambda1 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

    const WaveConstants at3 = wave_constants(m, 3.0);
    CHECK(at3.lambda1 == 1.0);  // (3 - sqrt(9-8)) / 2

    // lambda1 solves d*l^2 - c*l + G(1,0) = 0.
    for (double c : {2.8285, 3.0, 3.5, 5.0}) {
        const WaveConstants wc = wave_constants(m, c);
        const double resid = m.d * wc.lambda1 * wc.lambda1 - c * wc.lambda1 + m.G(1.0, 0.0);
        CHECK(std::abs(resid) <= 1e-10);
    }

    CHECK_THROWS_AS(wave_constants(m, 1.0), ConfigError);  // below c_star
    KineticModel sick = lv_default();
    sick.G = [](double, double) { return -1.0; };
    CHECK_THROWS_AS(c_star(sick), AssumptionError);
}

TEST_CASE("persistence condition classifies by the sign of F(0, mu)") {
    auto lv_with_a = [](double a) {
        return make_builtin("lotka_volterra", {{"a", a}, {"r", 1.0}, {"b", 1.0}, {"d", 1.0}});
    };
    const PersistenceVerdict p1 = persistence_condition(lv_with_a(0.5), 1.0);
    CHECK(p1.classification == Classification::Persistent);
    CHECK(p1.f0mu == doctest::Approx(0.5));
    CHECK(p1.c0.value() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

    const PersistenceVerdict p2 = persistence_condition(lv_with_a(1.0), 1.0);
    CHECK(p2.classification == Classification::Inconclusive);

    const PersistenceVerdict p3 = persistence_condition(lv_with_a(1.2), 1.0);
    CHECK(p3.classification == Classification::ConditionFails);
    CHECK(!p3.c0.has_value());
}

TEST_CASE("holling-tanner with m_exp > 1 is persistent with F(0,mu) = 1") {
    const KineticModel m = make_builtin("holling_tanner_reg",
                                        {{"alpha", 3.0},
                                         {"r", 1.0},
                                         {"d", 1.0},
                                         {"eps", 0.25},
                                         {"m_exp", 2.0},
                                         {"beta1", 0.1},
                                         {"beta2", 0.2}});
    const double mu = find_mu(m);
    const PersistenceVerdict p = persistence_condition(m, mu);
    CHECK(p.f0mu == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.classification == Classification::Persistent);
}

TEST_CASE("classification is invariant under positive rescaling of F") {
    for (double a : {0.5, 1.0, 1.2}) {
        const KineticModel base =
            make_builtin("lotka_volterra", {{"a", a}, {"r", 1.0}, {"b", 1.0}, {"d", 1.0}});
        const double mu = find_mu(base);
        for (double scale : {1e-6, 0.1, 7.0, 1e6}) {
            KineticModel wrapped = base;
            auto inner = base.F;
            wrapped.F = [inner, scale](double u, double v) { return scale * inner(u, v); };
            // Scale-aware zero band keeps the comparison fair for tiny scales.
            CHECK(persistence_condition(wrapped, mu, 1e-9 * scale).classification ==
                  persistence_condition(base, mu).classification);
        }
    }
}

TEST_CASE("assumption audit passes for the default lotka-volterra") {
    const KineticModel m = lv_default();
    const double mu = find_mu(m);
    const double v0 = find_v0(m, mu);
    const AssumptionReport rep = verify_assumptions(m, mu, v0, 201);
    CHECK(rep.holds_a);
    CHECK(rep.holds_b);
    CHECK(rep.holds_c);
    CHECK(rep.witnesses.empty());
}

TEST_CASE("reversed sandwich is caught with a witness") {
    KineticModel m = lv_default();
    const double r = 1.0, b = 1.0;
    m.G = [r, b](double u, double v) { return r * (1.0 - v - b * u); };  // decreasing in u
    const AssumptionReport rep = verify_assumptions(m, 1.0, 2.2, 101);
    CHECK(!rep.holds_b);
    bool found = false;
    for (const auto& w : rep.witnesses) {
        if (w.item == 'b' && w.what.find("G(u,v) < G(0,v)") != std::string::npos) {
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("undersized ceiling fails item (b) with a witness near u = 1") {
    const KineticModel m = lv_default();
    const AssumptionReport rep = verify_assumptions(m, 1.0, 1.5, 201);  // < 1 + b
    CHECK(!rep.holds_b);
    double worst_u = 0.0;
    for (const auto& w : rep.witnesses) {
        if (w.item == 'b' && w.what.find("v0") != std::string::npos) {
            worst_u = std::max(worst_u, w.u);
        }
    }
    CHECK(worst_u > 0.74);  // G(u, 1.5) = -0.5 + u >= 0 for u >= 0.5; rightmost witness at 1
}

TEST_CASE("audit rejects too-coarse grids") {
    const KineticModel m = lv_default();
    CHECK_THROWS_AS(verify_assumptions(m, 1.0, 2.2, 50), ConfigError);
}

TEST_CASE("compute_constants bundles every closed-form symbol") {
    const ModelConstants mc = compute_constants(lv_default());
    CHECK(std::abs(mc.mu - 1.0) <= 1e-10);
    CHECK(mc.v0 == doctest::Approx(2.2).epsilon(1e-8));
    CHECK(mc.c_star == 2.0 * std::sqrt(2.0));
    CHECK(mc.f0mu == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(mc.classification == Classification::Persistent);
    CHECK(mc.c0.value() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}
