#include "invwave/assumptions.hpp"

#include <cmath>

#include "invwave/errors.hpp"

namespace invwave {

namespace {

constexpr double kMuExclusionRadius = 1e-6;  // G(0,v)(v-mu) vanishes at mu by construction
constexpr double kSandwichSlack = 1e-12;     // absorbs round-off at the box edges
constexpr double kEqualityTol = 1e-12;       // for F(1,0) = 0

}  // namespace

AssumptionReport verify_assumptions(const KineticModel& model, double mu, double v0,
                                    std::size_t n_samples) {
    if (n_samples < 101) {
        throw ConfigError("verify_assumptions: n_samples must be >= 101");
    }
    AssumptionReport report;
    report.grid_resolution = n_samples;
    const double n1 = static_cast<double>(n_samples - 1);

    // (a) single sign change of G(0, .) across mu, sampled on [0, 2 v0].
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double v = 2.0 * v0 * static_cast<double>(i) / n1;
        if (std::abs(v - mu) <= kMuExclusionRadius) {
            continue;
        }
        const double product = model.G(0.0, v) * (v - mu);
        if (!(product < 0.0)) {
            report.witnesses.push_back(
                {'a', 0.0, v, product, "G(0,v)(v-mu) >= 0"});
        }
    }

    // (b) sandwich G(1,0) >= G(u,v) >= G(0,v) on the box, negativity at v0.
    const double g10 = model.G(1.0, 0.0);
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double u = static_cast<double>(i) / n1;
        for (std::size_t j = 0; j < n_samples; ++j) {
            const double v = v0 * static_cast<double>(j) / n1;
            const double g = model.G(u, v);
            if (g > g10 + kSandwichSlack) {
                report.witnesses.push_back({'b', u, v, g - g10, "G(u,v) > G(1,0)"});
            }
            const double g0v = model.G(0.0, v);
            if (g < g0v - kSandwichSlack) {
                report.witnesses.push_back({'b', u, v, g - g0v, "G(u,v) < G(0,v)"});
            }
        }
        const double gv0 = model.G(u, v0);
        if (!(gv0 < 0.0)) {
            report.witnesses.push_back({'b', u, v0, gv0, "G(u,v0) >= 0"});
        }
    }

    // (c) prey-only structure.
    const double f10 = model.F(1.0, 0.0);
    if (!(std::abs(f10) <= kEqualityTol)) {
        report.witnesses.push_back({'c', 1.0, 0.0, f10, "F(1,0) != 0"});
    }
    for (std::size_t i = 0; i + 1 < n_samples; ++i) {
        const double u = static_cast<double>(i) / n1;  // u in [0, 1)
        const double f = model.F(u, 0.0);
        if (!(f > 0.0)) {
            report.witnesses.push_back({'c', u, 0.0, f, "F(u,0) <= 0 on [0,1)"});
        }
    }
    for (std::size_t j = 1; j < n_samples; ++j) {
        const double v = v0 * static_cast<double>(j) / n1;  // v in (0, v0]
        const double f = model.F(1.0, v);
        if (!(f < 0.0)) {
            report.witnesses.push_back({'c', 1.0, v, f, "F(1,v) >= 0 on (0,v0]"});
        }
    }

    report.holds_a = true;
    report.holds_b = true;
    report.holds_c = true;
    for (const auto& w : report.witnesses) {
        if (w.item == 'a') report.holds_a = false;
        if (w.item == 'b') report.holds_b = false;
        if (w.item == 'c') report.holds_c = false;
    }
    return report;
}

}  // namespace invwave
