#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

namespace invwave {

// A kinetic model: per-capita growth rates F (prey) and G (predator) plus the
// predator/prey diffusion ratio d. Evaluators must be pure and shareable
// across threads; the built-ins are stateless lambdas capturing parameters by
// value. Hand-built models are the extension point for custom kinetics.
struct KineticModel {
    std::string name;
    double d = 1.0;
    std::map<std::string, double> params;
    std::function<double(double, double)> F;  // (u, v) -> prey per-capita rate
    std::function<double(double, double)> G;  // (u, v) -> predator per-capita rate

    // Rectangle [0, u_hi] x [0, v_hi] over which audits and scans start.
    // v_hi also seeds the doubling scan for the predator carrying level.
    struct Box {
        double u_hi = 1.0;
        double v_hi = 1.0;
    } check_box;
};

enum class Classification { Persistent, Inconclusive, ConditionFails };

std::string to_string(Classification c);

// Every closed-form constant attached to a model.
struct ModelConstants {
    double mu = 0.0;      // predator-only carrying level, root of G(0, .)
    double v0 = 0.0;      // predator ceiling (minimal admissible + margin)
    double c_star = 0.0;  // 2*sqrt(d*G(1,0)), linear invasion speed
    double f0mu = 0.0;    // F(0, mu), the persistence criterion value
    std::optional<double> c0;  // 2*sqrt(f0mu) when f0mu >= 0
    Classification classification = Classification::Inconclusive;
};

struct WaveConstants {
    double c_star = 0.0;
    double lambda1 = 0.0;  // (c - sqrt(c^2 - 4 d G(1,0))) / (2d)
};

// Predator equation regularization used by the built-in Holling-Tanner model:
// sigma(u) = u for u >= eps, u + eps*exp(1/(u-eps)) below, so that sigma has
// a positive floor eps*exp(-1/eps) at u = 0.
double sigma_eps(double u, double eps);

// Built-in factory. name in {lotka_volterra, leslie_gower, holling_tanner_reg};
// throws ConfigError naming the offending key on missing/ill-signed parameters.
KineticModel make_builtin(const std::string& name, const std::map<std::string, double>& params);

// Root of G(0, .) by bracketed bisection; bracket from a doubling scan seeded
// at check_box.v_hi. Throws AssumptionError when no sign change exists within
// v_hi * 2^10.
double find_mu(const KineticModel& model);

// Smallest v >= mu with max_{u in [0,1]} G(u, v) <= 0 (201-point u sample,
// v-boundary bisected to 1e-9), inflated by `margin`. The returned value is
// re-checked for strict negativity on a 1001-point u grid.
double find_v0(const KineticModel& model, double mu, double margin = 0.1);

double c_star(const KineticModel& model);

// c_star plus lambda1 for a given wave speed c >= c_star.
WaveConstants wave_constants(const KineticModel& model, double c);

struct PersistenceVerdict {
    double f0mu = 0.0;
    std::optional<double> c0;
    Classification classification = Classification::Inconclusive;
};

// Sign of F(0, mu) with a tolerance band around zero: the boundary case is
// genuinely undecidable and gets its own verdict.
PersistenceVerdict persistence_condition(const KineticModel& model, double mu,
                                         double tol_zero = 1e-9);

// find_mu + find_v0 + c_star + persistence_condition in one shot.
ModelConstants compute_constants(const KineticModel& model);

}  // namespace invwave
