#include "invwave/model.hpp"

#include <cmath>
#include <vector>

#include "invwave/errors.hpp"
#include "invwave/numutil.hpp"

namespace invwave {

namespace {

double require_param(const std::map<std::string, double>& params, const std::string& key) {
    auto it = params.find(key);
    if (it == params.end()) {
        throw ConfigError("missing parameter '" + key + "'");
    }
    return it->second;
}

double require_positive(const std::map<std::string, double>& params, const std::string& key) {
    const double v = require_param(params, key);
    if (!(v > 0.0)) {
        throw ConfigError("parameter '" + key + "' must be > 0, got " + std::to_string(v));
    }
    return v;
}

double require_nonnegative(const std::map<std::string, double>& params, const std::string& key) {
    const double v = require_param(params, key);
    if (!(v >= 0.0)) {
        throw ConfigError("parameter '" + key + "' must be >= 0, got " + std::to_string(v));
    }
    return v;
}

void reject_unknown(const std::map<std::string, double>& params,
                    std::initializer_list<const char*> known) {
    for (const auto& [key, value] : params) {
        (void)value;
        bool ok = false;
        for (const char* k : known) {
            if (key == k) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            throw ConfigError("unknown parameter '" + key + "'");
        }
    }
}

}  // namespace

std::string to_string(Classification c) {
    switch (c) {
        case Classification::Persistent:
            return "Persistent";
        case Classification::Inconclusive:
            return "Inconclusive";
        case Classification::ConditionFails:
            return "ConditionFails";
    }
    return "?";
}

double sigma_eps(double u, double eps) {
    if (u >= eps) {
        return u;
    }
    return u + eps * std::exp(1.0 / (u - eps));
}

KineticModel make_builtin(const std::string& name, const std::map<std::string, double>& params) {
    KineticModel model;
    model.name = name;
    model.params = params;
    if (name == "lotka_volterra") {
        reject_unknown(params, {"a", "r", "b", "d"});
        const double a = require_positive(params, "a");
        const double r = require_positive(params, "r");
        const double b = require_positive(params, "b");
        model.d = require_positive(params, "d");
        model.F = [a](double u, double v) { return 1.0 - u - a * v; };
        model.G = [r, b](double u, double v) { return r * (1.0 - v + b * u); };
        model.check_box.v_hi = 1.0 + b;
    } else if (name == "leslie_gower") {
        reject_unknown(params, {"a", "e1", "r", "e2", "d"});
        const double a = require_positive(params, "a");
        const double e1 = require_positive(params, "e1");
        const double r = require_positive(params, "r");
        const double e2 = require_positive(params, "e2");
        model.d = require_positive(params, "d");
        model.F = [a, e1](double u, double v) { return 1.0 - u - a * v / (u + e1); };
        model.G = [r, e2](double u, double v) { return r * (1.0 - v / (u + e2)); };
        model.check_box.v_hi = 1.0 + e2;
    } else if (name == "holling_tanner_reg") {
        reject_unknown(params, {"alpha", "r", "d", "eps", "m_exp", "beta1", "beta2"});
        const double alpha = require_positive(params, "alpha");
        const double r = require_positive(params, "r");
        model.d = require_positive(params, "d");
        const double eps = require_positive(params, "eps");
        const double m_exp = require_param(params, "m_exp");
        if (!(m_exp >= 1.0)) {
            throw ConfigError("parameter 'm_exp' must be >= 1, got " + std::to_string(m_exp));
        }
        const double beta1 = require_nonnegative(params, "beta1");
        const double beta2 = require_nonnegative(params, "beta2");
        model.F = [alpha, m_exp, beta1, beta2](double u, double v) {
            // pow(0, 0) = 1 covers the m_exp = 1 functional response at u = 0.
            const double num = alpha * std::pow(u, m_exp - 1.0) * v;
            const double den = 1.0 + beta1 * std::pow(u, m_exp) + beta2 * std::pow(v, m_exp);
            return 1.0 - u - num / den;
        };
        model.G = [r, eps](double u, double v) { return r * (1.0 - v / sigma_eps(u, eps)); };
        model.check_box.v_hi = 2.0;
    } else {
        throw ConfigError("unknown model '" + name + "'");
    }
    return model;
}

double find_mu(const KineticModel& model) {
    auto g = [&model](double v) { return model.G(0.0, v); };
    if (!(g(0.0) > 0.0)) {
        throw AssumptionError("Assumption (a) violated: G(0,0) <= 0 (predator cannot grow alone)");
    }
    // Doubling scan from the check-box ceiling for the first nonpositive value.
    double lo = 0.0;
    double hi = model.check_box.v_hi;
    bool bracketed = false;
    for (int k = 0; k <= 10; ++k) {
        const double gv = g(hi);
        if (!std::isfinite(gv)) {
            throw AssumptionError("G(0,v) not finite at v = " + std::to_string(hi));
        }
        if (gv < 0.0) {
            bracketed = true;
            break;
        }
        if (gv == 0.0) {
            return hi;
        }
        lo = hi;
        hi *= 2.0;
    }
    if (!bracketed) {
        throw AssumptionError("Assumption (a) violated: no positive root of G(0,\xc2\xb7)");
    }
    for (int iter = 0; iter < 200 && hi - lo > 1e-16 * std::max(1.0, hi); ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if (gm > 0.0) {
            lo = mid;
        } else if (gm < 0.0) {
            hi = mid;
        } else {
            return mid;
        }
    }
    return 0.5 * (lo + hi);
}

double find_v0(const KineticModel& model, double mu, double margin) {
    auto gmax = [&model](double v) {
        auto g_of_u = [&model, v](double u) { return model.G(u, v); };
        return detail::grid_max(g_of_u, 0.0, model.check_box.u_hi, 201, 1e-10).value;
    };
    double boundary;
    if (gmax(mu) <= 0.0) {
        boundary = mu;
    } else {
        double lo = mu;
        double hi = mu;
        bool found = false;
        for (int k = 1; k <= 10; ++k) {
            hi = mu * std::pow(2.0, k);
            if (gmax(hi) <= 0.0) {
                found = true;
                break;
            }
            lo = hi;
        }
        if (!found) {
            throw AssumptionError("Assumption (b) violated: predator ceiling not found");
        }
        while (hi - lo > 1e-9) {
            const double mid = 0.5 * (lo + hi);
            if (gmax(mid) <= 0.0) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        boundary = hi;
    }
    const double v0 = (1.0 + margin) * boundary;
    // Strict negativity must survive the margin; audit on a finer grid.
    auto g_at_v0 = [&model, v0](double u) { return model.G(u, v0); };
    if (!(detail::grid_max(g_at_v0, 0.0, model.check_box.u_hi, 1001, 1e-10).value < 0.0)) {
        throw AssumptionError("Assumption (b) violated: G(u, v0) not strictly negative");
    }
    return v0;
}

double c_star(const KineticModel& model) {
    const double g10 = model.G(1.0, 0.0);
    if (!(g10 > 0.0)) {
        throw AssumptionError("model not monostable at prey-only state: G(1,0) <= 0");
    }
    return 2.0 * std::sqrt(model.d * g10);
}

WaveConstants wave_constants(const KineticModel& model, double c) {
    WaveConstants wc;
    wc.c_star = c_star(model);
    const double g10 = model.G(1.0, 0.0);
    double disc = c * c - 4.0 * model.d * g10;
    if (disc < -1e-12 * std::max(1.0, c * c)) {
        throw ConfigError("lambda1 undefined: wave speed " + std::to_string(c) +
                          " is below c_star = " + std::to_string(wc.c_star));
    }
    // At c = c_star the discriminant vanishes; rounding noise would otherwise
    // be amplified by the square root.
    if (std::abs(disc) <= 1e-13 * std::max(1.0, c * c)) {
        disc = 0.0;
    }
    wc.lambda1 = (c - std::sqrt(std::max(0.0, disc))) / (2.0 * model.d);
    return wc;
}

PersistenceVerdict persistence_condition(const KineticModel& model, double mu, double tol_zero) {
    PersistenceVerdict verdict;
    verdict.f0mu = model.F(0.0, mu);
    if (!std::isfinite(verdict.f0mu)) {
        throw NumericsError("F(0, mu) is not finite");
    }
    if (verdict.f0mu > tol_zero) {
        verdict.classification = Classification::Persistent;
    } else if (verdict.f0mu < -tol_zero) {
        verdict.classification = Classification::ConditionFails;
    } else {
        verdict.classification = Classification::Inconclusive;
    }
    if (verdict.f0mu >= 0.0) {
        verdict.c0 = 2.0 * std::sqrt(verdict.f0mu);
    }
    return verdict;
}

ModelConstants compute_constants(const KineticModel& model) {
    ModelConstants mc;
    mc.mu = find_mu(model);
    mc.v0 = find_v0(model, mc.mu);
    mc.c_star = c_star(model);
    const PersistenceVerdict verdict = persistence_condition(model, mc.mu);
    mc.f0mu = verdict.f0mu;
    mc.c0 = verdict.c0;
    mc.classification = verdict.classification;
    return mc;
}

}  // namespace invwave
