#include "invwave/phase.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "invwave/errors.hpp"
#include "invwave/numutil.hpp"

namespace invwave {

std::string to_string(Region r) {
    switch (r) {
        case Region::A1: return "A1";
        case Region::A2: return "A2";
        case Region::A3: return "A3";
        case Region::A4: return "A4";
        case Region::A5: return "A5";
        case Region::A6: return "A6";
        case Region::Other: return "Other";
    }
    return "?";
}

std::string to_string(ModeRegime r) {
    switch (r) {
        case ModeRegime::Oscillatory: return "Oscillatory";
        case ModeRegime::Node: return "Node";
        case ModeRegime::Degenerate: return "Degenerate";
        case ModeRegime::ZeroGrowth: return "ZeroGrowth";
    }
    return "?";
}

std::array<double, 4> tw_rhs(const TWState& s, double c, const KineticModel& model) {
    const double f = model.F(s.phi, s.psi);
    const double g = model.G(s.phi, s.psi);
    if (!std::isfinite(f) || !std::isfinite(g)) {
        throw NumericsError("tw_rhs: non-finite kinetics at phi = " + std::to_string(s.phi) +
                            ", psi = " + std::to_string(s.psi));
    }
    return {s.dphi, c * s.dphi - s.phi * f, s.dpsi, (c * s.dpsi - s.psi * g) / model.d};
}

namespace {

std::array<double, 2> plane_rhs(const PlaneState& s, double c, const KineticModel& model) {
    const double g = model.G(0.0, s.psi_inf);
    if (!std::isfinite(g)) {
        throw NumericsError("integrate_plane: non-finite G(0, psi) at psi = " +
                            std::to_string(s.psi_inf));
    }
    return {s.chi_inf, (c * s.chi_inf - s.psi_inf * g) / model.d};
}

template <typename State, typename Rhs>
State rk4_step(const State& y, double h, const Rhs& f) {
    const auto k1 = f(y);
    State y2 = y;
    for (std::size_t i = 0; i < k1.size(); ++i) y2[i] = y[i] + 0.5 * h * k1[i];
    const auto k2 = f(y2);
    for (std::size_t i = 0; i < k1.size(); ++i) y2[i] = y[i] + 0.5 * h * k2[i];
    const auto k3 = f(y2);
    for (std::size_t i = 0; i < k1.size(); ++i) y2[i] = y[i] + h * k3[i];
    const auto k4 = f(y2);
    for (std::size_t i = 0; i < k1.size(); ++i) {
        y2[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return y2;
}

}  // namespace

PlaneTrajectory integrate_plane(const PlaneState& ic, double c, const KineticModel& model,
                                double v0, double z_begin, double z_end, double dz) {
    if (!(dz > 0.0)) {
        throw ConfigError("integrate_plane: dz must be > 0");
    }
    if (!(c > 0.0)) {
        throw ConfigError("integrate_plane: c must be > 0");
    }
    const ThetaBounds theta = theta_bounds(model, c, v0);
    const double chi_scale = std::max({theta.theta_plus, -theta.theta_minus, 1e-8});
    const double span = z_end - z_begin;
    const auto steps = static_cast<std::size_t>(std::ceil(std::abs(span) / dz - 1e-12));
    const double h = steps == 0 ? 0.0 : span / static_cast<double>(steps);

    PlaneTrajectory traj;
    std::array<double, 2> y{ic.psi_inf, ic.chi_inf};
    auto field = [&](const std::array<double, 2>& s) {
        return plane_rhs({s[0], s[1]}, c, model);
    };
    traj.points.push_back({z_begin, {y[0], y[1]}});
    for (std::size_t k = 0; k < steps; ++k) {
        y = rk4_step(y, h, field);
        const double z = z_begin + h * static_cast<double>(k + 1);
        traj.points.push_back({z, {y[0], y[1]}});
        if (y[0] > 2.0 * v0 || std::abs(y[1]) > 10.0 * chi_scale || !std::isfinite(y[0]) ||
            !std::isfinite(y[1])) {
            traj.termination = Termination::Escaped;
            traj.escape_z = z;
            return traj;
        }
    }
    traj.termination = Termination::Completed;
    return traj;
}

Region classify_region(const PlaneState& p, double mu, double tol_eq) {
    const double dpsi = p.psi_inf - mu;
    const bool psi_eq = std::abs(dpsi) <= tol_eq;
    const bool chi_eq = std::abs(p.chi_inf) <= tol_eq;
    if (!psi_eq && dpsi < 0.0) {
        return Region::Other;
    }
    if (psi_eq) {
        if (chi_eq) return Region::A6;
        return p.chi_inf > 0.0 ? Region::A2 : Region::A4;
    }
    // psi_inf > mu
    if (chi_eq) return Region::A3;
    return p.chi_inf > 0.0 ? Region::A1 : Region::A5;
}

ThetaBounds theta_bounds(const KineticModel& model, double c, double v0) {
    if (!(c > 0.0)) {
        throw ConfigError("theta_bounds: c must be > 0");
    }
    auto h = [&model, c](double eta) { return eta * model.G(0.0, eta) / c; };
    const auto mx = detail::grid_max(h, 0.0, v0, 2001, 1e-9);
    const auto mn = detail::grid_min(h, 0.0, v0, 2001, 1e-9);
    ThetaBounds tb;
    tb.theta_plus = mx.value;
    tb.arg_plus = mx.arg;
    tb.theta_minus = mn.value;
    tb.arg_minus = mn.arg;
    tb.degenerate = !(tb.theta_minus < 0.0 && tb.theta_plus > 0.0);
    return tb;
}

RiccatiBounds riccati_bounds(const KineticModel& model, double c, double v0) {
    RiccatiBounds rb;
    double fmin = 0.0;
    constexpr std::size_t n = 201;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = static_cast<double>(i) / (n - 1);
        for (std::size_t j = 0; j < n; ++j) {
            const double v = v0 * static_cast<double>(j) / (n - 1);
            fmin = std::min(fmin, model.F(u, v));
        }
    }
    rb.m = std::max(0.0, -fmin);
    const double s = std::sqrt(c * c + 4.0 * rb.m);
    rb.pi_plus = 0.5 * (c + s);
    rb.pi_minus = 0.5 * (c - s);
    return rb;
}

double RiccatiBlowup::operator()(double z) const {
    const double e = std::exp(-root_gap * (z - z2));
    return (pi_plus - pi_minus * e) / (1.0 - e);
}

RiccatiBlowup riccati_blowup(double z1, double w1, double c, double m) {
    RiccatiBlowup rb;
    rb.z1 = z1;
    rb.w1 = w1;
    rb.c = c;
    rb.m = m;
    rb.root_gap = std::sqrt(c * c + 4.0 * m);
    rb.pi_plus = 0.5 * (c + rb.root_gap);
    rb.pi_minus = 0.5 * (c - rb.root_gap);
    if (!(w1 <= -rb.pi_plus)) {
        throw ConfigError("riccati_blowup: requires w1 <= -pi_plus = " +
                          std::to_string(-rb.pi_plus));
    }
    rb.z2 = z1 + std::log((rb.pi_plus - w1) / (rb.pi_minus - w1)) / rb.root_gap;
    return rb;
}

RiccatiSeries riccati_of_profile(const std::vector<double>& z, const std::vector<double>& phi) {
    if (z.size() != phi.size() || z.size() < 3) {
        throw ConfigError("riccati_of_profile: need matching arrays with >= 3 samples");
    }
    for (const double p : phi) {
        if (!(p > 0.0)) {
            throw AnalysisError("riccati_of_profile: phi must be strictly positive");
        }
    }
    RiccatiSeries series;
    series.z.reserve(z.size() - 2);
    series.w.reserve(z.size() - 2);
    for (std::size_t i = 1; i + 1 < z.size(); ++i) {
        const double dz2 = z[i + 1] - z[i - 1];
        const double w = (phi[i + 1] - phi[i - 1]) / (dz2 * phi[i]);
        series.z.push_back(z[i]);
        series.w.push_back(w);
        series.max_abs = std::max(series.max_abs, std::abs(w));
    }
    series.left_boundary_value = series.w.front();
    return series;
}

LinearMode linear_mode(double c, double f0mu, double tol) {
    if (f0mu < -tol) {
        throw ConfigError("linear_mode: requires F(0,mu) >= 0");
    }
    LinearMode mode;
    mode.c = c;
    mode.f0mu = f0mu;
    if (std::abs(f0mu) <= tol) {
        mode.f0mu = 0.0;
        mode.c0 = 0.0;
        mode.regime = ModeRegime::ZeroGrowth;
        // omega = kappa + (1-kappa) e^{cz}: characteristic roots 0 and c.
        mode.eta_plus_re = c;
        mode.eta_minus_re = 0.0;
        return mode;
    }
    mode.c0 = 2.0 * std::sqrt(f0mu);
    const double diff = c - mode.c0;
    if (std::abs(diff) <= tol) {
        mode.regime = ModeRegime::Degenerate;
        mode.eta_plus_re = mode.eta_minus_re = 0.5 * c;
    } else if (diff > 0.0) {
        mode.regime = ModeRegime::Node;
        const double s = std::sqrt(c * c - 4.0 * f0mu);
        mode.eta_plus_re = 0.5 * (c + s);
        mode.eta_minus_re = 0.5 * (c - s);
    } else {
        mode.regime = ModeRegime::Oscillatory;
        const double s = std::sqrt(4.0 * f0mu - c * c);
        mode.eta_plus_re = mode.eta_minus_re = 0.5 * c;
        mode.eta_plus_im = 0.5 * s;
        mode.eta_minus_im = -0.5 * s;
    }
    return mode;
}

namespace {

void check_kappa(const LinearMode& mode, const KappaParams& kappa) {
    if (mode.regime == ModeRegime::Node && !(kappa.kappa1 >= 0.0 && kappa.kappa1 <= 1.0)) {
        throw ConfigError("omega_inf: positivity forces kappa1 in [0,1] in the Node regime");
    }
    if (mode.regime == ModeRegime::Degenerate && kappa.kappa2 != 0.0) {
        throw ConfigError("omega_inf: positivity forces kappa2 = 0 in the Degenerate regime");
    }
    if (mode.regime == ModeRegime::ZeroGrowth && !(kappa.kappa >= 0.0 && kappa.kappa <= 1.0)) {
        throw ConfigError("omega_inf: nonnegativity forces kappa in [0,1] when F(0,mu) = 0");
    }
}

}  // namespace

double omega_inf(double z, const LinearMode& mode, const KappaParams& kappa) {
    check_kappa(mode, kappa);
    switch (mode.regime) {
        case ModeRegime::Oscillatory: {
            const double a = mode.eta_plus_re;
            const double b = mode.eta_plus_im;
            return std::exp(a * z) * (std::cos(b * z) + kappa.kappa * std::sin(b * z));
        }
        case ModeRegime::Node:
            return kappa.kappa1 * std::exp(mode.eta_minus_re * z) +
                   (1.0 - kappa.kappa1) * std::exp(mode.eta_plus_re * z);
        case ModeRegime::Degenerate:
            return std::exp(mode.eta_plus_re * z) * (1.0 + kappa.kappa2 * z);
        case ModeRegime::ZeroGrowth:
            return kappa.kappa + (1.0 - kappa.kappa) * std::exp(mode.c * z);
    }
    return 0.0;
}

double omega_inf_prime(double z, const LinearMode& mode, const KappaParams& kappa) {
    check_kappa(mode, kappa);
    switch (mode.regime) {
        case ModeRegime::Oscillatory: {
            const double a = mode.eta_plus_re;
            const double b = mode.eta_plus_im;
            const double cz = std::cos(b * z);
            const double sz = std::sin(b * z);
            return std::exp(a * z) *
                   (a * (cz + kappa.kappa * sz) + b * (kappa.kappa * cz - sz));
        }
        case ModeRegime::Node:
            return kappa.kappa1 * mode.eta_minus_re * std::exp(mode.eta_minus_re * z) +
                   (1.0 - kappa.kappa1) * mode.eta_plus_re * std::exp(mode.eta_plus_re * z);
        case ModeRegime::Degenerate:
            return std::exp(mode.eta_plus_re * z) *
                   (mode.eta_plus_re * (1.0 + kappa.kappa2 * z) + kappa.kappa2);
        case ModeRegime::ZeroGrowth:
            return (1.0 - kappa.kappa) * mode.c * std::exp(mode.c * z);
    }
    return 0.0;
}

std::optional<double> sign_change_exists(const LinearMode& mode, const KappaParams& kappa,
                                         double z_lo, double z_hi, double step) {
    if (!(step > 0.0) || !(z_hi > z_lo)) {
        throw ConfigError("sign_change_exists: bad scan range");
    }
    double z_prev = z_lo;
    double w_prev = omega_inf(z_lo, mode, kappa);
    if (w_prev < 0.0) {
        return z_lo;
    }
    const auto n = static_cast<std::size_t>(std::ceil((z_hi - z_lo) / step));
    for (std::size_t k = 1; k <= n; ++k) {
        const double z = std::min(z_hi, z_lo + step * static_cast<double>(k));
        const double w = omega_inf(z, mode, kappa);
        if (w < 0.0) {
            // Bisect [z_prev, z] down to the crossing.
            double lo = z_prev, hi = z;
            for (int it = 0; it < 100 && hi - lo > 1e-13; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (omega_inf(mid, mode, kappa) < 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return 0.5 * (lo + hi);
        }
        z_prev = z;
        w_prev = w;
    }
    (void)w_prev;
    return std::nullopt;
}

TWTrajectory integrate_tw(const TWState& ic, double c, const KineticModel& model, double v0,
                          double z_begin, double z_end, double dz) {
    if (!(dz > 0.0)) {
        throw ConfigError("integrate_tw: dz must be > 0");
    }
    const double span = z_end - z_begin;
    const auto steps = static_cast<std::size_t>(std::ceil(std::abs(span) / dz - 1e-12));
    const double h = steps == 0 ? 0.0 : span / static_cast<double>(steps);

    TWTrajectory traj;
    std::array<double, 4> y{ic.phi, ic.dphi, ic.psi, ic.dpsi};
    auto field = [&](const std::array<double, 4>& s) {
        return tw_rhs({s[0], s[1], s[2], s[3]}, c, model);
    };
    traj.points.push_back({z_begin, {y[0], y[1], y[2], y[3]}});
    for (std::size_t k = 0; k < steps; ++k) {
        y = rk4_step(y, h, field);
        const double z = z_begin + h * static_cast<double>(k + 1);
        traj.points.push_back({z, {y[0], y[1], y[2], y[3]}});
        const bool inside = y[0] >= -0.1 && y[0] <= 1.5 && y[2] >= -0.1 && y[2] <= 2.0 * v0 &&
                            std::isfinite(y[1]) && std::isfinite(y[3]);
        if (!inside) {
            traj.termination = Termination::Escaped;
            traj.escape_z = z;
            return traj;
        }
    }
    traj.termination = Termination::Completed;
    return traj;
}

std::vector<UnstableMode> prey_state_unstable_modes(const KineticModel& model, double c) {
    // Finite-difference Jacobian of the 4-D field at (1, 0, 0, 0).
    const double h = 1e-6;
    Eigen::Matrix4d jac;
    const std::array<double, 4> base{1.0, 0.0, 0.0, 0.0};
    for (int j = 0; j < 4; ++j) {
        std::array<double, 4> plus = base;
        std::array<double, 4> minus = base;
        plus[static_cast<std::size_t>(j)] += h;
        minus[static_cast<std::size_t>(j)] -= h;
        const auto fp = tw_rhs({plus[0], plus[1], plus[2], plus[3]}, c, model);
        const auto fm = tw_rhs({minus[0], minus[1], minus[2], minus[3]}, c, model);
        for (int i = 0; i < 4; ++i) {
            jac(i, j) = (fp[static_cast<std::size_t>(i)] - fm[static_cast<std::size_t>(i)]) /
                        (2.0 * h);
        }
    }
    Eigen::EigenSolver<Eigen::Matrix4d> solver(jac);
    std::vector<UnstableMode> modes;
    for (int k = 0; k < 4; ++k) {
        const std::complex<double> lambda = solver.eigenvalues()(k);
        if (lambda.real() <= 1e-9) {
            continue;
        }
        UnstableMode mode;
        mode.lambda_re = lambda.real();
        mode.lambda_im = lambda.imag();
        const auto vec = solver.eigenvectors().col(k);
        double max_abs = 0.0;
        for (int i = 0; i < 4; ++i) {
            max_abs = std::max(max_abs, std::abs(vec(i).real()));
        }
        if (max_abs == 0.0) {
            max_abs = 1.0;
        }
        for (int i = 0; i < 4; ++i) {
            mode.direction[static_cast<std::size_t>(i)] = vec(i).real() / max_abs;
        }
        // Orient so the predator component grows.
        if (mode.direction[2] < 0.0) {
            for (double& x : mode.direction) {
                x = -x;
            }
        }
        modes.push_back(mode);
    }
    std::sort(modes.begin(), modes.end(),
              [](const UnstableMode& a, const UnstableMode& b) {
                  return a.lambda_re < b.lambda_re;
              });
    return modes;
}

TWTrajectory shoot_from_prey_state(const KineticModel& model, double c, double v0,
                                   double perturbation, double z_end, double dz) {
    const auto modes = prey_state_unstable_modes(model, c);
    const UnstableMode* pick = nullptr;
    for (const auto& mode : modes) {
        if (std::abs(mode.direction[2]) > 1e-8) {
            pick = &mode;
            break;
        }
    }
    if (pick == nullptr) {
        throw AnalysisError("shoot_from_prey_state: no unstable mode with a predator component");
    }
    TWState ic{1.0 + perturbation * pick->direction[0], perturbation * pick->direction[1],
               perturbation * pick->direction[2], perturbation * pick->direction[3]};
    return integrate_tw(ic, c, model, v0, 0.0, z_end, dz);
}

}  // namespace invwave
