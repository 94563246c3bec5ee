#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "invwave/model.hpp"

namespace invwave {

// Traveling-wave state (phi, phi', psi, psi') for the 4-D first-order form of
// the profile equations.
struct TWState {
    double phi = 0.0;
    double dphi = 0.0;
    double psi = 0.0;
    double dpsi = 0.0;
};

// Point of the limit phase plane: predator profile after prey extinction.
struct PlaneState {
    double psi_inf = 0.0;
    double chi_inf = 0.0;
};

enum class Region { A1, A2, A3, A4, A5, A6, Other };

std::string to_string(Region r);

// Slope bounds for chi_inf: extrema of eta G(0, eta) / c over [0, v0].
struct ThetaBounds {
    double theta_minus = 0.0;  // < 0 for admissible models
    double theta_plus = 0.0;   // > 0
    double arg_minus = 0.0;
    double arg_plus = 0.0;
    bool degenerate = false;  // both bounds vanish (G(0,.) identically 0)
};

// Bounds for the logarithmic derivative w = phi'/phi: roots of
// rho^2 - c rho - m = 0 where F >= -m on the audit box.
struct RiccatiBounds {
    double m = 0.0;
    double pi_plus = 0.0;
    double pi_minus = 0.0;
};

enum class ModeRegime { Oscillatory, Node, Degenerate, ZeroGrowth };

std::string to_string(ModeRegime r);

// Characteristic roots of w'' - c w' + f0mu w = 0. Complex pairs are carried
// as explicit (re, im) parts; in the Node/Degenerate regimes im = 0.
struct LinearMode {
    double c = 0.0;
    double f0mu = 0.0;
    double c0 = 0.0;  // 2 sqrt(f0mu)
    ModeRegime regime = ModeRegime::Node;
    double eta_plus_re = 0.0;
    double eta_plus_im = 0.0;
    double eta_minus_re = 0.0;
    double eta_minus_im = 0.0;
};

struct KappaParams {
    double kappa = 0.0;   // Oscillatory / ZeroGrowth coefficient
    double kappa1 = 0.0;  // Node: must lie in [0, 1]
    double kappa2 = 0.0;  // Degenerate: must be 0
};

enum class Termination { Completed, Escaped };

struct PlanePoint {
    double z = 0.0;
    PlaneState s;
};

struct PlaneTrajectory {
    std::vector<PlanePoint> points;
    Termination termination = Termination::Completed;
    double escape_z = 0.0;
};

struct TWPoint {
    double z = 0.0;
    TWState s;
};

struct TWTrajectory {
    std::vector<TWPoint> points;
    Termination termination = Termination::Completed;
    double escape_z = 0.0;
};

// (phi', c phi' - phi F, psi', (c psi' - psi G)/d).
std::array<double, 4> tw_rhs(const TWState& s, double c, const KineticModel& model);

// Fixed-step RK4 on the limit plane
//   psi' = chi,  d chi' = c chi - psi G(0, psi).
// Integrates from z_begin to z_end (either direction); stops early with
// Escaped once psi_inf > 2 v0 or |chi_inf| > 10 max(theta_plus, |theta_minus|).
PlaneTrajectory integrate_plane(const PlaneState& ic, double c, const KineticModel& model,
                                double v0, double z_begin, double z_end, double dz);

// Membership in A1..A6 with |psi - mu| <= tol_eq (and |chi| <= tol_eq)
// resolving the equality branches. psi < mu belongs to no A_i -> Other.
Region classify_region(const PlaneState& p, double mu, double tol_eq = 1e-8);

ThetaBounds theta_bounds(const KineticModel& model, double c, double v0);

// m from a 201x201 grid of F over [0,1] x [0,v0]; pi from the closed form.
RiccatiBounds riccati_bounds(const KineticModel& model, double c, double v0);

// Closed-form solution of w' = c w - w^2 + m started at w(z1) = w1 <= -pi_plus:
// blows down to -infinity as z -> z2^-.
struct RiccatiBlowup {
    double z1 = 0.0;
    double w1 = 0.0;
    double c = 0.0;
    double m = 0.0;
    double root_gap = 0.0;  // sqrt(c^2 + 4m)
    double pi_plus = 0.0;
    double pi_minus = 0.0;
    double z2 = 0.0;

    double operator()(double z) const;  // valid on [z1, z2)
};

RiccatiBlowup riccati_blowup(double z1, double w1, double c, double m);

// w = phi'/phi along a sampled profile (central differences); phi must be
// strictly positive.
struct RiccatiSeries {
    std::vector<double> z;
    std::vector<double> w;
    double max_abs = 0.0;
    double left_boundary_value = 0.0;  // reported, not assumed to vanish
};

RiccatiSeries riccati_of_profile(const std::vector<double>& z, const std::vector<double>& phi);

// Regime trichotomy by sign of c - c0 (tolerance 1e-9). f0mu within tol_zero
// of 0 selects the ZeroGrowth special case.
LinearMode linear_mode(double c, double f0mu, double tol = 1e-9);

// Closed-form solution of the limit linear equation with omega(0) = 1.
// Node rejects kappa1 outside [0,1]; Degenerate rejects kappa2 != 0;
// ZeroGrowth rejects kappa outside [0,1] (positivity constraints).
double omega_inf(double z, const LinearMode& mode, const KappaParams& kappa);
double omega_inf_prime(double z, const LinearMode& mode, const KappaParams& kappa);

// First z0 in [z_lo, z_hi] where omega_inf crosses below zero (bisected to
// ~1e-12); nullopt when omega stays nonnegative on the scan grid.
std::optional<double> sign_change_exists(const LinearMode& mode, const KappaParams& kappa,
                                         double z_lo, double z_hi, double step = 1e-2);

// Fixed-step RK4 on the 4-D profile system. Escapes once (phi, psi) leaves
// [-0.1, 1.5] x [-0.1, 2 v0].
TWTrajectory integrate_tw(const TWState& ic, double c, const KineticModel& model, double v0,
                          double z_begin, double z_end, double dz);

// Unstable eigenpairs of the 4x4 Jacobian at the prey-only state (1,0,0,0),
// eigenvectors normalized to unit max component with nonnegative psi part.
struct UnstableMode {
    double lambda_re = 0.0;
    double lambda_im = 0.0;
    std::array<double, 4> direction{};
};

std::vector<UnstableMode> prey_state_unstable_modes(const KineticModel& model, double c);

// Diagnostic shot off the prey-only state along the slowest unstable mode
// with a predator component, perturbed by `perturbation` (default 1e-6).
TWTrajectory shoot_from_prey_state(const KineticModel& model, double c, double v0,
                                   double perturbation, double z_end, double dz);

}  // namespace invwave
