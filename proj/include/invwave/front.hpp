#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "invwave/model.hpp"
#include "invwave/sim.hpp"

namespace invwave {

enum class Species { Prey, Predator };

// Front positions over time at a fixed crossing level. The predator front is
// the rightmost falling crossing of v (high behind, low ahead); the prey
// front is the rightmost rising crossing of u (depressed behind, carrying
// capacity ahead). Frame convention everywhere: the simulated front moves
// right; the wave coordinate below is z = x - x_front.
struct FrontTrace {
    Species species = Species::Predator;
    double level = 0.5;
    std::vector<std::pair<double, double>> points;  // (t, x_front)
};

struct SpeedEstimate {
    double c_measured = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double t_lo = 0.0;
    double t_hi = 0.0;
    std::size_t n_points = 0;
    bool trusted = false;  // r_squared >= 0.99
};

// Trailing-window extrema standing in for the asymptotic bounds behind the
// front, plus the four persistence booleans.
struct PersistenceReport {
    double psi_trailing_min = 0.0;
    double psi_trailing_max = 0.0;
    double phi_trailing_min = 0.0;
    double phi_trailing_max = 0.0;
    bool mu_check = false;         // min psi >= mu - tol_mu
    bool phi_lower_check = false;  // min phi >= delta_floor
    bool phi_upper_check = false;  // max phi <= 1 - tol_edge
    bool psi_upper_check = false;  // max psi <= v0 - tol_edge
    double window_lo = 0.0;
    double window_hi = 0.0;
    double offset_behind_front = 0.0;
    double width = 0.0;

    bool all() const { return mu_check && phi_lower_check && phi_upper_check && psi_upper_check; }
};

struct PersistenceTolerances {
    double tol_mu_rel = 0.05;  // tol_mu = tol_mu_rel * mu
    double delta_floor = 0.02;
    double tol_edge = 1e-3;
};

// Rightmost level crossing, linearly interpolated. Throws FrontNotPresent.
double front_position(const FieldState& state, const Grid1D& grid, Species species, double level);

// front_position mapped over the snapshots; snapshots without a crossing are
// skipped.
FrontTrace front_trace(const Trajectory& traj, Species species, double level);

// Ordinary least squares of x_front against t over [t_lo, t_hi]; needs at
// least 10 points.
SpeedEstimate estimate_speed(const FrontTrace& trace, double t_lo, double t_hi);

// Snapshot at t_ref re-coordinated to z = x - x_front(t_ref) (front anchored
// on the predator crossing of `level`), with the traveling-wave residuals
//   r_u = phi'' + c phi' + phi F(phi, psi)
//   r_v = d psi'' + c psi' + psi G(phi, psi)
// computed by central differences (the +c signs belong to the
// rightward-moving frame; the mirror z -> -z recovers the usual leftward
// form). Residual entries at the two boundary nodes are zero-filled.
struct Profile {
    double t_ref = 0.0;
    double x_front = 0.0;
    double c = 0.0;
    std::vector<double> z;
    std::vector<double> phi;
    std::vector<double> psi;
    std::vector<double> resid_u;
    std::vector<double> resid_v;
};

Profile moving_frame_profile(const Trajectory& traj, const KineticModel& model, double c,
                             double t_ref, double level);

// Max of |resid_u|, |resid_v| over z in [z_lo, z_hi] (interior nodes only).
double profile_residual_linf(const Profile& profile, double z_lo, double z_hi);

// Extrema of (u, v) over the trailing window
// [x_front - offset - width, x_front - offset] at the final snapshot, plus
// the persistence booleans. The window must lie inside the grid.
PersistenceReport persistence_check(const Trajectory& traj, const FrontTrace& trace, double mu,
                                    double v0, double offset = 50.0, double width = 100.0,
                                    const PersistenceTolerances& tol = {});

}  // namespace invwave
