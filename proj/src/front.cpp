#include "invwave/front.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "invwave/errors.hpp"

namespace invwave {

double front_position(const FieldState& state, const Grid1D& grid, Species species,
                      double level) {
    const std::vector<double>& f = species == Species::Predator ? state.v : state.u;
    if (f.size() != grid.nx || grid.nx < 2) {
        throw ConfigError("front_position: field does not match grid");
    }
    const double dx = grid.dx();
    for (std::size_t i = grid.nx - 1; i-- > 0;) {
        const double a = f[i] - level;
        const double b = f[i + 1] - level;
        const bool crossing = species == Species::Predator ? (a >= 0.0 && b < 0.0)
                                                           : (a < 0.0 && b >= 0.0);
        if (crossing) {
            // Exact when the data is linear between the bracketing nodes.
            const double frac = a / (a - b);
            return grid.x(i) + frac * dx;
        }
    }
    throw FrontNotPresent("front not present: no " +
                          std::string(species == Species::Predator ? "predator" : "prey") +
                          " crossing of level " + std::to_string(level));
}

FrontTrace front_trace(const Trajectory& traj, Species species, double level) {
    FrontTrace trace;
    trace.species = species;
    trace.level = level;
    for (const FieldState& snap : traj.snapshots) {
        try {
            trace.points.emplace_back(snap.t,
                                      front_position(snap, traj.config.grid, species, level));
        } catch (const FrontNotPresent&) {
            // No crossing yet (or anymore); skip the snapshot.
        }
    }
    return trace;
}

SpeedEstimate estimate_speed(const FrontTrace& trace, double t_lo, double t_hi) {
    SpeedEstimate est;
    est.t_lo = t_lo;
    est.t_hi = t_hi;
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : trace.points) {
        if (p.first >= t_lo - 1e-12 && p.first <= t_hi + 1e-12) {
            pts.push_back(p);
        }
    }
    est.n_points = pts.size();
    if (pts.size() < 10) {
        throw AnalysisError("estimate_speed: need >= 10 trace points in window, have " +
                            std::to_string(pts.size()));
    }
    const double n = static_cast<double>(pts.size());
    double st = 0.0, sx = 0.0;
    for (const auto& [t, x] : pts) {
        st += t;
        sx += x;
    }
    const double tbar = st / n;
    const double xbar = sx / n;
    double stt = 0.0, stx = 0.0, sxx = 0.0;
    for (const auto& [t, x] : pts) {
        stt += (t - tbar) * (t - tbar);
        stx += (t - tbar) * (x - xbar);
        sxx += (x - xbar) * (x - xbar);
    }
    if (stt <= 0.0) {
        throw AnalysisError("estimate_speed: degenerate window (all times equal)");
    }
    est.c_measured = stx / stt;
    est.intercept = xbar - est.c_measured * tbar;
    double ss_res = 0.0;
    for (const auto& [t, x] : pts) {
        const double r = x - (est.intercept + est.c_measured * t);
        ss_res += r * r;
    }
    est.r_squared = sxx > 0.0 ? std::max(0.0, 1.0 - ss_res / sxx) : 0.0;
    est.trusted = est.r_squared >= 0.99;
    return est;
}

Profile moving_frame_profile(const Trajectory& traj, const KineticModel& model, double c,
                             double t_ref, double level) {
    const FieldState* snap = nullptr;
    for (const FieldState& s : traj.snapshots) {
        if (std::abs(s.t - t_ref) <= 1e-9 * std::max(1.0, std::abs(t_ref))) {
            snap = &s;
            break;
        }
    }
    if (snap == nullptr) {
        throw AnalysisError("moving_frame_profile: no snapshot at t = " + std::to_string(t_ref));
    }
    const Grid1D& grid = traj.config.grid;
    const double dx = grid.dx();

    Profile prof;
    prof.t_ref = t_ref;
    prof.c = c;
    prof.x_front = front_position(*snap, grid, Species::Predator, level);
    const std::size_t n = grid.nx;
    prof.z.resize(n);
    prof.phi = snap->u;
    prof.psi = snap->v;
    prof.resid_u.assign(n, 0.0);
    prof.resid_v.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        prof.z[i] = grid.x(i) - prof.x_front;
    }
    const double inv_dx2 = 1.0 / (dx * dx);
    const double inv_2dx = 1.0 / (2.0 * dx);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double phi = prof.phi[i];
        const double psi = prof.psi[i];
        const double phi_zz = (prof.phi[i - 1] - 2.0 * phi + prof.phi[i + 1]) * inv_dx2;
        const double psi_zz = (prof.psi[i - 1] - 2.0 * psi + prof.psi[i + 1]) * inv_dx2;
        const double phi_z = (prof.phi[i + 1] - prof.phi[i - 1]) * inv_2dx;
        const double psi_z = (prof.psi[i + 1] - prof.psi[i - 1]) * inv_2dx;
        prof.resid_u[i] = phi_zz + c * phi_z + phi * model.F(phi, psi);
        prof.resid_v[i] = model.d * psi_zz + c * psi_z + psi * model.G(phi, psi);
    }
    return prof;
}

double profile_residual_linf(const Profile& profile, double z_lo, double z_hi) {
    double linf = 0.0;
    bool any = false;
    for (std::size_t i = 1; i + 1 < profile.z.size(); ++i) {
        if (profile.z[i] < z_lo || profile.z[i] > z_hi) {
            continue;
        }
        any = true;
        linf = std::max(linf, std::max(std::abs(profile.resid_u[i]), std::abs(profile.resid_v[i])));
    }
    if (!any) {
        throw AnalysisError("profile_residual_linf: window contains no interior nodes");
    }
    return linf;
}

PersistenceReport persistence_check(const Trajectory& traj, const FrontTrace& trace, double mu,
                                    double v0, double offset, double width,
                                    const PersistenceTolerances& tol) {
    if (traj.snapshots.empty()) {
        throw AnalysisError("persistence_check: empty trajectory");
    }
    const FieldState& last = traj.snapshots.back();
    const Grid1D& grid = traj.config.grid;
    double x_front;
    try {
        x_front = front_position(last, grid, trace.species, trace.level);
    } catch (const FrontNotPresent&) {
        if (!trace.points.empty()) {
            x_front = trace.points.back().second;
        } else {
            // Invasion never reached the level anywhere; anchor at the right
            // edge so the report still describes the trailing state (and the
            // mu check fails honestly).
            x_front = grid.x_max;
        }
    }

    PersistenceReport rep;
    rep.offset_behind_front = offset;
    rep.width = width;
    rep.window_lo = x_front - offset - width;
    rep.window_hi = x_front - offset;
    if (rep.window_lo < grid.x_min - 1e-9 || rep.window_hi > grid.x_max + 1e-9) {
        throw AnalysisError(
            "persistence_check: trailing window escapes the grid; use a longer domain");
    }
    const double dx = grid.dx();
    const auto i_lo = static_cast<std::size_t>(std::ceil((rep.window_lo - grid.x_min) / dx - 1e-9));
    const auto i_hi =
        static_cast<std::size_t>(std::floor((rep.window_hi - grid.x_min) / dx + 1e-9));
    if (i_hi < i_lo || i_hi >= grid.nx) {
        throw AnalysisError("persistence_check: trailing window contains no nodes");
    }
    rep.phi_trailing_min = rep.phi_trailing_max = last.u[i_lo];
    rep.psi_trailing_min = rep.psi_trailing_max = last.v[i_lo];
    for (std::size_t i = i_lo + 1; i <= i_hi; ++i) {
        rep.phi_trailing_min = std::min(rep.phi_trailing_min, last.u[i]);
        rep.phi_trailing_max = std::max(rep.phi_trailing_max, last.u[i]);
        rep.psi_trailing_min = std::min(rep.psi_trailing_min, last.v[i]);
        rep.psi_trailing_max = std::max(rep.psi_trailing_max, last.v[i]);
    }
    rep.mu_check = rep.psi_trailing_min >= mu - tol.tol_mu_rel * mu;
    rep.phi_lower_check = rep.phi_trailing_min >= tol.delta_floor;
    rep.phi_upper_check = rep.phi_trailing_max <= 1.0 - tol.tol_edge;
    rep.psi_upper_check = rep.psi_trailing_max <= v0 - tol.tol_edge;
    return rep;
}

}  // namespace invwave
