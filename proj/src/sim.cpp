#include "invwave/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "invwave/errors.hpp"
#include "invwave/kernels.hpp"

namespace invwave {

void validate(const Grid1D& grid) {
    if (grid.nx < 3) {
        throw ConfigError("grid.nx must be >= 3");
    }
    if (!(grid.x_max > grid.x_min)) {
        throw ConfigError("grid.x_max must exceed grid.x_min");
    }
}

void validate(const SimConfig& config) {
    validate(config.grid);
    if (!(config.t_end > 0.0)) {
        throw ConfigError("t_end must be > 0");
    }
    if (!(config.cfl > 0.0 && config.cfl <= 1.0)) {
        throw ConfigError("cfl must lie in (0, 1]");
    }
    if (!(config.snapshot_every > 0.0)) {
        throw ConfigError("snapshot_every must be > 0");
    }
    if (config.initial.kind != InitialKind::Custom) {
        if (!(config.initial.bump_height > 0.0)) {
            throw ConfigError("initial.bump_height must be > 0");
        }
        if (!(config.initial.bump_half_width > 0.0)) {
            throw ConfigError("initial.bump_half_width must be > 0");
        }
    }
}

double bump_profile(double x, const InitialData& init) {
    const double r = std::abs(x - init.bump_center);
    const double half = 0.5 * init.bump_half_width;
    if (r <= half) {
        return init.bump_height;
    }
    if (r < init.bump_half_width) {
        const double s = (r - half) / half;  // in (0, 1)
        return init.bump_height * 0.5 * (1.0 + std::cos(M_PI * s));
    }
    return 0.0;
}

std::vector<double> laplacian_1d(const std::vector<double>& field, double dx) {
    if (field.size() < 3) {
        throw ConfigError("laplacian_1d needs at least 3 nodes");
    }
    std::vector<double> out(field.size());
    kernels::laplacian_zero_flux(field.data(), out.data(), field.size(), 1.0 / (dx * dx));
    return out;
}

namespace {

// Method-of-lines engine; owns the stage workspace so run loops do not
// allocate.
class Engine {
  public:
    Engine(const KineticModel& model, const Grid1D& grid, bool scalar_mode)
        : model_(model),
          scalar_(scalar_mode),
          n_(grid.nx),
          inv_dx2_(1.0 / (grid.dx() * grid.dx())),
          su_(n_),
          sv_(n_),
          ku_{std::vector<double>(n_), std::vector<double>(n_), std::vector<double>(n_),
              std::vector<double>(n_)},
          kv_{std::vector<double>(n_), std::vector<double>(n_), std::vector<double>(n_),
              std::vector<double>(n_)} {}

    // Arrays must already be nonnegative.
    void eval_rhs(const std::vector<double>& u, const std::vector<double>& v,
                  std::vector<double>& du, std::vector<double>& dv, double t) {
        if (!scalar_) {
            kernels::laplacian_zero_flux(u.data(), du.data(), n_, inv_dx2_);
            for (std::size_t i = 0; i < n_; ++i) {
                const double f = model_.F(u[i], v[i]);
                if (!std::isfinite(f)) {
                    throw NumericsError("non-finite F at node " + std::to_string(i) + ", t = " +
                                        std::to_string(t));
                }
                du[i] += u[i] * f;
            }
        } else {
            std::fill(du.begin(), du.end(), 0.0);
        }
        kernels::laplacian_zero_flux(v.data(), dv.data(), n_, inv_dx2_);
        const double d = model_.d;
        for (std::size_t i = 0; i < n_; ++i) {
            const double uu = scalar_ ? 0.0 : u[i];
            const double g = model_.G(uu, v[i]);
            if (!std::isfinite(g)) {
                throw NumericsError("non-finite G at node " + std::to_string(i) + ", t = " +
                                    std::to_string(t));
            }
            dv[i] = d * dv[i] + v[i] * g;
        }
    }

    // One RK4 step in place; returns clamped mass.
    double step(std::vector<double>& u, std::vector<double>& v, double t, double dt) {
        using kernels::axpy;
        using kernels::clamp_nonnegative;
        using kernels::rk4_combine;
        double mass = 0.0;
        eval_rhs(u, v, ku_[0], kv_[0], t);

        stage(u, v, ku_[0], kv_[0], 0.5 * dt, mass);
        eval_rhs(su_, sv_, ku_[1], kv_[1], t + 0.5 * dt);

        stage(u, v, ku_[1], kv_[1], 0.5 * dt, mass);
        eval_rhs(su_, sv_, ku_[2], kv_[2], t + 0.5 * dt);

        stage(u, v, ku_[2], kv_[2], dt, mass);
        eval_rhs(su_, sv_, ku_[3], kv_[3], t + dt);

        const double s = dt / 6.0;
        if (!scalar_) {
            rk4_combine(u.data(), ku_[0].data(), ku_[1].data(), ku_[2].data(), ku_[3].data(), s,
                        u.data(), n_);
            mass += clamp_nonnegative(u.data(), n_);
        }
        rk4_combine(v.data(), kv_[0].data(), kv_[1].data(), kv_[2].data(), kv_[3].data(), s,
                    v.data(), n_);
        mass += clamp_nonnegative(v.data(), n_);

        for (std::size_t i = 0; i < n_; ++i) {
            if (!std::isfinite(v[i]) || (!scalar_ && !std::isfinite(u[i]))) {
                throw NumericsError("blow-up at t = " + std::to_string(t + dt) + ", node " +
                                    std::to_string(i));
            }
        }
        return mass;
    }

  private:
    void stage(const std::vector<double>& u, const std::vector<double>& v,
               const std::vector<double>& ku, const std::vector<double>& kv, double a,
               double& mass) {
        if (!scalar_) {
            kernels::axpy(u.data(), a, ku.data(), su_.data(), n_);
            mass += kernels::clamp_nonnegative(su_.data(), n_);
        }
        kernels::axpy(v.data(), a, kv.data(), sv_.data(), n_);
        mass += kernels::clamp_nonnegative(sv_.data(), n_);
    }

    const KineticModel& model_;
    bool scalar_;
    std::size_t n_;
    double inv_dx2_;
    std::vector<double> su_, sv_;
    std::vector<double> ku_[4];
    std::vector<double> kv_[4];
};

FieldState build_initial(const SimConfig& config, const KineticModel& model, bool scalar_mode) {
    const Grid1D& grid = config.grid;
    FieldState state;
    state.t = 0.0;
    state.u.assign(grid.nx, 0.0);
    state.v.assign(grid.nx, 0.0);
    const InitialData& init = config.initial;
    switch (init.kind) {
        case InitialKind::PreyCarryingWithBump: {
            if (scalar_mode) {
                throw ConfigError("scalar run expects scalar_bump or custom initial data");
            }
            const double mu = find_mu(model);
            if (!(init.bump_height < mu)) {
                throw ConfigError("initial.bump_height must stay below mu = " +
                                  std::to_string(mu));
            }
            for (std::size_t i = 0; i < grid.nx; ++i) {
                state.u[i] = 1.0;
                state.v[i] = bump_profile(grid.x(i), init);
            }
            break;
        }
        case InitialKind::ScalarBump: {
            const double mu = find_mu(model);
            if (!(init.bump_height < mu)) {
                throw ConfigError("initial.bump_height must stay below mu = " +
                                  std::to_string(mu));
            }
            for (std::size_t i = 0; i < grid.nx; ++i) {
                state.v[i] = bump_profile(grid.x(i), init);
            }
            break;
        }
        case InitialKind::Custom: {
            if (init.custom_v.size() != grid.nx ||
                (!scalar_mode && init.custom_u.size() != grid.nx)) {
                throw ConfigError("custom initial arrays must match grid.nx");
            }
            if (!scalar_mode) {
                state.u = init.custom_u;
            }
            state.v = init.custom_v;
            break;
        }
    }
    return state;
}

Trajectory run_impl(const SimConfig& config, const KineticModel& model, bool scalar_mode) {
    validate(config);
    if (!(model.d > 0.0)) {
        throw ConfigError("model.d must be > 0");
    }
    const Grid1D& grid = config.grid;
    const double dx = grid.dx();
    const double dt_base = config.cfl * dx * dx / (2.0 * std::max(1.0, model.d));

    Trajectory traj;
    traj.config = config;
    traj.scalar_mode = scalar_mode;

    FieldState state = build_initial(config, model, scalar_mode);
    traj.snapshots.push_back(state);

    std::vector<double> events;
    for (std::size_t k = 1;; ++k) {
        const double t = config.snapshot_every * static_cast<double>(k);
        if (t >= config.t_end - 1e-12 * config.t_end) {
            break;
        }
        events.push_back(t);
    }
    events.push_back(config.t_end);

    Engine engine(model, grid, scalar_mode);
    double t_cur = 0.0;
    for (const double t_next : events) {
        const double span = t_next - t_cur;
        const auto n_sub = static_cast<std::size_t>(std::ceil(span / dt_base - 1e-12));
        const std::size_t steps = std::max<std::size_t>(1, n_sub);
        const double h = span / static_cast<double>(steps);
        for (std::size_t k = 0; k < steps; ++k) {
            const double t_step = t_cur + h * static_cast<double>(k);
            traj.clamped_mass += engine.step(state.u, state.v, t_step, h);
        }
        t_cur = t_next;
        state.t = t_cur;
        traj.snapshots.push_back(state);
    }
    return traj;
}

}  // namespace

RhsResult rhs(const FieldState& state, const KineticModel& model, const Grid1D& grid) {
    validate(grid);
    if (state.u.size() != grid.nx || state.v.size() != grid.nx) {
        throw ConfigError("state arrays must match grid.nx");
    }
    std::vector<double> u = state.u;
    std::vector<double> v = state.v;
    kernels::clamp_nonnegative(u.data(), u.size());
    kernels::clamp_nonnegative(v.data(), v.size());
    RhsResult out;
    out.du_dt.resize(grid.nx);
    out.dv_dt.resize(grid.nx);
    Engine engine(model, grid, false);
    engine.eval_rhs(u, v, out.du_dt, out.dv_dt, state.t);
    return out;
}

FieldState step_rk4(const FieldState& state, const KineticModel& model, const Grid1D& grid,
                    double dt) {
    validate(grid);
    const double dx = grid.dx();
    const double dt_max = dx * dx / (2.0 * std::max(1.0, model.d));
    if (dt > dt_max * (1.0 + 1e-12)) {
        throw NumericsError("dt = " + std::to_string(dt) + " violates the CFL bound " +
                            std::to_string(dt_max));
    }
    FieldState next = state;
    kernels::clamp_nonnegative(next.u.data(), next.u.size());
    kernels::clamp_nonnegative(next.v.data(), next.v.size());
    Engine engine(model, grid, false);
    engine.step(next.u, next.v, state.t, dt);
    next.t = state.t + dt;
    return next;
}

Trajectory run(const SimConfig& config, const KineticModel& model) {
    return run_impl(config, model, false);
}

Trajectory scalar_run(const SimConfig& config, const KineticModel& model) {
    return run_impl(config, model, true);
}

}  // namespace invwave
