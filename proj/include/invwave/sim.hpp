#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "invwave/model.hpp"

namespace invwave {

struct Grid1D {
    double x_min = -100.0;
    double x_max = 300.0;
    std::size_t nx = 2001;

    double dx() const { return (x_max - x_min) / static_cast<double>(nx - 1); }
    double x(std::size_t i) const { return x_min + dx() * static_cast<double>(i); }
};

void validate(const Grid1D& grid);

enum class InitialKind { PreyCarryingWithBump, ScalarBump, Custom };

// Compactly supported predator bump: flat at bump_height on
// [center - hw/2, center + hw/2], cosine ramps down to zero on the flanks
// [center - hw, center - hw/2] and [center + hw/2, center + hw].
struct InitialData {
    InitialKind kind = InitialKind::PreyCarryingWithBump;
    double bump_center = -50.0;
    double bump_half_width = 10.0;  // full flank extent of the bump
    double bump_height = 0.25;      // must stay below mu
    std::vector<double> custom_u;   // Custom only
    std::vector<double> custom_v;
};

double bump_profile(double x, const InitialData& init);

struct SimConfig {
    Grid1D grid;
    double t_end = 100.0;
    double cfl = 0.4;  // dt = cfl * dx^2 / (2 * max(1, d))
    double snapshot_every = 5.0;
    InitialData initial;
};

void validate(const SimConfig& config);

struct FieldState {
    double t = 0.0;
    std::vector<double> u;
    std::vector<double> v;
};

struct Trajectory {
    SimConfig config;
    std::vector<FieldState> snapshots;
    double clamped_mass = 0.0;  // total negative mass removed by clamping
    bool scalar_mode = false;
};

// Second-order central Laplacian with zero-flux (mirrored ghost) closure.
std::vector<double> laplacian_1d(const std::vector<double>& field, double dx);

// du/dt = lap(u) + u F(u,v), dv/dt = d lap(v) + v G(u,v). Inputs are clamped
// nonnegative before the evaluators see them.
struct RhsResult {
    std::vector<double> du_dt;
    std::vector<double> dv_dt;
};
RhsResult rhs(const FieldState& state, const KineticModel& model, const Grid1D& grid);

// One classic RK4 step; stage outputs and the result are clamped nonnegative.
// dt above the diffusive stability bound dx^2/(2 max(1,d)) is refused.
FieldState step_rk4(const FieldState& state, const KineticModel& model, const Grid1D& grid,
                    double dt);

// Integrate the full system; snapshots at multiples of snapshot_every and at
// t_end (each hit exactly by shortening steps, never lengthening them).
Trajectory run(const SimConfig& config, const KineticModel& model);

// Scalar comparison equation w_t = d lap(w) + w G(0, w); u is held at zero.
Trajectory scalar_run(const SimConfig& config, const KineticModel& model);

}  // namespace invwave
