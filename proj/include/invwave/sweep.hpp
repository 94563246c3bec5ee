#pragma once

#include <string>

#include "invwave/config.hpp"

namespace invwave {

// Full analysis of one run config: constants, simulation, speed fit,
// persistence verdict. The building block for `analyze` and `sweep`.
struct RunOutcome {
    ModelConstants constants;
    SpeedEstimate speed;
    PersistenceReport persistence;
    double front_level = 0.0;
    bool boundary_margin_ok = true;  // front stayed >= 50 units off the right edge
};

RunOutcome analyze_trajectory(const Trajectory& traj, const RunConfig& config,
                              const KineticModel& model);

RunOutcome simulate_and_analyze(const RunConfig& config);

// Deterministic parallel sweep; returns the complete CSV. Rows are computed
// by `jobs` workers but merged by index, so the output does not depend on
// the worker count. Per-row wall time goes to stderr, not the CSV.
std::string run_sweep_csv(const SweepConfig& sweep, bool log_progress = true);

}  // namespace invwave
