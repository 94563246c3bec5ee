#include "invwave/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <iostream>
#include <mutex>
#include <thread>

#include "invwave/errors.hpp"

namespace invwave {

RunOutcome analyze_trajectory(const Trajectory& traj, const RunConfig& config,
                              const KineticModel& model) {
    RunOutcome out;
    out.constants = compute_constants(model);
    const bool predator = config.analysis.species != "prey";
    const Species species = predator ? Species::Predator : Species::Prey;
    out.front_level =
        config.analysis.front_level.value_or(predator ? 0.5 * out.constants.mu : 0.5);

    const FrontTrace trace = front_trace(traj, species, out.front_level);
    if (trace.points.empty()) {
        throw FrontNotPresent("front not present in any snapshot at level " +
                              std::to_string(out.front_level));
    }
    out.speed = estimate_speed(trace, config.analysis.fit_t_lo, config.analysis.fit_t_hi);
    // Domain-truncation guard: keep the measured front well away from the
    // right boundary inside the fit window.
    for (const auto& [t, x] : trace.points) {
        if (t <= config.analysis.fit_t_hi + 1e-12 && traj.config.grid.x_max - x < 50.0) {
            out.boundary_margin_ok = false;
            break;
        }
    }
    out.persistence =
        persistence_check(traj, trace, out.constants.mu, out.constants.v0,
                          config.analysis.window_offset, config.analysis.window_width,
                          config.analysis.tolerances);
    return out;
}

RunOutcome simulate_and_analyze(const RunConfig& config) {
    const KineticModel model = model_from_spec(config.model);
    const Trajectory traj = config.sim.initial.kind == InitialKind::ScalarBump
                                ? scalar_run(config.sim, model)
                                : run(config.sim, model);
    return analyze_trajectory(traj, config, model);
}

namespace {

std::string sanitize_cell(std::string s) {
    for (char& c : s) {
        if (c == ',' || c == '\n' || c == '\r') {
            c = ';';
        }
    }
    return s;
}

std::string bool_cell(bool b) {
    return b ? "true" : "false";
}

struct RowResult {
    std::string line;
    double seconds = 0.0;
};

RowResult compute_row(const SweepConfig& sweep, std::size_t index) {
    const auto start = std::chrono::steady_clock::now();

    // Decode the row-major multi-index (last axis fastest).
    std::vector<std::size_t> sub(sweep.axes.size(), 0);
    {
        std::size_t rem = index;
        for (std::size_t a = sweep.axes.size(); a-- > 0;) {
            sub[a] = rem % sweep.axes[a].values.size();
            rem /= sweep.axes[a].values.size();
        }
    }

    std::string line = std::to_string(index);
    ojson patched = sweep.base;
    for (std::size_t a = 0; a < sweep.axes.size(); ++a) {
        const double value = sweep.axes[a].values[sub[a]];
        apply_path(patched, sweep.axes[a].path, value);
        line += ',' + format_double(value);
    }

    std::string constants_cells = ",,,,,";       // mu..classification, 6 cells
    std::string sim_cells = ",,,,,,,,,,,,";      // 12 simulation cells, leading comma
    std::string status = "ok";
    try {
        const RunConfig rc = parse_run_config(patched);
        const KineticModel model = model_from_spec(rc.model);
        const ModelConstants mc = compute_constants(model);
        constants_cells = format_double(mc.mu) + ',' + format_double(mc.v0) + ',' +
                          format_double(mc.c_star) + ',' + format_double(mc.f0mu) + ',' +
                          (mc.c0 ? format_double(*mc.c0) : std::string()) + ',' +
                          to_string(mc.classification);
        if (sweep.simulate) {
            const RunOutcome outcome = simulate_and_analyze(rc);
            const PersistenceReport& p = outcome.persistence;
            sim_cells = ',' + format_double(outcome.speed.c_measured) + ',' +
                        format_double(outcome.speed.r_squared) + ',' +
                        bool_cell(outcome.speed.trusted) + ',' +
                        format_double(p.psi_trailing_min) + ',' +
                        format_double(p.phi_trailing_min) + ',' +
                        format_double(p.phi_trailing_max) + ',' +
                        format_double(p.psi_trailing_max) + ',' + bool_cell(p.mu_check) + ',' +
                        bool_cell(p.phi_lower_check) + ',' + bool_cell(p.phi_upper_check) + ',' +
                        bool_cell(p.psi_upper_check) + ',' + bool_cell(p.all());
        }
    } catch (const Error& e) {
        status = sanitize_cell(e.what());
    }
    line += ',' + constants_cells + sim_cells + ',' + status;

    const auto stop = std::chrono::steady_clock::now();
    RowResult rr;
    rr.line = std::move(line);
    rr.seconds = std::chrono::duration<double>(stop - start).count();
    return rr;
}

}  // namespace

std::string run_sweep_csv(const SweepConfig& sweep, bool log_progress) {
    std::size_t total = 1;
    for (const auto& axis : sweep.axes) {
        total *= axis.values.size();
    }
    if (total > sweep.row_cap) {
        throw ConfigError("sweep grid exceeds row cap");
    }

    std::vector<std::string> rows(total);
    std::atomic<std::size_t> next{0};
    std::mutex log_mutex;
    auto worker = [&]() {
        while (true) {
            const std::size_t index = next.fetch_add(1);
            if (index >= total) {
                return;
            }
            RowResult rr = compute_row(sweep, index);
            rows[index] = std::move(rr.line);
            if (log_progress) {
                std::lock_guard<std::mutex> lock(log_mutex);
                std::cerr << "[sweep] row " << index << "/" << total << " done ("
                          << rr.seconds << " s)\n";
            }
        }
    };

    const unsigned jobs = std::max(1u, sweep.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (unsigned t = 0; t < jobs; ++t) {
            pool.emplace_back(worker);
        }
        for (auto& t : pool) {
            t.join();
        }
    }

    std::string csv = "index";
    for (const auto& axis : sweep.axes) {
        csv += ',' + axis.path;
    }
    csv +=
        ",mu,v0,c_star,f0mu,c0,classification,c_measured,r_squared,speed_trusted,"
        "psi_trailing_min,phi_trailing_min,phi_trailing_max,psi_trailing_max,"
        "mu_check,phi_lower_check,phi_upper_check,psi_upper_check,persistent,status\n";
    for (const std::string& row : rows) {
        csv += row;
        csv += '\n';
    }
    return csv;
}

}  // namespace invwave
