#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "invwave/assumptions.hpp"
#include "invwave/config.hpp"
#include "invwave/errors.hpp"
#include "invwave/json_io.hpp"
#include "invwave/kernels.hpp"
#include "invwave/sweep.hpp"

namespace {

using invwave::ojson;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitAssumption = 3;
constexpr int kExitAnalysis = 4;
constexpr int kExitNumerics = 5;

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << content;
    } else {
        invwave::write_text_file(out_path, content);
    }
}

ojson load_json(const std::string& path) {
    try {
        return ojson::parse(invwave::read_text_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw invwave::ConfigError("cannot parse '" + path + "': " + e.what());
    }
}

int cmd_check_model(const std::string& config_path, const std::string& out_path,
                    std::size_t samples) {
    ojson j = load_json(config_path);
    // Accept either a full run config or a bare model spec.
    ojson model_json = j.contains("model") ? j["model"] : j;
    ojson wrapper;
    wrapper["model"] = model_json;
    const invwave::RunConfig rc = invwave::parse_run_config(wrapper);
    const invwave::KineticModel model = invwave::model_from_spec(rc.model);

    const invwave::ModelConstants mc = invwave::compute_constants(model);
    const invwave::AssumptionReport report =
        invwave::verify_assumptions(model, mc.mu, mc.v0, samples);

    ojson out;
    out["model"] = rc.model.name;
    ojson params = ojson::object();
    for (const auto& [key, value] : rc.model.params) {
        params[key] = value;
    }
    out["params"] = params;
    out["d"] = model.d;
    out["constants"] = invwave::constants_to_json(mc);
    out["assumptions"] = invwave::assumption_report_to_json(report);
    emit(out.dump(2) + "\n", out_path);

    if (mc.classification == invwave::Classification::Inconclusive) {
        std::cerr << "warning: F(0,mu) = " << mc.f0mu
                  << " sits on the undecidable boundary; no persistence verdict\n";
    }
    return report.all() ? kExitOk : kExitAssumption;
}

int cmd_simulate(const std::string& config_path, const std::string& out_path) {
    const invwave::RunConfig rc = invwave::load_run_config(config_path);
    const invwave::KineticModel model = invwave::model_from_spec(rc.model);
    const invwave::Trajectory traj = rc.sim.initial.kind == invwave::InitialKind::ScalarBump
                                         ? invwave::scalar_run(rc.sim, model)
                                         : invwave::run(rc.sim, model);
    const std::string path = out_path.empty() ? "trajectory.csv" : out_path;
    invwave::write_text_file(path, invwave::trajectory_to_csv(traj));

    ojson meta;
    meta["config_hash"] = invwave::config_hash(rc);
    meta["kernel_backend"] = invwave::kernels::backend_name(invwave::kernels::active_backend());
    meta["scalar_mode"] = traj.scalar_mode;
    meta["snapshots"] = traj.snapshots.size();
    meta["nx"] = rc.sim.grid.nx;
    meta["clamped_mass"] = traj.clamped_mass;
    invwave::write_text_file(path + ".meta.json", meta.dump(2) + "\n");
    std::cerr << "[simulate] " << traj.snapshots.size() << " snapshots -> " << path
              << " (clamped mass " << traj.clamped_mass << ")\n";
    return kExitOk;
}

int cmd_analyze(const std::string& traj_path, const std::string& config_path,
                const std::string& out_path, std::optional<double> level_override) {
    invwave::RunConfig rc = invwave::load_run_config(config_path);
    if (level_override.has_value()) {
        rc.analysis.front_level = *level_override;
    }

    const ojson meta = load_json(traj_path + ".meta.json");
    if (!meta.contains("config_hash") ||
        meta["config_hash"].get<std::string>() != invwave::config_hash(rc)) {
        throw invwave::ConfigError("trajectory sidecar hash does not match this config; "
                                   "refusing to analyze");
    }

    invwave::Trajectory traj = invwave::trajectory_from_csv(invwave::read_text_file(traj_path));
    // The CSV carries the grid; the config supplies the rest.
    traj.config.t_end = rc.sim.t_end;
    traj.config.snapshot_every = rc.sim.snapshot_every;

    const invwave::KineticModel model = invwave::model_from_spec(rc.model);
    const invwave::RunOutcome outcome = invwave::analyze_trajectory(traj, rc, model);

    ojson out;
    out["config_hash"] = invwave::config_hash(rc);
    out["frame"] = "front moves right; wave coordinate z = x - x_front";
    out["front"] = {{"species", rc.analysis.species}, {"level", outcome.front_level}};
    out["constants"] = invwave::constants_to_json(outcome.constants);
    out["speed"] = invwave::speed_to_json(outcome.speed);
    out["persistence"] = invwave::persistence_to_json(outcome.persistence);
    out["boundary_margin_ok"] = outcome.boundary_margin_ok;
    emit(out.dump(2) + "\n", out_path);

    if (!outcome.speed.trusted) {
        std::cerr << "warning: speed fit r^2 = " << outcome.speed.r_squared
                  << " below the trust threshold\n";
    }
    if (!outcome.boundary_margin_ok) {
        std::cerr << "warning: front came within 50 units of the right boundary during the "
                     "fit window; extend the domain\n";
    }
    return kExitOk;
}

int cmd_phase(const std::string& config_path, const std::string& out_path,
              std::optional<double> c_override) {
    const invwave::RunConfig rc = invwave::load_run_config(config_path);
    if (!rc.phase.has_value()) {
        throw invwave::ConfigError("config has no 'phase' section");
    }
    invwave::PhaseSection ps = *rc.phase;
    if (c_override.has_value()) {
        ps.c = *c_override;
    }
    const invwave::KineticModel model = invwave::model_from_spec(rc.model);
    const double mu = invwave::find_mu(model);
    const double v0 = invwave::find_v0(model, mu);
    const invwave::PlaneTrajectory traj =
        invwave::integrate_plane(ps.ic, ps.c, model, v0, ps.z_begin, ps.z_end, ps.dz);
    emit(invwave::plane_trajectory_to_csv(traj, mu, 1e-8), out_path);
    return kExitOk;
}

int cmd_mode(double c, double f0mu, double kappa, double kappa1, double kappa2,
             const std::string& out_path) {
    const invwave::LinearMode mode = invwave::linear_mode(c, f0mu);
    invwave::KappaParams kp;
    kp.kappa = kappa;
    kp.kappa1 = kappa1;
    kp.kappa2 = kappa2;
    ojson out = invwave::linear_mode_to_json(mode);
    out["kappa"] = {{"kappa", kp.kappa}, {"kappa1", kp.kappa1}, {"kappa2", kp.kappa2}};
    const auto z0 = invwave::sign_change_exists(mode, kp, 0.0, 50.0);
    if (z0.has_value()) {
        out["sign_change"] = {{"found", true}, {"z0", *z0}};
    } else {
        out["sign_change"] = {{"found", false}};
    }
    emit(out.dump(2) + "\n", out_path);
    return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& out_path,
              std::optional<unsigned> jobs_override) {
    invwave::SweepConfig sweep = invwave::load_sweep_config(config_path);
    if (jobs_override.has_value()) {
        sweep.jobs = *jobs_override;
    }
    emit(invwave::run_sweep_csv(sweep), out_path);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"invwave: invasion waves in diffusive predator-prey systems"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string traj_path;
    std::string backend = "auto";
    std::optional<double> level;
    std::optional<double> c_flag;
    double f0mu = 0.0;
    double kappa = 0.0;
    double kappa1 = 0.5;
    double kappa2 = 0.0;
    std::size_t samples = 201;
    std::optional<unsigned> jobs;

    app.add_option("--backend", backend, "Kernel backend: auto|scalar|avx2")
        ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

    auto* check = app.add_subcommand("check-model", "Constants and assumption audit");
    check->add_option("--config", config_path, "Model or run config JSON")->required();
    check->add_option("--out", out_path, "Report path (default stdout)");
    check->add_option("--samples", samples, "Audit grid resolution per axis (>= 101)");

    auto* simulate = app.add_subcommand("simulate", "Integrate the system; write t,x,u,v CSV");
    simulate->add_option("--config", config_path, "Run config JSON")->required();
    simulate->add_option("--out", out_path, "Trajectory CSV path");

    auto* analyze = app.add_subcommand("analyze", "Speed fit and persistence checks");
    analyze->add_option("trajectory", traj_path, "Trajectory CSV from `simulate`")->required();
    analyze->add_option("--config", config_path, "Run config JSON")->required();
    analyze->add_option("--out", out_path, "Report path (default stdout)");
    analyze->add_option("--level", level, "Front crossing level override");

    auto* phase = app.add_subcommand("phase", "Integrate the limit phase plane");
    phase->add_option("--config", config_path, "Run config JSON with a 'phase' section")
        ->required();
    phase->add_option("--out", out_path, "CSV path (default stdout)");
    phase->add_option("--c", c_flag, "Wave speed override");

    auto* mode = app.add_subcommand("mode", "Linear-mode trichotomy report");
    auto* mode_c = mode->add_option("--c", c_flag, "Wave speed");
    mode_c->required();
    mode->add_option("--f0mu", f0mu, "F(0, mu)")->required();
    mode->add_option("--kappa", kappa, "Oscillatory/flat coefficient");
    mode->add_option("--kappa1", kappa1, "Node coefficient in [0,1]");
    mode->add_option("--kappa2", kappa2, "Degenerate coefficient (must be 0)");
    mode->add_option("--out", out_path, "Report path (default stdout)");

    auto* sweep = app.add_subcommand("sweep", "Deterministic parallel parameter sweep");
    sweep->add_option("--config", config_path, "Sweep config JSON")->required();
    sweep->add_option("--out", out_path, "CSV path (default stdout)");
    sweep->add_option("--jobs", jobs, "Worker count override");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (backend == "scalar") {
            invwave::kernels::set_backend(invwave::kernels::Backend::Scalar);
        } else if (backend == "avx2") {
            invwave::kernels::set_backend(invwave::kernels::Backend::Avx2);
        }
        if (check->parsed()) {
            return cmd_check_model(config_path, out_path, samples);
        }
        if (simulate->parsed()) {
            return cmd_simulate(config_path, out_path);
        }
        if (analyze->parsed()) {
            return cmd_analyze(traj_path, config_path, out_path, level);
        }
        if (phase->parsed()) {
            return cmd_phase(config_path, out_path, c_flag);
        }
        if (mode->parsed()) {
            return cmd_mode(c_flag.value(), f0mu, kappa, kappa1, kappa2, out_path);
        }
        if (sweep->parsed()) {
            return cmd_sweep(config_path, out_path, jobs);
        }
    } catch (const invwave::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const invwave::AssumptionError& e) {
        std::cerr << "assumption error: " << e.what() << "\n";
        return kExitAssumption;
    } catch (const invwave::AnalysisError& e) {
        std::cerr << "analysis error: " << e.what() << "\n";
        return kExitAnalysis;
    } catch (const invwave::NumericsError& e) {
        std::cerr << "numerics error: " << e.what() << "\n";
        return kExitNumerics;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
