#include "invwave/config.hpp"

#include <cmath>

#include "invwave/errors.hpp"

namespace invwave {

namespace {

const ojson& require_key(const ojson& j, const std::string& key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) {
        throw ConfigError("missing key '" + key + "' in " + where);
    }
    return *it;
}

double as_number(const ojson& j, const std::string& what) {
    if (!j.is_number()) {
        throw ConfigError("'" + what + "' must be a number");
    }
    return j.get<double>();
}

double num_or(const ojson& j, const std::string& key, double fallback) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) {
        return fallback;
    }
    return as_number(*it, key);
}

}  // namespace

RunConfig parse_run_config(const ojson& j) {
    if (!j.is_object()) {
        throw ConfigError("run config must be a JSON object");
    }
    RunConfig rc;

    const ojson& jm = require_key(j, "model", "run config");
    rc.model.name = require_key(jm, "name", "model").get<std::string>();
    const ojson& jparams = require_key(jm, "params", "model");
    if (!jparams.is_object()) {
        throw ConfigError("model.params must be an object");
    }
    for (auto it = jparams.begin(); it != jparams.end(); ++it) {
        rc.model.params[it.key()] = as_number(it.value(), "model.params." + it.key());
    }

    if (auto sim_it = j.find("sim"); sim_it != j.end()) {
        const ojson& js = *sim_it;
        if (auto grid_it = js.find("grid"); grid_it != js.end()) {
            const ojson& jg = *grid_it;
            rc.sim.grid.x_min = num_or(jg, "x_min", rc.sim.grid.x_min);
            rc.sim.grid.x_max = num_or(jg, "x_max", rc.sim.grid.x_max);
            const double nx = num_or(jg, "nx", static_cast<double>(rc.sim.grid.nx));
            if (!(nx >= 3.0) || nx != std::floor(nx)) {
                throw ConfigError("sim.grid.nx must be an integer >= 3");
            }
            rc.sim.grid.nx = static_cast<std::size_t>(nx);
        }
        rc.sim.t_end = num_or(js, "t_end", rc.sim.t_end);
        rc.sim.cfl = num_or(js, "cfl", rc.sim.cfl);
        rc.sim.snapshot_every = num_or(js, "snapshot_every", rc.sim.snapshot_every);
        if (auto init_it = js.find("initial"); init_it != js.end()) {
            const ojson& ji = *init_it;
            const std::string kind = ji.contains("kind") ? ji["kind"].get<std::string>()
                                                         : "prey_carrying_with_bump";
            if (kind == "prey_carrying_with_bump") {
                rc.sim.initial.kind = InitialKind::PreyCarryingWithBump;
            } else if (kind == "scalar_bump") {
                rc.sim.initial.kind = InitialKind::ScalarBump;
            } else if (kind == "custom") {
                rc.sim.initial.kind = InitialKind::Custom;
            } else {
                throw ConfigError("unknown initial.kind '" + kind + "'");
            }
            rc.sim.initial.bump_center = num_or(ji, "bump_center", rc.sim.initial.bump_center);
            rc.sim.initial.bump_half_width =
                num_or(ji, "bump_half_width", rc.sim.initial.bump_half_width);
            rc.sim.initial.bump_height = num_or(ji, "bump_height", rc.sim.initial.bump_height);
            if (rc.sim.initial.kind == InitialKind::Custom) {
                for (const char* key : {"custom_u", "custom_v"}) {
                    if (!ji.contains(key) || !ji[key].is_array()) {
                        throw ConfigError(std::string("custom initial data needs array '") + key +
                                          "'");
                    }
                }
                rc.sim.initial.custom_u = ji["custom_u"].get<std::vector<double>>();
                rc.sim.initial.custom_v = ji["custom_v"].get<std::vector<double>>();
            }
        }
    }

    if (auto an_it = j.find("analysis"); an_it != j.end()) {
        const ojson& ja = *an_it;
        if (ja.contains("species")) {
            rc.analysis.species = ja["species"].get<std::string>();
            if (rc.analysis.species != "predator" && rc.analysis.species != "prey") {
                throw ConfigError("analysis.species must be 'predator' or 'prey'");
            }
        }
        if (ja.contains("front_level") && !ja["front_level"].is_null()) {
            rc.analysis.front_level = as_number(ja["front_level"], "analysis.front_level");
        }
        rc.analysis.fit_t_lo = num_or(ja, "fit_t_lo", rc.analysis.fit_t_lo);
        rc.analysis.fit_t_hi = num_or(ja, "fit_t_hi", rc.analysis.fit_t_hi);
        rc.analysis.window_offset = num_or(ja, "window_offset", rc.analysis.window_offset);
        rc.analysis.window_width = num_or(ja, "window_width", rc.analysis.window_width);
        rc.analysis.tolerances.tol_mu_rel =
            num_or(ja, "tol_mu_rel", rc.analysis.tolerances.tol_mu_rel);
        rc.analysis.tolerances.delta_floor =
            num_or(ja, "delta_floor", rc.analysis.tolerances.delta_floor);
        rc.analysis.tolerances.tol_edge = num_or(ja, "tol_edge", rc.analysis.tolerances.tol_edge);
        if (!(rc.analysis.tolerances.tol_mu_rel > 0.0) ||
            !(rc.analysis.tolerances.delta_floor > 0.0) ||
            !(rc.analysis.tolerances.tol_edge > 0.0)) {
            throw ConfigError("analysis tolerances must be > 0");
        }
    }

    if (auto ph_it = j.find("phase"); ph_it != j.end()) {
        const ojson& jp = *ph_it;
        PhaseSection ps;
        if (jp.contains("ic")) {
            const ojson& ic = jp["ic"];
            if (!ic.is_array() || ic.size() != 2) {
                throw ConfigError("phase.ic must be [psi_inf, chi_inf]");
            }
            ps.ic.psi_inf = as_number(ic[0], "phase.ic[0]");
            ps.ic.chi_inf = as_number(ic[1], "phase.ic[1]");
        }
        ps.c = num_or(jp, "c", ps.c);
        ps.z_begin = num_or(jp, "z_begin", ps.z_begin);
        ps.z_end = num_or(jp, "z_end", ps.z_end);
        ps.dz = num_or(jp, "dz", ps.dz);
        rc.phase = ps;
    }

    validate(rc.sim);
    return rc;
}

RunConfig load_run_config(const std::string& path) {
    ojson j;
    try {
        j = ojson::parse(read_text_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("cannot parse '" + path + "': " + e.what());
    }
    return parse_run_config(j);
}

ojson canonical_model_sim_json(const RunConfig& config) {
    ojson j;
    j["model"]["name"] = config.model.name;
    ojson params = ojson::object();
    for (const auto& [key, value] : config.model.params) {
        params[key] = value;
    }
    j["model"]["params"] = params;
    j["sim"]["grid"] = {{"x_min", config.sim.grid.x_min},
                        {"x_max", config.sim.grid.x_max},
                        {"nx", config.sim.grid.nx}};
    j["sim"]["t_end"] = config.sim.t_end;
    j["sim"]["cfl"] = config.sim.cfl;
    j["sim"]["snapshot_every"] = config.sim.snapshot_every;
    const InitialData& init = config.sim.initial;
    std::string kind;
    switch (init.kind) {
        case InitialKind::PreyCarryingWithBump: kind = "prey_carrying_with_bump"; break;
        case InitialKind::ScalarBump: kind = "scalar_bump"; break;
        case InitialKind::Custom: kind = "custom"; break;
    }
    j["sim"]["initial"] = {{"kind", kind},
                           {"bump_center", init.bump_center},
                           {"bump_half_width", init.bump_half_width},
                           {"bump_height", init.bump_height}};
    if (init.kind == InitialKind::Custom) {
        j["sim"]["initial"]["custom_u"] = init.custom_u;
        j["sim"]["initial"]["custom_v"] = init.custom_v;
    }
    return j;
}

std::string config_hash(const RunConfig& config) {
    return fnv1a64_hex(canonical_model_sim_json(config).dump());
}

KineticModel model_from_spec(const ModelSpec& spec) {
    return make_builtin(spec.name, spec.params);
}

SweepConfig parse_sweep_config(const ojson& j) {
    if (!j.is_object()) {
        throw ConfigError("sweep config must be a JSON object");
    }
    SweepConfig sc;
    sc.base = require_key(j, "base", "sweep config");
    // Validates the base config (and the axes' paths below resolve into it).
    (void)parse_run_config(sc.base);
    const ojson& axes = require_key(j, "axes", "sweep config");
    if (!axes.is_array() || axes.empty()) {
        throw ConfigError("sweep.axes must be a non-empty array");
    }
    for (const ojson& ja : axes) {
        SweepAxis axis;
        axis.path = require_key(ja, "path", "sweep axis").get<std::string>();
        const ojson& values = require_key(ja, "values", "sweep axis");
        if (!values.is_array() || values.empty()) {
            throw ConfigError("sweep axis '" + axis.path + "' needs a non-empty values array");
        }
        for (const ojson& v : values) {
            axis.values.push_back(as_number(v, axis.path));
        }
        // Fail fast if the path does not resolve.
        ojson probe = sc.base;
        apply_path(probe, axis.path, axis.values.front());
        sc.axes.push_back(std::move(axis));
    }
    const double jobs = num_or(j, "jobs", 1.0);
    if (!(jobs >= 1.0) || jobs != std::floor(jobs)) {
        throw ConfigError("sweep.jobs must be an integer >= 1");
    }
    sc.jobs = static_cast<unsigned>(jobs);
    if (j.contains("simulate")) {
        if (!j["simulate"].is_boolean()) {
            throw ConfigError("sweep.simulate must be a boolean");
        }
        sc.simulate = j["simulate"].get<bool>();
    }
    const double cap = num_or(j, "row_cap", static_cast<double>(sc.row_cap));
    if (!(cap >= 1.0)) {
        throw ConfigError("sweep.row_cap must be >= 1");
    }
    sc.row_cap = static_cast<std::size_t>(cap);

    std::size_t total = 1;
    for (const auto& axis : sc.axes) {
        total *= axis.values.size();
        if (total > sc.row_cap) {
            throw ConfigError("sweep grid exceeds row cap of " + std::to_string(sc.row_cap));
        }
    }
    return sc;
}

SweepConfig load_sweep_config(const std::string& path) {
    ojson j;
    try {
        j = ojson::parse(read_text_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("cannot parse '" + path + "': " + e.what());
    }
    return parse_sweep_config(j);
}

void apply_path(ojson& j, const std::string& path, double value) {
    ojson* cur = &j;
    std::size_t pos = 0;
    while (true) {
        const std::size_t dot = path.find('.', pos);
        const std::string key = path.substr(pos, dot == std::string::npos ? dot : dot - pos);
        if (key.empty()) {
            throw ConfigError("bad parameter path '" + path + "'");
        }
        if (dot == std::string::npos) {
            (*cur)[key] = value;
            return;
        }
        if (!cur->contains(key) || !(*cur)[key].is_object()) {
            throw ConfigError("parameter path '" + path + "' does not resolve at '" + key + "'");
        }
        cur = &(*cur)[key];
        pos = dot + 1;
    }
}

}  // namespace invwave
