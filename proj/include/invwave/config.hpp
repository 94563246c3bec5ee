#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "invwave/front.hpp"
#include "invwave/json_io.hpp"
#include "invwave/model.hpp"
#include "invwave/phase.hpp"
#include "invwave/sim.hpp"

namespace invwave {

struct ModelSpec {
    std::string name;
    std::map<std::string, double> params;
};

struct AnalysisConfig {
    std::string species = "predator";
    std::optional<double> front_level;  // default: mu/2 (predator), 1/2 (prey)
    double fit_t_lo = 40.0;
    double fit_t_hi = 90.0;
    double window_offset = 50.0;
    double window_width = 100.0;
    PersistenceTolerances tolerances;
};

struct PhaseSection {
    PlaneState ic{1.1, 0.05};
    double c = 2.0;
    double z_begin = 0.0;
    double z_end = 50.0;
    double dz = 1e-3;
};

struct RunConfig {
    ModelSpec model;
    SimConfig sim;
    AnalysisConfig analysis;
    std::optional<PhaseSection> phase;
};

RunConfig parse_run_config(const ojson& j);
RunConfig load_run_config(const std::string& path);

// Canonical serialization of the parts that determine a trajectory; hashed
// into artifact sidecars so analyze can refuse mismatched inputs.
ojson canonical_model_sim_json(const RunConfig& config);
std::string config_hash(const RunConfig& config);

KineticModel model_from_spec(const ModelSpec& spec);

struct SweepAxis {
    std::string path;  // dotted, e.g. "model.params.a"
    std::vector<double> values;
};

struct SweepConfig {
    ojson base;  // a RunConfig object; axis values are patched into a copy
    std::vector<SweepAxis> axes;
    unsigned jobs = 1;
    bool simulate = true;
    std::size_t row_cap = 10000;
};

SweepConfig parse_sweep_config(const ojson& j);
SweepConfig load_sweep_config(const std::string& path);

// Patch `value` into `j` at the dotted path; every intermediate object must
// already exist.
void apply_path(ojson& j, const std::string& path, double value);

}  // namespace invwave
