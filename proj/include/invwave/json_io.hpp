#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "invwave/assumptions.hpp"
#include "invwave/front.hpp"
#include "invwave/model.hpp"
#include "invwave/phase.hpp"
#include "invwave/sim.hpp"

namespace invwave {

// Reports keep insertion order so serialized output is diff-stable.
using ojson = nlohmann::ordered_json;

// Shortest round-trip formatting (what the CSV writers use).
std::string format_double(double x);

std::uint64_t fnv1a64(std::string_view s);
std::string fnv1a64_hex(std::string_view s);

ojson constants_to_json(const ModelConstants& mc);
ojson assumption_report_to_json(const AssumptionReport& report);
ojson speed_to_json(const SpeedEstimate& est);
ojson persistence_to_json(const PersistenceReport& rep);
ojson linear_mode_to_json(const LinearMode& mode);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// Long-format trajectory CSV: header "t,x,u,v", one row per node per
// snapshot.
std::string trajectory_to_csv(const Trajectory& traj);
Trajectory trajectory_from_csv(const std::string& csv);

// Limit-plane trajectory CSV: "z,psi_inf,chi_inf,region" plus a trailing
// "# termination=..." comment.
std::string plane_trajectory_to_csv(const PlaneTrajectory& traj, double mu, double tol_eq);

}  // namespace invwave
