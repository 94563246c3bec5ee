#include "invwave/json_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "invwave/errors.hpp"

namespace invwave {

std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string fnv1a64_hex(std::string_view s) {
    static const char* digits = "0123456789abcdef";
    std::uint64_t h = fnv1a64(s);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

ojson constants_to_json(const ModelConstants& mc) {
    ojson j;
    j["mu"] = mc.mu;
    j["v0"] = mc.v0;
    j["c_star"] = mc.c_star;
    j["f0mu"] = mc.f0mu;
    if (mc.c0.has_value()) {
        j["c0"] = *mc.c0;
    } else {
        j["c0"] = nullptr;
    }
    j["classification"] = to_string(mc.classification);
    return j;
}

ojson assumption_report_to_json(const AssumptionReport& report) {
    ojson j;
    j["holds_a"] = report.holds_a;
    j["holds_b"] = report.holds_b;
    j["holds_c"] = report.holds_c;
    j["grid_resolution"] = report.grid_resolution;
    ojson ws = ojson::array();
    for (const auto& w : report.witnesses) {
        ojson wj;
        wj["item"] = std::string(1, w.item);
        wj["u"] = w.u;
        wj["v"] = w.v;
        wj["value"] = w.value;
        wj["what"] = w.what;
        ws.push_back(wj);
    }
    j["witnesses"] = ws;
    return j;
}

ojson speed_to_json(const SpeedEstimate& est) {
    ojson j;
    j["c_measured"] = est.c_measured;
    j["intercept"] = est.intercept;
    j["r_squared"] = est.r_squared;
    j["window"] = {est.t_lo, est.t_hi};
    j["n_points"] = est.n_points;
    j["trusted"] = est.trusted;
    return j;
}

ojson persistence_to_json(const PersistenceReport& rep) {
    ojson j;
    j["psi_trailing_min"] = rep.psi_trailing_min;
    j["psi_trailing_max"] = rep.psi_trailing_max;
    j["phi_trailing_min"] = rep.phi_trailing_min;
    j["phi_trailing_max"] = rep.phi_trailing_max;
    j["mu_check"] = rep.mu_check;
    j["phi_lower_check"] = rep.phi_lower_check;
    j["phi_upper_check"] = rep.phi_upper_check;
    j["psi_upper_check"] = rep.psi_upper_check;
    j["persistent"] = rep.all();
    j["window"] = {rep.window_lo, rep.window_hi};
    j["offset_behind_front"] = rep.offset_behind_front;
    j["width"] = rep.width;
    return j;
}

ojson linear_mode_to_json(const LinearMode& mode) {
    ojson j;
    j["c"] = mode.c;
    j["f0mu"] = mode.f0mu;
    j["c0"] = mode.c0;
    j["regime"] = to_string(mode.regime);
    j["eta_plus"] = {{"re", mode.eta_plus_re}, {"im", mode.eta_plus_im}};
    j["eta_minus"] = {{"re", mode.eta_minus_re}, {"im", mode.eta_minus_im}};
    return j;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot open '" + path + "' for writing");
    }
    out << content;
    if (!out) {
        throw ConfigError("write failed for '" + path + "'");
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string trajectory_to_csv(const Trajectory& traj) {
    std::string out = "t,x,u,v\n";
    const Grid1D& grid = traj.config.grid;
    for (const FieldState& snap : traj.snapshots) {
        const std::string t = format_double(snap.t);
        for (std::size_t i = 0; i < grid.nx; ++i) {
            out += t;
            out += ',';
            out += format_double(grid.x(i));
            out += ',';
            out += format_double(snap.u[i]);
            out += ',';
            out += format_double(snap.v[i]);
            out += '\n';
        }
    }
    return out;
}

namespace {

double parse_num(std::string_view tok, std::size_t line_no) {
    double x = 0.0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), x);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
        throw ConfigError("trajectory CSV: bad number '" + std::string(tok) + "' on line " +
                          std::to_string(line_no));
    }
    return x;
}

}  // namespace

Trajectory trajectory_from_csv(const std::string& csv) {
    Trajectory traj;
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line) || line != "t,x,u,v") {
        throw ConfigError("trajectory CSV: missing 't,x,u,v' header");
    }
    std::vector<double> xs;
    FieldState cur;
    bool have_cur = false;
    bool first_snapshot_done = false;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        std::string_view sv(line);
        std::array<std::string_view, 4> tok;
        std::size_t pos = 0;
        for (int k = 0; k < 4; ++k) {
            const std::size_t comma = k < 3 ? sv.find(',', pos) : sv.size();
            if (comma == std::string_view::npos) {
                throw ConfigError("trajectory CSV: expected 4 columns on line " +
                                  std::to_string(line_no));
            }
            tok[static_cast<std::size_t>(k)] = sv.substr(pos, comma - pos);
            pos = comma + 1;
        }
        const double t = parse_num(tok[0], line_no);
        const double x = parse_num(tok[1], line_no);
        const double u = parse_num(tok[2], line_no);
        const double v = parse_num(tok[3], line_no);
        if (!have_cur || t != cur.t) {
            if (have_cur) {
                traj.snapshots.push_back(cur);
                first_snapshot_done = true;
            }
            cur = FieldState{};
            cur.t = t;
            have_cur = true;
        }
        if (!first_snapshot_done) {
            xs.push_back(x);
        }
        cur.u.push_back(u);
        cur.v.push_back(v);
    }
    if (have_cur) {
        traj.snapshots.push_back(cur);
    }
    if (traj.snapshots.empty() || xs.size() < 3) {
        throw ConfigError("trajectory CSV: no snapshots");
    }
    traj.config.grid.x_min = xs.front();
    traj.config.grid.x_max = xs.back();
    traj.config.grid.nx = xs.size();
    traj.config.t_end = traj.snapshots.back().t;
    for (const FieldState& s : traj.snapshots) {
        if (s.u.size() != xs.size() || s.v.size() != xs.size()) {
            throw ConfigError("trajectory CSV: ragged snapshot at t = " + std::to_string(s.t));
        }
    }
    return traj;
}

std::string plane_trajectory_to_csv(const PlaneTrajectory& traj, double mu, double tol_eq) {
    std::string out = "z,psi_inf,chi_inf,region\n";
    for (const PlanePoint& p : traj.points) {
        out += format_double(p.z);
        out += ',';
        out += format_double(p.s.psi_inf);
        out += ',';
        out += format_double(p.s.chi_inf);
        out += ',';
        out += to_string(classify_region(p.s, mu, tol_eq));
        out += '\n';
    }
    out += "# termination=";
    out += traj.termination == Termination::Escaped ? "Escaped" : "Completed";
    if (traj.termination == Termination::Escaped) {
        out += " z=" + format_double(traj.escape_z);
    }
    out += '\n';
    return out;
}

}  // namespace invwave
