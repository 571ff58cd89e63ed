#pragma once

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "tfcl/fit.hpp"
#include "tfcl/hodograph.hpp"
#include "tfcl/nonlinear_solver.hpp"
#include "tfcl/schedule.hpp"
#include "tfcl/trajectory.hpp"

namespace tfcl {

using nlohmann::json;

/// Run parameters shared by the CLI commands. All defaults mirror the
/// solver/module defaults; validation happens before any run.
struct RunConfig {
    int N0 = 1;
    double s_min = -12.0;
    double s_max = 6.0;
    std::size_t grid_count = 1024;
    double dt = 1e-3;
    double t_end = 10.0;
    std::size_t snapshot_stride = 10;
    double theta = 1.0;
    double delta = 0.0; // 0 = default_delta(N0)
    double epsilon = 1e-3;
    std::uint64_t seed = 1;
    double x_fit = 0.1;
    std::string out_dir = ".";

    LogGrid grid() const { return LogGrid(s_min, s_max, grid_count); }
    double resolved_delta() const { return delta > 0.0 ? delta : default_delta(N0); }

    void validate() const {
        if (N0 < 1 || N0 > 6) throw std::invalid_argument("config: N0 must be in 1..6");
        if (!(dt > 0.0) || !(t_end > 0.0)) throw std::invalid_argument("config: dt, t_end must be positive");
        if (snapshot_stride < 1) throw std::invalid_argument("config: snapshot_stride >= 1");
        if (!(theta >= 0.5 && theta <= 1.0)) throw std::invalid_argument("config: theta in [1/2,1]");
        if (delta != 0.0 && !delta_is_valid(N0, delta))
            throw std::invalid_argument("config: delta violates the separation rule");
        if (!(x_fit > 0.0)) throw std::invalid_argument("config: x_fit must be positive");
        (void)grid();
    }

    json to_json() const {
        return json{{"N0", N0},       {"s_min", s_min},   {"s_max", s_max},
                    {"grid_count", grid_count}, {"dt", dt}, {"t_end", t_end},
                    {"snapshot_stride", snapshot_stride},  {"theta", theta},
                    {"delta", delta}, {"epsilon", epsilon}, {"seed", seed},
                    {"x_fit", x_fit}, {"out_dir", out_dir}};
    }

    static RunConfig from_json(const json& j) {
        RunConfig c;
        static const char* known[] = {"N0", "s_min", "s_max", "grid_count", "dt", "t_end",
                                      "snapshot_stride", "theta", "delta", "epsilon",
                                      "seed", "x_fit", "out_dir"};
        for (auto it = j.begin(); it != j.end(); ++it) {
            bool ok = false;
            for (const char* k : known) ok = ok || (it.key() == k);
            if (!ok) throw std::invalid_argument("config: unknown key '" + it.key() + "'");
        }
        c.N0 = j.value("N0", c.N0);
        c.s_min = j.value("s_min", c.s_min);
        c.s_max = j.value("s_max", c.s_max);
        c.grid_count = j.value("grid_count", c.grid_count);
        c.dt = j.value("dt", c.dt);
        c.t_end = j.value("t_end", c.t_end);
        c.snapshot_stride = j.value("snapshot_stride", c.snapshot_stride);
        c.theta = j.value("theta", c.theta);
        c.delta = j.value("delta", c.delta);
        c.epsilon = j.value("epsilon", c.epsilon);
        c.seed = j.value("seed", c.seed);
        c.x_fit = j.value("x_fit", c.x_fit);
        c.out_dir = j.value("out_dir", c.out_dir);
        c.validate();
        return c;
    }

    static RunConfig load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("config: cannot open " + path);
        json j;
        in >> j;
        return from_json(j);
    }

    /// FNV-1a of the canonical dump; embedded in every report.
    std::string hash() const {
        const std::string s = to_json().dump();
        std::uint64_t h = 1469598103934665603ull;
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
        std::ostringstream os;
        os << std::hex << std::setw(16) << std::setfill('0') << h;
        return os.str();
    }
};

inline void write_csv_gridfunction(std::ostream& os, const GridFunction& u) {
    os << "s,x,value\n" << std::setprecision(17);
    for (std::size_t j = 0; j < u.size(); ++j)
        os << u.grid.s(j) << "," << u.grid.x(j) << "," << u.values[j] << "\n";
}

/// Long-format trajectory CSV: t,s,x,value.
inline void write_csv_trajectory(std::ostream& os, const Trajectory& traj) {
    os << "t,s,x,value\n" << std::setprecision(17);
    for (std::size_t k = 0; k < traj.size(); ++k)
        for (std::size_t j = 0; j < traj.grid().count; ++j)
            os << traj.times[k] << "," << traj.grid().s(j) << "," << traj.grid().x(j) << ","
               << traj.snapshots[k].values[j] << "\n";
}

inline void write_csv_profile(std::ostream& os, const PhysicalProfile& p) {
    os << "z,h\n" << std::setprecision(17);
    for (std::size_t j = 0; j < p.z.size(); ++j) os << p.z[j] << "," << p.h[j] << "\n";
}

inline PhysicalProfile read_csv_profile(const std::string& path, double Z0) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("profile: cannot open " + path);
    PhysicalProfile p;
    p.Z0 = Z0;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("profile: empty file");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string a, b;
        if (!std::getline(ls, a, ',') || !std::getline(ls, b, ','))
            throw std::runtime_error("profile: bad row '" + line + "'");
        p.z.push_back(std::stod(a));
        p.h.push_back(std::stod(b));
    }
    p.validate();
    return p;
}

inline json expansion_fit_to_json(const ExpansionFit& fit) {
    json coeffs = json::array();
    for (std::size_t i = 0; i < fit.exponents.size(); ++i)
        coeffs.push_back(json{{"n1", fit.exponents[i].n1},
                              {"n2", fit.exponents[i].n2},
                              {"exponent", fit.exponents[i].value()},
                              {"coefficient", fit.coefficients[i]},
                              {"confidence", fit.confidence[i]}});
    return json{{"N0", fit.N0},
                {"x_fit", fit.x_fit},
                {"coefficients", coeffs},
                {"remainder_norm", fit.remainder_norm},
                {"condition_number", fit.condition_number},
                {"flagged", fit.flagged},
                {"warnings", fit.warnings}};
}

inline json series_to_json(const PowerSeries& s) {
    json arr = json::array();
    for (const auto& t : s.terms())
        arr.push_back(json{{"n1", t.e.n1}, {"n2", t.e.n2}, {"exponent", t.e.value()},
                           {"coefficient", t.c}});
    return arr;
}

inline json transported_to_json(const TransportedExpansion& te) {
    return json{{"N0", te.N0},
                {"u0", te.u0},
                {"A", te.A},
                {"u", series_to_json(te.u_series)},
                {"Zx", series_to_json(te.Zx_series)},
                {"c", series_to_json(te.c_series)},
                {"h_tilde", series_to_json(te.h_series)},
                {"V", series_to_json(te.V_series)},
                {"V_tilde", series_to_json(te.V_tilde)}};
}

inline json condition_report_to_json(const ConditionReport& rep) {
    json checks = json::array();
    for (const auto& c : rep.checks)
        checks.push_back(json{{"id", c.id},
                              {"description", c.description},
                              {"mandatory", c.mandatory},
                              {"pass", c.pass},
                              {"checked", c.checked},
                              {"worst_margin", c.worst_margin},
                              {"worst_witness", c.worst_witness}});
    return json{{"N0", rep.N0},
                {"checks", checks},
                {"all_mandatory_pass", rep.all_mandatory_pass},
                {"compatible_with_nonlinear", rep.compatible_with_nonlinear},
                {"note", rep.note}};
}

inline json decay_report_to_json(const DecayReport& rep) {
    json rows = json::array();
    for (const auto& c : rep.coefficients)
        rows.push_back(json{{"n1", c.exponent.n1}, {"n2", c.exponent.n2},
                            {"exponent", c.exponent.value()}, {"slope", c.slope},
                            {"target", c.target}, {"determinate", c.determinate}});
    return json{{"t0", rep.t0},
                {"t1", rep.t1},
                {"coefficients", rows},
                {"remainder_slope", rep.remainder_slope},
                {"remainder_target", rep.remainder_target},
                {"remainder_determinate", rep.remainder_determinate}};
}

/// Diagnostic record {name, lhs, rhs, ratio, resolution}.
inline json diagnostic_record(const std::string& name, double lhs, double rhs, double ratio,
                              const json& resolution) {
    return json{{"name", name}, {"lhs", lhs}, {"rhs", rhs}, {"ratio", ratio},
                {"resolution", resolution}};
}

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    os << j.dump(2) << "\n";
}

} // namespace tfcl
