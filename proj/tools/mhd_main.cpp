// Batch CLI for the MHD solver: `run` advances one configuration and reports
// a summary (plus optional on-disk artifacts), `converge` runs a refinement
// ladder and emits an error/order table as CSV.
#include "CLI11.hpp"

#include "pifweno/driver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace pifweno;

namespace {

bool parse_onoff(const std::string& s, const char* flag) {
    if (s == "on") return true;
    if (s == "off") return false;
    throw CLI::ValidationError(flag, "expected on or off");
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

// Flat key = value file, one entry per line, # starts a comment.  Keys use
// the same spelling as the long flags.
std::map<std::string, std::string> load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected key = value");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

// Turn config entries into trailing --key=value arguments for flags that are
// absent from the command line, so explicit flags always win and unknown
// keys are rejected by the normal argument parsing.
void inject_config(std::vector<std::string>& args) {
    std::string path;
    for (size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty()) return;
    for (const auto& [key, value] : load_config_file(path)) {
        const std::string flag = "--" + key;
        const bool present =
            std::any_of(args.begin(), args.end(), [&](const std::string& a) {
                return a == flag || a.rfind(flag + "=", 0) == 0;
            });
        if (!present) args.push_back(flag + "=" + value);
    }
}

struct CliValues {
    std::string problem, ct = "on", pp, out, config;
    std::vector<int> mesh;
    double cfl = 0.5, tfinal = -1.0, nu = 0.01, gamma = -1.0, schlieren_k = 10.0;
    int snapshots = 0, threads = 1;
};

// Shared flag set for both subcommands.  The config file is a flat
// key = value text file using the same keys as the long flags; values given
// on the command line override it.
void add_common_flags(CLI::App* cmd, CliValues& v) {
    cmd->add_option("--problem", v.problem, "problem id from the catalog")->required();
    cmd->add_option("--mesh", v.mesh, "cells per axis, NX[,NY[,NZ]]")->delimiter(',');
    cmd->add_option("--cfl", v.cfl, "CFL number in (0,1]");
    cmd->add_option("--tfinal", v.tfinal, "final time (default: catalog)");
    cmd->add_option("--ct", v.ct, "constrained transport on|off")
        ->check(CLI::IsMember({"on", "off"}));
    cmd->add_option("--pp", v.pp, "positivity limiter on|off (default: catalog)")
        ->check(CLI::IsMember({"on", "off"}));
    cmd->add_option("--nu", v.nu, "artificial resistivity (3D potential update)");
    cmd->add_option("--gamma", v.gamma, "adiabatic index (default: catalog)");
    cmd->add_option("--out", v.out, "output directory for artifacts");
    cmd->add_option("--snapshots", v.snapshots, "equispaced snapshot count");
    cmd->add_option("--threads", v.threads, "worker threads per sweep");
    cmd->add_option("--schlieren-k", v.schlieren_k, "schlieren contrast exponent");
    cmd->add_option("--config", v.config, "flat key = value file; flags override it");
}

RunConfig make_run_config(const CliValues& v) {
    RunConfig cfg;
    cfg.problem = v.problem;
    cfg.mesh = v.mesh;
    cfg.cfl = v.cfl;
    cfg.tfinal = v.tfinal;
    cfg.ct = parse_onoff(v.ct, "--ct");
    if (!v.pp.empty()) cfg.pp = parse_onoff(v.pp, "--pp") ? 1 : 0;
    cfg.nu = v.nu;
    cfg.gamma = v.gamma;
    cfg.outdir = v.out;
    cfg.snapshots = v.snapshots;
    cfg.threads = v.threads;
    cfg.schlieren_k = v.schlieren_k;
    return cfg;
}

void print_summary(const RunSummary& s, const GridSpec& g) {
    std::printf("problem: %s\n", s.problem.c_str());
    std::string mesh = std::to_string(g.m[0]);
    for (int d = 1; d < g.ndim; ++d) mesh += "x" + std::to_string(g.m[d]);
    std::printf("mesh: %s\n", mesh.c_str());
    std::printf("t_end: %.17g\n", s.t_end);
    std::printf("steps: %lld\n", s.steps);
    std::printf("min_rho: %.17g\n", s.min_rho);
    std::printf("min_p: %.17g\n", s.min_p);
    std::printf("run_min_rho: %.17g\n", s.run_min_rho);
    std::printf("run_min_p: %.17g\n", s.run_min_p);
    std::printf("max_divB: %.17g\n", s.max_divb);
    std::printf("max_bnorm: %.17g\n", s.max_bnorm);
    std::printf("energy_error: %.17g\n", s.energy_error);
    if (s.error_B >= 0.0) {
        std::printf("error_B: %.17g\n", s.error_B);
        std::printf("error_A: %.17g\n", s.error_A);
    }
}

int do_run(const CliValues& v) {
    const RunConfig cfg = make_run_config(v);
    const GridSpec g = problem_grid(find_problem(cfg.problem), cfg.mesh, 6);
    const RunSummary s = run(cfg);
    print_summary(s, g);
    return 0;
}

int do_converge(const CliValues& v, int levels, const std::string& refine,
                const std::string& csv_path) {
    RunConfig cfg = make_run_config(v);
    const ProblemSpec& spec = find_problem(cfg.problem);
    if (!spec.has_exact)
        throw CLI::ValidationError("--problem", spec.id + " has no reference solution");
    if (levels < 2) throw CLI::ValidationError("--levels", "need at least 2");

    std::vector<int> mesh = cfg.mesh;
    if (mesh.empty())
        mesh.assign(spec.default_mesh.begin(), spec.default_mesh.begin() + spec.ndim);

    std::ostringstream csv;
    csv << "mesh,cfl,error_B,order_B,error_A,order_A\n";
    std::vector<double> eb, ea;
    for (int l = 0; l < levels; ++l) {
        cfg.mesh = mesh;
        const RunSummary s = run(cfg);
        eb.push_back(s.error_B);
        ea.push_back(s.error_A);
        std::string mtag = std::to_string(mesh[0]);
        for (int d = 1; d < spec.ndim; ++d) mtag += "x" + std::to_string(mesh[d]);
        char row[160];
        if (l == 0)
            std::snprintf(row, sizeof(row), "%s,%.17g,%.6e,,%.6e,\n", mtag.c_str(), cfg.cfl,
                          s.error_B, s.error_A);
        else
            std::snprintf(row, sizeof(row), "%s,%.17g,%.6e,%.3f,%.6e,%.3f\n", mtag.c_str(),
                          cfg.cfl, s.error_B, std::log2(eb[l - 1] / eb[l]), s.error_A,
                          std::log2(ea[l - 1] / ea[l]));
        csv << row;
        std::fprintf(stderr, "level %d done: %s cfl=%g error_B=%.3e\n", l, mtag.c_str(),
                     cfg.cfl, s.error_B);
        if (refine != "cfl")
            for (int& m : mesh) m *= 2;
        if (refine != "space") cfg.cfl *= 0.5;
    }
    if (csv_path.empty() || csv_path == "-") {
        std::cout << csv.str();
    } else {
        std::ofstream out(csv_path);
        if (!out) throw CLI::ValidationError("--csv", "cannot open " + csv_path);
        out << csv.str();
        std::fprintf(stderr, "wrote %s\n", csv_path.c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-difference ideal MHD batch solver"};
    app.require_subcommand(1);

    CliValues vr, vc;
    CLI::App* cmd_run = app.add_subcommand("run", "advance one configuration and report");
    add_common_flags(cmd_run, vr);

    CLI::App* cmd_conv =
        app.add_subcommand("converge", "refinement ladder with an error/order table");
    add_common_flags(cmd_conv, vc);
    int levels = 4;
    std::string refine = "space", csv_path;
    cmd_conv->add_option("--levels", levels, "number of refinement levels");
    cmd_conv
        ->add_option("--refine", refine,
                     "space: double the mesh; cfl: halve the CFL; both: do both per level")
        ->check(CLI::IsMember({"space", "cfl", "both"}));
    cmd_conv->add_option("--csv", csv_path, "CSV destination (default stdout)");

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        inject_config(args);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (cmd_run->parsed()) return do_run(vr);
        return do_converge(vc, levels, refine, csv_path);
    } catch (const PositivityError& e) {
        std::fprintf(stderr, "aborted: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
