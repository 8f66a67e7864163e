// Acceptance suite: runs the full problem catalog at desk scale and prints
// one pass/fail line per criterion.  Every tolerance and reference value is
// pinned here; the binary exits nonzero if any line fails.
//
// Expected wall time is roughly an hour on one core; progress goes to stderr.
#include "pifweno/diagnostics.hpp"
#include "pifweno/driver.hpp"
#include "pifweno/physics.hpp"

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <set>
#include <string>
#include <vector>

using namespace pifweno;

namespace {

std::string fmt(const char* f, ...) {
    char buf[768];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return buf;
}

void progress(const std::string& msg) {
    std::fprintf(stderr, "... %s\n", msg.c_str());
}

// Divergence ledger: every run with the potential correction active deposits
// its worst post-step |div B| against its field scale (criterion 4).
struct DivRecord {
    std::string problem;
    std::string label;
    double ratio;
};
std::vector<DivRecord> div_records;

void record_div(const std::string& problem, const std::string& label, double max_div,
                double max_bn) {
    div_records.push_back({problem, label, max_div / std::fmax(max_bn, 1e-300)});
}

// Full run via the driver; enough wherever the summary fields suffice.
RunSummary summary_run(const RunConfig& cfg, const std::string& label) {
    progress(label);
    RunSummary s = run(cfg);
    if (cfg.ct) record_div(cfg.problem, label, s.max_divb, s.max_bnorm);
    return s;
}

// Manual run for the criteria that need more than the summary: abort capture,
// a running density maximum, and optionally the final state.
struct ProbedRun {
    bool completed = false;
    long long steps = 0;
    double t_end = 0.0;
    long long abort_step = 0;
    double abort_time = 0.0;
    std::string abort_what;
    double run_min_rho = std::numeric_limits<double>::infinity();
    double run_min_p = std::numeric_limits<double>::infinity();
    double init_max_rho = 0.0;
    double max_rho = 0.0;
    double max_div = 0.0;
    double max_bn = 0.0;
    double energy_err = 0.0;
};

ProbedRun probed_run(const RunConfig& cfg, const std::string& label,
                     Field* final_q = nullptr) {
    progress(label);
    ProbedRun r;
    Simulation sim(cfg);
    const Field q0 = sim.state();
    r.max_bn = max_bnorm(q0);
    r.init_max_rho = max_interior_abs(q0, {irho});
    r.max_rho = r.init_max_rho;
    try {
        while (!sim.finished()) {
            sim.step();
            r.max_div = std::fmax(r.max_div, sim.max_divb());
            r.max_bn = std::fmax(r.max_bn, max_bnorm(sim.state()));
            r.run_min_rho = std::fmin(r.run_min_rho, min_density(sim.state()));
            r.run_min_p = std::fmin(r.run_min_p, min_pressure(sim.state(), sim.gamma()));
            r.max_rho = std::fmax(r.max_rho, max_interior_abs(sim.state(), {irho}));
            r.energy_err = energy_conservation_error(sim.state(), q0);
        }
        r.completed = true;
        r.t_end = sim.time();
        r.steps = sim.steps();
        if (cfg.ct) record_div(cfg.problem, label, r.max_div, r.max_bn);
        if (final_q) *final_q = sim.state();
    } catch (const PositivityError& e) {
        r.abort_step = e.step;
        r.abort_time = e.time;
        r.abort_what = e.what();
    }
    return r;
}

RunConfig base(const std::string& problem) {
    RunConfig c;
    c.problem = problem;
    return c;
}

struct Ladder {
    std::vector<double> err_b;
    std::vector<double> energy;
    std::vector<double> order() const {
        std::vector<double> o;
        for (size_t l = 1; l < err_b.size(); ++l)
            o.push_back(std::log2(err_b[l - 1] / err_b[l]));
        return o;
    }
};

// Three-level 2D travelling-wave refinement, optionally halving the CFL with
// each mesh doubling.
Ladder wave_ladder(double tfinal, bool halve_cfl, const char* tag) {
    Ladder lad;
    RunConfig c = base("alfven2d");
    c.tfinal = tfinal;
    c.mesh = {32, 64};
    for (int l = 0; l < 3; ++l) {
        RunSummary s = summary_run(
            c, fmt("%s level %d (%dx%d, cfl %g)", tag, l, c.mesh[0], c.mesh[1], c.cfl));
        lad.err_b.push_back(s.error_B);
        lad.energy.push_back(s.energy_error);
        for (int& m : c.mesh) m *= 2;
        if (halve_cfl) c.cfl *= 0.5;
    }
    return lad;
}

std::string join(const std::vector<double>& v, const char* f) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + fmt(f, v[i]);
    return out;
}

bool within_factor(double value, double ref, double factor) {
    return value <= factor * ref && value >= ref / factor;
}

}  // namespace

int main(int, char** argv) {
    // ---- phase 1: runs -----------------------------------------------------

    // Travelling-wave ladders: fixed CFL to t = 1 (temporal accuracy, third
    // order) and CFL halved per doubling at t = 0.01 (spatial order, fourth).
    const Ladder c1 = wave_ladder(1.0, false, "c1 wave");
    const Ladder c2 = wave_ladder(0.01, true, "c2 wave");

    // 3D wave at the two desk-scale meshes.
    RunConfig c3cfg = base("alfven3d");
    c3cfg.pp = 0;
    const RunSummary w3_t1 = summary_run(c3cfg, "c3 3d wave t=1 coarse");
    c3cfg.tfinal = 0.01;
    const RunSummary w3_coarse = summary_run(c3cfg, "c3 3d wave t=0.01 coarse");
    c3cfg.mesh = {32, 64, 64};
    c3cfg.cfl = 0.25;
    const RunSummary w3_fine = summary_run(c3cfg, "c3 3d wave t=0.01 fine");

    // Vortex contrast pair: without the potential correction the field
    // divergence grows until positivity is lost; with it the run completes.
    RunConfig cv = base("orszagtang");
    cv.ct = false;
    cv.tfinal = 2.5;
    const ProbedRun ot_off = probed_run(cv, "c7 vortex 192^2 ct off (expect abort)");
    cv = base("orszagtang");
    cv.mesh = {96, 96};
    const ProbedRun ot_on = probed_run(cv, "c7 vortex 96^2 ct on");

    // Rotated shock tube, both correction settings; deviation of the
    // interface-normal field component from its constant exact value 0.75,
    // along the interior row nearest y = 0.
    double shock_dev[2] = {0.0, 0.0};
    bool shock_done[2] = {false, false};
    for (int pass = 0; pass < 2; ++pass) {
        RunConfig c = base("shocktube2d");
        c.ct = pass == 0;
        Field qf;
        const ProbedRun r =
            probed_run(c, fmt("c8 shock tube ct %s", c.ct ? "on" : "off"), &qf);
        if (!r.completed) continue;
        shock_done[pass] = true;
        const double ang = std::atan(0.5);
        const int j = qf.g.ghost + qf.g.m[1] / 2;
        for (int i = qf.g.ghost; i < qf.g.ghost + qf.g.m[0]; ++i) {
            const double bn = qf.at(i, j, 0, iBx) * std::cos(ang) +
                              qf.at(i, j, 0, iBy) * std::sin(ang);
            shock_dev[pass] = std::fmax(shock_dev[pass], std::fabs(bn - 0.75));
        }
    }

    // Limiter production runs.
    RunConfig cb = base("blast2d");
    const ProbedRun blast128 = probed_run(cb, "c5 blast 128^2 limiter on");
    cb.mesh = {256, 256};
    const ProbedRun blast256 = probed_run(cb, "c5 blast 256^2 limiter on");
    cb = base("blast2d");
    cb.pp = 0;
    const ProbedRun blast_nopp = probed_run(cb, "c6 blast 128^2 limiter off (expect abort)");
    const ProbedRun rotor = probed_run(base("rotor"), "c5 rotor 200^2 limiter on");
    const ProbedRun blast3d = probed_run(base("blast3d"), "c6 blast 75^3 limiter on");
    cv = base("orszagtang");
    cv.mesh = {96, 96};
    cv.tfinal = 30.0;
    cv.pp = 1;
    const ProbedRun vortex_long = probed_run(cv, "c5 vortex 96^2 limiter on t=30");

    // Shocked cloud at desk scale, with a front-position probe: the largest
    // centerline x whose pressure exceeds the midpoint of the initial range
    // (the post-shock plateau sits two orders above the ambient gas, so any
    // mid threshold finds the jump).
    ProbedRun cloud;
    double cloud_front0 = 0.0, cloud_front1 = 0.0;
    {
        RunConfig c = base("cloudshock2d");
        Simulation init(c);
        const GridSpec g = init.grid();
        const int j = g.ghost + g.m[1] / 2;
        std::vector<double> prow0(g.m[0]);
        double p_lo = std::numeric_limits<double>::infinity(), p_hi = 0.0;
        for (int i = 0; i < g.m[0]; ++i) {
            Vec8 s;
            for (int cc = 0; cc < ncomp; ++cc) s[cc] = init.state().at(g.ghost + i, j, 0, cc);
            prow0[i] = pressure(s, init.gamma());
            p_lo = std::fmin(p_lo, prow0[i]);
            p_hi = std::fmax(p_hi, prow0[i]);
        }
        const double thresh = 0.5 * (p_lo + p_hi);
        Field qf;
        cloud = probed_run(c, "smoke shocked cloud 128^2", &qf);
        for (int i = 0; i < g.m[0]; ++i) {
            if (prow0[i] > thresh) cloud_front0 = g.center(0, g.ghost + i);
            if (!cloud.completed) continue;
            Vec8 s;
            for (int cc = 0; cc < ncomp; ++cc) s[cc] = qf.at(g.ghost + i, j, 0, cc);
            if (pressure(s, init.gamma()) > thresh) cloud_front1 = g.center(0, g.ghost + i);
        }
    }

    // Short 3D shocked-cloud run so the divergence ledger covers every
    // catalog problem (a full desk-scale run adds nothing to that check).
    RunConfig cs3 = base("cloudshock3d");
    cs3.mesh = {48, 48, 48};
    cs3.tfinal = 0.005;
    probed_run(cs3, "c4 shocked cloud 48^3 (short)");

    // ---- phase 2: verdicts -------------------------------------------------

    int failures = 0;
    auto report = [&](const std::string& name, bool ok, const std::string& detail) {
        std::printf("[%s] %s: %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
        if (!ok) ++failures;
    };

    {
        // Reference max-norm field errors for the fixed-CFL wave ladder.
        const std::vector<double> ref = {3.842e-5, 4.940e-6, 6.324e-7};
        bool ok = true;
        for (int l = 0; l < 3; ++l) ok = ok && within_factor(c1.err_b[l], ref[l], 3.0);
        for (double o : c1.order()) ok = ok && o >= 2.7 && o <= 3.2;
        report("criterion 1 (wave accuracy, fixed cfl)", ok,
               fmt("error_B [%s] vs ref [%s] (within 3x), orders [%s] in [2.7,3.2]",
                   join(c1.err_b, "%.3e").c_str(), join(ref, "%.3e").c_str(),
                   join(c1.order(), "%.2f").c_str()));
    }

    {
        bool ok = true;
        for (double o : c2.order()) ok = ok && o >= 3.7 && o <= 4.3;
        report("criterion 2 (wave accuracy, spatial order)", ok,
               fmt("error_B [%s], orders [%s] in [3.7,4.3]", join(c2.err_b, "%.3e").c_str(),
                   join(c2.order(), "%.2f").c_str()));
    }

    {
        const double ref_t1 = 4.784e-4;    // 16x32x32, t = 1.0, cfl 0.5
        const double ref_t001 = 6.752e-5;  // 16x32x32, t = 0.01, cfl 0.5
        const double order = std::log2(w3_coarse.error_B / w3_fine.error_B);
        const bool ok = within_factor(w3_t1.error_B, ref_t1, 3.0) &&
                        within_factor(w3_coarse.error_B, ref_t001, 3.0) && order >= 3.5;
        report("criterion 3 (3d wave accuracy)", ok,
               fmt("error_B %.3e vs ref %.3e (t=1), %.3e vs ref %.3e (t=0.01), order %.2f "
                   ">= 3.5",
                   w3_t1.error_B, ref_t1, w3_coarse.error_B, ref_t001, order));
    }

    {
        const double div_tol = 1e-11;
        double worst = 0.0;
        std::string worst_label = "none";
        std::set<std::string> covered;
        for (const DivRecord& d : div_records) {
            covered.insert(d.problem);
            if (d.ratio > worst) {
                worst = d.ratio;
                worst_label = d.label;
            }
        }
        // Every catalog problem must have contributed at least one corrected
        // run; a missing entry means an expected run aborted.
        const char* all[] = {"alfven2d",     "alfven3d",     "shocktube2d",
                             "orszagtang",   "rotor",        "blast2d",
                             "blast3d",      "cloudshock2d", "cloudshock3d"};
        std::string missing;
        for (const char* p : all)
            if (!covered.count(p)) missing += std::string(" ") + p;
        const bool ok = missing.empty() && worst <= div_tol;
        report("criterion 4 (divergence-free)", ok,
               fmt("%zu corrected runs over %zu problems%s; worst max|divB|/max|B| = %.3e "
                   "(%s), tol %.0e",
                   div_records.size(), covered.size(),
                   missing.empty() ? "" : (" MISSING" + missing).c_str(), worst,
                   worst_label.c_str(), div_tol));
    }

    {
        double worst_off = std::fmax(w3_t1.energy_error, ot_on.energy_err);
        worst_off = std::fmax(worst_off, w3_coarse.energy_error);
        worst_off = std::fmax(worst_off, w3_fine.energy_error);
        for (const Ladder* lad : {&c1, &c2})
            for (double e : lad->energy) worst_off = std::fmax(worst_off, e);
        const double worst_on = std::fmax(vortex_long.energy_err,
                                          std::fmax(rotor.energy_err, blast128.energy_err));
        const bool ok = worst_off <= 1e-12 && vortex_long.completed && rotor.completed &&
                        blast128.completed && blast256.completed && worst_on < 0.01 &&
                        blast256.energy_err < blast128.energy_err;
        report("criterion 5 (energy conservation)", ok,
               fmt("limiter off worst %.2e (tol 1e-12); limiter on: vortex %.2e rotor %.2e "
                   "blast %.2e (tol 1e-2); refined blast %.2e < %.2e",
                   worst_off, vortex_long.energy_err, rotor.energy_err, blast128.energy_err,
                   blast256.energy_err, blast128.energy_err));
    }

    {
        const PositivityFloors floors;
        auto alive = [&](const ProbedRun& r) {
            return r.completed && r.run_min_rho > floors.eps_rho && r.run_min_p > floors.eps_p;
        };
        const bool abort_ok =
            !blast_nopp.completed && blast_nopp.abort_step == 1 &&
            blast_nopp.abort_what.find("non-positive pressure") != std::string::npos;
        const bool ok = alive(blast128) && alive(rotor) && alive(blast3d) && abort_ok;
        report("criterion 6 (positivity)", ok,
               fmt("blast 128^2 min(rho,p)=(%.2e,%.2e), rotor (%.2e,%.2e), blast 75^3 "
                   "(%.2e,%.2e); limiter-off abort at step %lld: %s",
                   blast128.run_min_rho, blast128.run_min_p, rotor.run_min_rho,
                   rotor.run_min_p, blast3d.run_min_rho, blast3d.run_min_p,
                   blast_nopp.abort_step,
                   blast_nopp.completed ? "did not abort" : blast_nopp.abort_what.c_str()));
    }

    {
        const bool fail_ok = !ot_off.completed && ot_off.abort_time < 2.5;
        const bool pass_ok = ot_on.completed && ot_on.run_min_p > 0.0 &&
                             ot_on.max_rho <= 10.0 * ot_on.init_max_rho;
        report("criterion 7 (potential correction necessity)", fail_ok && pass_ok,
               fmt("ct off: %s; ct on: reached t=%.2f, min p %.3e, max rho %.3f (10x init "
                   "bound %.3f)",
                   ot_off.completed ? "survived to t=2.5 (expected abort)"
                                    : fmt("aborted at t=%.3f", ot_off.abort_time).c_str(),
                   ot_on.t_end, ot_on.run_min_p, ot_on.max_rho, 10.0 * ot_on.init_max_rho));
    }

    {
        const bool ok = shock_done[0] && shock_done[1] && shock_dev[0] <= 0.5 * shock_dev[1];
        report("criterion 8 (shock-tube oscillation control)", ok,
               fmt("max|Bn-0.75| on y=0: ct on %s, ct off %s (need on <= off/2)",
                   shock_done[0] ? fmt("%.4e", shock_dev[0]).c_str() : "aborted",
                   shock_done[1] ? fmt("%.4e", shock_dev[1]).c_str() : "aborted"));
    }

    {
        const std::filesystem::path dir = std::filesystem::path(argv[0]).parent_path();
        const char* suites[] = {"test_grid",        "test_physics",  "test_weno",
                                "test_reconstruct", "test_pif",      "test_ct",
                                "test_limiter",     "test_problems", "test_diagnostics",
                                "test_output"};
        std::string failed;
        for (const char* s : suites) {
            const std::string exe =
                dir.empty() ? "./" + std::string(s) : (dir / s).string();
            progress(fmt("c9 property suite %s", s));
            if (std::system((exe + " >/dev/null 2>&1").c_str()) != 0)
                failed += std::string(" ") + s;
        }
        report("criterion 9 (property suites)", failed.empty(),
               failed.empty() ? "10 operator suites pass" : "failing:" + failed);
    }

    {
        const bool ok =
            cloud.completed && cloud.run_min_p > 0.0 && cloud_front1 > cloud_front0 + 0.05;
        report("smoke (shocked cloud)", ok,
               fmt("completed %s, min p %.3e, front x %.3f -> %.3f (rightward)",
                   cloud.completed ? "yes" : "no", cloud.run_min_p, cloud_front0,
                   cloud_front1));
    }

    if (failures)
        std::printf("%d criterion(s) failed\n", failures);
    else
        std::printf("all criteria pass\n");
    return failures ? 1 : 0;
}
