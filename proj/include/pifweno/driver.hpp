#pragma once

#include "pifweno/ct.hpp"
#include "pifweno/grid.hpp"
#include "pifweno/limiter.hpp"
#include "pifweno/pif.hpp"
#include "pifweno/problems.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace pifweno {

// Everything needed to set up and run one simulation.  Negative sentinels mean
// "take the problem catalog default" so a config file only has to name the
// problem.
struct RunConfig {
    std::string problem;
    std::vector<int> mesh;      // empty: catalog default, else one entry per axis
    double cfl = 0.5;
    double tfinal = -1.0;       // < 0: catalog default
    bool ct = true;             // evolve the magnetic potential and rebuild B from it
    int pp = -1;                // -1: catalog default, else 0/1; on implies the
                                // magnetic energy correction after each curl rebuild
    double nu = 0.01;           // artificial resistivity, 3D potential update only
    double gamma = -1.0;        // < 0: catalog default
    int threads = 1;
    int snapshots = 0;          // extra states written at tfinal*n/snapshots
    std::string outdir;         // empty: no files written
    double schlieren_k = 10.0;  // contrast exponent for the schlieren export
    PositivityFloors floors;
    long long max_steps = 100000000;  // safety valve against stalled dt
};

// Raised when the state leaves the admissible set: non-finite values, or
// density/pressure at or below zero.  With the positivity limiter off this is
// the expected failure mode of strong blast waves.
struct PositivityError : std::runtime_error {
    long long step;            // steps completed before the failure
    double time;               // simulation time at the failure
    std::array<int, 3> cell;   // interior cell index, or {-1,-1,-1} if unknown
    PositivityError(const std::string& msg, long long step_, double time_,
                    std::array<int, 3> cell_)
        : std::runtime_error(msg), step(step_), time(time_), cell(cell_) {}
};

// One explicit step advances the conserved state with the time-averaged-flux
// update, then (ct on) advances the potential from the pre-update state and
// rewrites B as its fourth-order curl.  Owns the state and all workspaces.
class Simulation {
  public:
    explicit Simulation(const RunConfig& cfg);

    // One full step.  dt comes from the CFL condition and is clipped only to
    // land exactly on the final time.  Throws PositivityError if the state
    // becomes inadmissible.
    void step();

    // Steps until time() reaches t_stop up to roundoff (never past tfinal).
    // Returns the number of steps taken.
    long long advance(double t_stop);

    bool finished() const;

    const Field& state() const { return q_; }
    const Field& potential() const { return A_; }
    // Direct access for tools that overwrite the catalog initial data (the
    // boundary policy and grid stay those of the configured problem).
    Field& state_mut() { return q_; }
    Field& potential_mut() { return A_; }
    const ProblemSpec& spec() const { return spec_; }
    const GridSpec& grid() const { return g_; }
    double time() const { return t_; }
    double tfinal() const { return tfinal_; }
    long long steps() const { return steps_; }
    double last_dt() const { return dt_last_; }
    double gamma() const { return gamma_; }
    bool pp_on() const { return pp_; }
    bool ct_on() const { return ct_; }

    // Max |divergence of B| over the interior, fourth-order stencil.  With ct
    // on the post-correction ghost ring already agrees with the curl, so the
    // state is read as-is; with ct off ghosts are refreshed first.
    double max_divb();

    // Refresh ghost cells of state and potential (before plotting a state
    // whose ghosts are stale).  Overwrites the deep curl-consistent ring, so
    // call max_divb() first if both are wanted.
    void fill_ghosts();

  private:
    void scan_admissibility();

    RunConfig cfg_;
    ProblemSpec spec_;
    GridSpec g_;
    double gamma_;
    bool pp_, ct_;
    double tfinal_;
    double t_ = 0.0;
    double dt_last_ = 0.0;
    long long steps_ = 0;
    Field q_, A_, bold_;
    Field fhat_[3];
    PifWorkspace pws_;
    CTWorkspace cws_;
    LimiterWorkspace lws_;
    ResistivityParams res_;
};

// Final-state report of run().  error_B / error_A stay negative unless the
// problem has a reference solution.
struct RunSummary {
    std::string problem;
    double t_end = 0.0;
    long long steps = 0;
    double min_rho = 0.0;       // final state
    double min_p = 0.0;         // final state
    double run_min_rho = 0.0;   // minimum over all completed steps
    double run_min_p = 0.0;     // minimum over all completed steps
    double max_divb = 0.0;      // largest post-step value, fourth-order stencil
    double max_bnorm = 0.0;     // largest |B| seen in any state, the divergence scale
    double energy_error = 0.0;  // |total energy drift| relative to the start
    double error_B = -1.0;      // max-norm error of B against the reference
    double error_A = -1.0;      // max-norm error of the potential
};

// Set up from cfg, run to the final time, and report.  With cfg.outdir set,
// writes series.csv (one row per step: t, energy error, max |div B|, min rho,
// min p), numbered snapshot files, and per-snapshot plot exports.
RunSummary run(const RunConfig& cfg);

}  // namespace pifweno
