#include "pifweno/driver.hpp"

#include "pifweno/diagnostics.hpp"
#include "pifweno/output.hpp"
#include "pifweno/physics.hpp"
#include "pifweno/reconstruct.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <stdexcept>
#include <string>

namespace pifweno {

namespace {

// Relative slack when comparing simulation times, so a target is considered
// reached once accumulated roundoff alone separates the two.
double time_eps(double t) { return 1e-12 * std::fmax(1.0, std::fabs(t)); }

std::string cell_tag(int i, int j, int k) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "(%d,%d,%d)", i, j, k);
    return buf;
}

}  // namespace

Simulation::Simulation(const RunConfig& cfg)
    : cfg_(cfg), spec_(find_problem(cfg.problem)), g_(problem_grid(spec_, cfg.mesh, 6)) {
    gamma_ = cfg.gamma < 0 ? spec_.gamma : cfg.gamma;
    pp_ = cfg.pp < 0 ? spec_.pp_required : cfg.pp != 0;
    ct_ = cfg.ct;
    tfinal_ = cfg.tfinal < 0 ? spec_.tfinal : cfg.tfinal;

    if (!(cfg.cfl > 0.0) || cfg.cfl > 1.0)
        throw std::invalid_argument("cfl must lie in (0, 1]");
    if (pp_ && cfg.cfl > 0.5 + 1e-15)
        throw std::invalid_argument("positivity limiter requires cfl <= 1/2");
    if (!(gamma_ > 1.0)) throw std::invalid_argument("gamma must exceed 1");
    if (!(tfinal_ >= 0.0)) throw std::invalid_argument("tfinal must be non-negative");
    if (cfg.threads < 1) throw std::invalid_argument("threads must be positive");
    if (cfg.snapshots < 0) throw std::invalid_argument("snapshots must be non-negative");
    if (cfg.nu < 0.0) throw std::invalid_argument("nu must be non-negative");
    if (cfg.max_steps < 1) throw std::invalid_argument("max_steps must be positive");

    q_ = Field(g_, ncomp);
    A_ = Field(g_, spec_.acomps());
    initialize(spec_, g_, q_, A_);
    for (int d = 0; d < g_.ndim; ++d) fhat_[d] = Field(g_, ncomp);
    bold_ = Field(g_, 3);
    res_.nu = g_.ndim == 3 ? cfg.nu : 0.0;
    scan_admissibility();
}

bool Simulation::finished() const { return t_ >= tfinal_ - time_eps(tfinal_); }

void Simulation::step() {
    if (finished()) return;

    fill_boundary(q_, spec_.bc_q);
    if (ct_) fill_boundary(A_, spec_.bc_a);

    double alpha[3] = {0.0, 0.0, 0.0};
    double dt = compute_dt(q_, gamma_, cfg_.cfl, alpha);
    if (!std::isfinite(dt) || !(dt > 0.0))
        throw PositivityError("time step is not finite and positive", steps_, t_,
                              {-1, -1, -1});
    bool last = false;
    if (dt > tfinal_ - t_) {  // clip to land exactly on the final time
        dt = tfinal_ - t_;
        last = true;
    }

    try {
        if (pp_) lf_update(q_, alpha, dt, gamma_, cfg_.floors, cfg_.threads, lws_);
        time_averaged_fluxes(q_, dt, gamma_, spec_.bc_q, cfg_.threads, pws_);
        for (int d = 0; d < g_.ndim; ++d)
            reconstruct_interface_fluxes(q_, pws_.favg[d], d, alpha[d], gamma_,
                                         cfg_.threads, fhat_[d]);
        if (pp_)
            apply_positivity_limiter(q_, dt, gamma_, cfg_.floors, cfg_.threads, fhat_,
                                     lws_);
    } catch (const std::domain_error& e) {
        throw PositivityError(std::string(e.what()) + " (step " +
                                  std::to_string(steps_ + 1) + ", t = " +
                                  std::to_string(t_) + ")",
                              steps_, t_, {-1, -1, -1});
    }

    // The potential update reads velocities from the pre-update state, so it
    // must run before the conserved state advances.
    if (ct_) potential_taylor_step(q_, dt, gamma_, res_, cfg_.threads, A_, cws_);

    conservative_update(q_, fhat_, dt, cfg_.threads);

    if (ct_) {
        fill_boundary(A_, spec_.bc_a);
        for (int k = 0; k < g_.ext(2); ++k)
            for (int j = 0; j < g_.ext(1); ++j)
                for (int i = 0; i < g_.ext(0); ++i)
                    for (int c = 0; c < 3; ++c) bold_.at(i, j, k, c) = q_.at(i, j, k, iBx + c);
        // Rewriting B a few cells past the interior keeps the divergence
        // stencil curl-consistent right up to the boundary.
        curl_correction(A_, 4, cfg_.threads, q_);
        if (pp_) magnetic_energy_correction(bold_, cfg_.threads, q_);
    }

    t_ = last ? tfinal_ : t_ + dt;
    ++steps_;
    dt_last_ = dt;
    scan_admissibility();
}

long long Simulation::advance(double t_stop) {
    if (t_stop > tfinal_) t_stop = tfinal_;
    long long taken = 0;
    while (t_ < t_stop - time_eps(t_stop)) {
        if (steps_ >= cfg_.max_steps)
            throw std::runtime_error("step budget exhausted at t = " + std::to_string(t_));
        step();
        ++taken;
    }
    return taken;
}

void Simulation::scan_admissibility() {
    const int ilo = g_.ghost;
    for (int k = g_.ndim == 3 ? ilo : 0; k < (g_.ndim == 3 ? g_.m[2] + ilo : 1); ++k)
        for (int j = g_.ndim >= 2 ? ilo : 0; j < (g_.ndim >= 2 ? g_.m[1] + ilo : 1); ++j)
            for (int i = ilo; i < g_.m[0] + ilo; ++i) {
                Vec8 s;
                for (int c = 0; c < ncomp; ++c) s[c] = q_.at(i, j, k, c);
                const auto where = cell_tag(i - ilo, g_.ndim >= 2 ? j - ilo : 0,
                                            g_.ndim == 3 ? k - ilo : 0);
                const std::array<int, 3> cell = {i - ilo, g_.ndim >= 2 ? j - ilo : 0,
                                                g_.ndim == 3 ? k - ilo : 0};
                for (int c = 0; c < ncomp; ++c)
                    if (!std::isfinite(s[c]))
                        throw PositivityError("non-finite state at cell " + where +
                                                  " after step " +
                                                  std::to_string(steps_) + ", t = " +
                                                  std::to_string(t_),
                                              steps_, t_, cell);
                if (!(s[irho] > 0.0))
                    throw PositivityError("non-positive density " +
                                              std::to_string(s[irho]) + " at cell " +
                                              where + " after step " +
                                              std::to_string(steps_) + ", t = " +
                                              std::to_string(t_),
                                          steps_, t_, cell);
                const double p = pressure(s, gamma_);
                if (!(p > 0.0))
                    throw PositivityError("non-positive pressure " + std::to_string(p) +
                                              " at cell " + where + " after step " +
                                              std::to_string(steps_) + ", t = " +
                                              std::to_string(t_),
                                          steps_, t_, cell);
            }
}

double Simulation::max_divb() {
    if (!ct_) fill_boundary(q_, spec_.bc_q);
    return max_interior_abs(discrete_divergence(q_));
}

void Simulation::fill_ghosts() {
    fill_boundary(q_, spec_.bc_q);
    fill_boundary(A_, spec_.bc_a);
}

namespace {

const char* kind_name(ScalarKind k) {
    switch (k) {
        case ScalarKind::density: return "density";
        case ScalarKind::pressure: return "pressure";
        case ScalarKind::bnorm: return "bnorm";
        default: return "unorm";
    }
}

void write_plots(const std::filesystem::path& dir, const std::string& stem,
                 const Field& q, double gamma, double schlieren_k) {
    for (ScalarKind kind : {ScalarKind::density, ScalarKind::pressure,
                            ScalarKind::bnorm, ScalarKind::unorm}) {
        const Field f = scalar_map(q, kind, gamma);
        const std::string base = stem + "_" + kind_name(kind);
        write_csv_map((dir / (base + ".csv")).string(), f);
        write_gnuplot_grid((dir / (base + ".gp")).string(), f);
    }
    const Field s = schlieren(q, schlieren_k);
    write_csv_map((dir / (stem + "_schlieren.csv")).string(), s);
    write_gnuplot_grid((dir / (stem + "_schlieren.gp")).string(), s);
}

void write_state(const std::filesystem::path& dir, int index, Simulation& sim,
                 double schlieren_k) {
    char stem[32];
    std::snprintf(stem, sizeof(stem), "snap%03d", index);
    sim.fill_ghosts();  // exports read a shallow ghost band
    write_snapshot((dir / (std::string(stem) + ".dat")).string(), sim.spec().id,
                   sim.time(), sim.state(),
                   sim.ct_on() ? &sim.potential() : nullptr);
    write_plots(dir, stem, sim.state(), sim.gamma(), schlieren_k);
}

}  // namespace

RunSummary run(const RunConfig& cfg) {
    Simulation sim(cfg);
    const bool writing = !cfg.outdir.empty();
    const std::filesystem::path dir(cfg.outdir);
    std::unique_ptr<SeriesWriter> series;
    if (writing) {
        std::filesystem::create_directories(dir);
        series = std::make_unique<SeriesWriter>((dir / "series.csv").string());
    }

    const Field q0 = sim.state();  // reference for the energy drift
    int next_snap = 1;
    const int nsnap = cfg.snapshots;
    if (writing) write_state(dir, 0, sim, cfg.schlieren_k);

    RunSummary out;
    out.problem = sim.spec().id;
    out.run_min_rho = min_density(sim.state());
    out.run_min_p = min_pressure(sim.state(), sim.gamma());
    // Initial data sample B directly, so its divergence reflects the data, not
    // the scheme; the reported maximum covers post-step states only.
    double max_div_seen = 0.0;
    out.max_bnorm = max_bnorm(sim.state());

    while (!sim.finished()) {
        sim.step();
        const double ee = energy_conservation_error(sim.state(), q0);
        const double dv = sim.max_divb();
        const double mr = min_density(sim.state());
        const double mp = min_pressure(sim.state(), sim.gamma());
        out.run_min_rho = std::fmin(out.run_min_rho, mr);
        out.run_min_p = std::fmin(out.run_min_p, mp);
        max_div_seen = std::fmax(max_div_seen, dv);
        out.max_bnorm = std::fmax(out.max_bnorm, max_bnorm(sim.state()));
        if (series) series->row(sim.time(), ee, dv, mr, mp);
        while (writing && next_snap <= nsnap &&
               sim.time() >= sim.tfinal() * next_snap / nsnap -
                                 1e-12 * std::fmax(1.0, sim.tfinal())) {
            write_state(dir, next_snap, sim, cfg.schlieren_k);
            ++next_snap;
        }
    }

    out.t_end = sim.time();
    out.steps = sim.steps();
    out.min_rho = min_density(sim.state());
    out.min_p = min_pressure(sim.state(), sim.gamma());
    out.max_divb = max_div_seen;
    out.energy_error =
        sim.steps() == 0 ? 0.0 : energy_conservation_error(sim.state(), q0);

    if (sim.spec().has_exact) {
        Field qe(sim.grid(), ncomp), ae(sim.grid(), sim.spec().acomps());
        exact_solution(sim.spec(), sim.grid(), sim.time(), qe, ae);
        out.error_B = linf_error(sim.state(), qe, {iBx, iBy, iBz});
        std::vector<int> ac;
        for (int c = 0; c < ae.comps; ++c) ac.push_back(c);
        out.error_A = linf_error(sim.potential(), ae, ac);
    }
    return out;
}

}  // namespace pifweno
