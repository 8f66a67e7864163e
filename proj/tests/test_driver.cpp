// Tests for the simulation driver: configuration resolution, the composed
// step (flux update + potential transport + curl rebuild + corrections),
// abort semantics, and run() artifacts.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pifweno/diagnostics.hpp"
#include "pifweno/driver.hpp"
#include "pifweno/output.hpp"
#include "pifweno/physics.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

using namespace pifweno;

namespace {

RunConfig base(const std::string& id) {
    RunConfig c;
    c.problem = id;
    return c;
}

int count_interior_diffs(const Field& a, const Field& b) {
    const GridSpec& g = a.g;
    int n = 0;
    for (int k = g.ndim == 3 ? g.ghost : 0; k < (g.ndim == 3 ? g.m[2] + g.ghost : 1); ++k)
        for (int j = g.ghost; j < g.m[1] + g.ghost; ++j)
            for (int i = g.ghost; i < g.m[0] + g.ghost; ++i)
                for (int c = 0; c < a.comps; ++c)
                    if (a.at(i, j, k, c) != b.at(i, j, k, c)) ++n;
    return n;
}

void set_uniform(Field& q, double rho, const double* u, double p, const double* B,
                 double gamma) {
    const GridSpec& g = q.g;
    for (int k = 0; k < g.ext(2); ++k)
        for (int j = 0; j < g.ext(1); ++j)
            for (int i = 0; i < g.ext(0); ++i) {
                double* s = q.ptr(i, j, k);
                s[irho] = rho;
                s[imx] = rho * u[0];
                s[imy] = rho * u[1];
                s[imz] = rho * u[2];
                s[iE] = total_energy(rho, u, p, B, gamma);
                s[iBx] = B[0];
                s[iBy] = B[1];
                s[iBz] = B[2];
            }
}

}  // namespace

TEST_CASE("config validation") {
    CHECK_THROWS_AS(Simulation{base("no-such-problem")}, std::invalid_argument);

    RunConfig c = base("alfven2d");
    c.cfl = 1.5;
    CHECK_THROWS_AS(Simulation{c}, std::invalid_argument);
    c.cfl = 0.0;
    CHECK_THROWS_AS(Simulation{c}, std::invalid_argument);
    c.cfl = 0.6;
    c.pp = 1;  // the positivity guarantee needs cfl <= 1/2
    CHECK_THROWS_AS(Simulation{c}, std::invalid_argument);
    c.cfl = 1.0;
    c.pp = 0;
    CHECK_NOTHROW(Simulation{c});

    c = base("alfven2d");
    c.gamma = 1.0;
    CHECK_THROWS_AS(Simulation{c}, std::invalid_argument);
    c = base("alfven2d");
    c.threads = 0;
    CHECK_THROWS_AS(Simulation{c}, std::invalid_argument);
    c = base("alfven2d");
    c.nu = -1.0;
    CHECK_THROWS_AS(Simulation{c}, std::invalid_argument);
    c = base("alfven2d");
    c.snapshots = -1;
    CHECK_THROWS_AS(Simulation{c}, std::invalid_argument);
    c = base("alfven2d");
    c.mesh = {32, 64, 32};  // wrong rank for a 2D problem
    CHECK_THROWS(Simulation{c});
}

TEST_CASE("catalog defaults resolve into the simulation") {
    Simulation a(base("alfven2d"));
    CHECK(a.tfinal() == 1.0);
    CHECK(a.gamma() == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
    CHECK(a.ct_on());
    CHECK(!a.pp_on());  // smooth problem: catalog leaves the limiter off
    CHECK(a.grid().m[0] == 32);
    CHECK(a.grid().m[1] == 64);

    Simulation r(base("rotor"));
    CHECK(r.pp_on());  // near-vacuum pressure: catalog demands the limiter
    CHECK(r.tfinal() == 0.27);

    RunConfig c = base("rotor");
    c.pp = 0;  // explicit override beats the catalog
    c.tfinal = 0.1;
    c.gamma = 1.4;
    Simulation r2(c);
    CHECK(!r2.pp_on());
    CHECK(r2.tfinal() == 0.1);
    CHECK(r2.gamma() == 1.4);
}

TEST_CASE("uniform state is unchanged by a full step") {
    // Flux differences vanish identically on uniform data, so the update must
    // be exactly zero, limiter on or off.
    RunConfig c = base("orszagtang");
    c.mesh = {24, 24};
    c.ct = false;
    c.pp = 1;
    Simulation sim(c);
    const double u[3] = {0.3, -0.2, 0.1}, B[3] = {0.75, -0.5, 0.25};
    set_uniform(sim.state_mut(), 1.4, u, 2.0, B, sim.gamma());
    const Field before = sim.state();
    sim.step();
    CHECK(count_interior_diffs(before, sim.state()) == 0);
    CHECK(sim.steps() == 1);
    CHECK(sim.time() == sim.last_dt());

    // With the potential transported too: B = 0 keeps A = 0 an exact steady
    // state, and the curl rebuild plus energy correction must also be no-ops.
    c.ct = true;
    Simulation sim2(c);
    const double B0[3] = {0.0, 0.0, 0.0};
    set_uniform(sim2.state_mut(), 1.4, u, 2.0, B0, sim2.gamma());
    Field& A = sim2.potential_mut();
    const GridSpec& g = sim2.grid();
    for (int j = 0; j < g.ext(1); ++j)
        for (int i = 0; i < g.ext(0); ++i) A.at(i, j, 0, 0) = 0.0;
    const Field before2 = sim2.state();
    sim2.step();
    CHECK(count_interior_diffs(before2, sim2.state()) == 0);
    for (int j = g.ghost; j < g.m[1] + g.ghost; ++j)
        for (int i = g.ghost; i < g.m[0] + g.ghost; ++i)
            CHECK(sim2.potential().at(i, j, 0, 0) == 0.0);
}

TEST_CASE("limiter leaves a well-resolved smooth flow bitwise unchanged") {
    RunConfig c = base("alfven2d");
    c.ct = false;  // isolate the flux update: no potential, no corrections
    c.pp = 0;
    Simulation off(c);
    c.pp = 1;
    Simulation on(c);
    for (int s = 0; s < 5; ++s) {
        off.step();
        on.step();
    }
    CHECK(off.last_dt() == on.last_dt());
    CHECK(count_interior_diffs(off.state(), on.state()) == 0);
}

TEST_CASE("strong blast with the limiter off aborts in the first step") {
    RunConfig c = base("blast2d");
    c.pp = 0;
    Simulation sim(c);
    bool threw = false;
    try {
        sim.step();
    } catch (const PositivityError& e) {
        threw = true;
        CHECK(e.step == 1);
        CHECK(e.time > 0.0);
        CHECK(e.time < 1e-3);
        CHECK(std::string(e.what()).find("non-positive pressure") != std::string::npos);
        CHECK(std::string(e.what()).find("cell") != std::string::npos);
        CHECK(e.cell[0] >= 0);  // the scan names the offending cell
        CHECK(e.cell[1] >= 0);
    }
    CHECK(threw);
}

TEST_CASE("near-vacuum rotor advances under the limiter") {
    RunConfig c = base("rotor");
    c.mesh = {48, 48};
    Simulation sim(c);
    REQUIRE(sim.pp_on());
    for (int s = 0; s < 3; ++s) {
        sim.step();
        const double divb = sim.max_divb();
        const double bmax = max_bnorm(sim.state());
        CHECK(divb <= 1e-11 * bmax);  // curl-built B keeps a solenoidal stencil
        CHECK(min_pressure(sim.state(), sim.gamma()) > 1e-12);
        CHECK(min_density(sim.state()) > 0.5);  // taper-edge undershoot stays tame
    }
    CHECK(sim.time() == doctest::Approx(0.0134).epsilon(0.15));
}

TEST_CASE("smooth wave run reproduces frozen accuracy numbers") {
    RunConfig c = base("alfven2d");
    c.tfinal = 0.2;
    c.pp = 0;
    RunSummary s = run(c);
    CHECK(s.problem == "alfven2d");
    CHECK(s.t_end == 0.2);  // clipped final step lands exactly
    CHECK(s.steps == 26);
    CHECK(s.error_B == doctest::Approx(9.8606802700352e-06).epsilon(1e-9));
    CHECK(s.error_A == doctest::Approx(2.1991886625106e-06).epsilon(1e-9));
    CHECK(s.max_divb < 1e-11);
    CHECK(s.energy_error < 1e-15);
    CHECK(s.min_rho > 0.999);
    CHECK(s.min_rho < 1.0);
    CHECK(s.run_min_rho <= s.min_rho);
    CHECK(s.run_min_p <= s.min_p);
}

TEST_CASE("zero final time returns the initial condition") {
    RunConfig c = base("alfven2d");
    c.tfinal = 0.0;
    RunSummary s = run(c);
    CHECK(s.steps == 0);
    CHECK(s.t_end == 0.0);
    CHECK(s.error_B == 0.0);  // reference at t = 0 is the initial condition
    CHECK(s.error_A == 0.0);
    CHECK(s.energy_error == 0.0);
    CHECK(s.max_divb == 0.0);
}

TEST_CASE("step budget guard throws") {
    RunConfig c = base("alfven2d");
    c.mesh = {16, 32};
    c.max_steps = 2;
    Simulation sim(c);
    CHECK_THROWS_AS(sim.advance(1.0), std::runtime_error);
    CHECK(sim.steps() == 2);
}

TEST_CASE("run writes series, snapshots, and plot exports") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "pifweno_driver_artifacts";
    fs::remove_all(dir);

    RunConfig c = base("alfven2d");
    c.mesh = {16, 32};
    c.tfinal = 0.05;
    c.pp = 0;
    c.snapshots = 2;
    c.outdir = dir.string();
    RunSummary s = run(c);
    REQUIRE(s.steps > 0);

    // Series: header plus one row per step.
    std::ifstream in(dir / "series.csv");
    REQUIRE(in.good());
    std::string line;
    int rows = 0;
    std::getline(in, line);
    CHECK(line == "t,energy_error,max_divB,min_rho,min_p");
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == s.steps);

    // Snapshots 0..2 plus plot exports for each.
    for (int n = 0; n <= 2; ++n) {
        char stem[16];
        std::snprintf(stem, sizeof(stem), "snap%03d", n);
        CHECK(fs::exists(dir / (std::string(stem) + ".dat")));
        for (const char* kind : {"density", "pressure", "bnorm", "unorm", "schlieren"}) {
            CHECK(fs::exists(dir / (std::string(stem) + "_" + kind + ".csv")));
            CHECK(fs::exists(dir / (std::string(stem) + "_" + kind + ".gp")));
        }
    }

    const Snapshot s0 = read_snapshot((dir / "snap000.dat").string());
    CHECK(s0.t == 0.0);
    CHECK(s0.problem == "alfven2d");
    CHECK(s0.q.g.m[0] == 16);
    CHECK(s0.A.comps == 1);
    const Snapshot s1 = read_snapshot((dir / "snap001.dat").string());
    CHECK(s1.t >= 0.025 - 1e-12);  // first state at or past the halfway target
    CHECK(s1.t < 0.05);
    const Snapshot s2 = read_snapshot((dir / "snap002.dat").string());
    CHECK(s2.t == 0.05);

    fs::remove_all(dir);
}
