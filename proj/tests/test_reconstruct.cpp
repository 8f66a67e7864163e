#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "pifweno/grid.hpp"
#include "pifweno/physics.hpp"
#include "pifweno/reconstruct.hpp"
#include "test_util.hpp"

using namespace pifweno;

namespace {

Vec8 smooth_state(double x, double gamma) {
    const double tpi = 2.0 * M_PI;
    const double rho = 2.0 + 0.5 * std::sin(tpi * x);
    const double u[3] = {0.3 + 0.1 * std::cos(tpi * x), 0.2 * std::sin(tpi * x), -0.1};
    const double p = 1.0 + 0.2 * std::sin(tpi * x);
    const double B[3] = {0.4, 0.3 + 0.1 * std::sin(tpi * x), 0.1 * std::cos(tpi * x)};
    Vec8 q{};
    q[irho] = rho;
    for (int d = 0; d < 3; ++d) {
        q[imx + d] = rho * u[d];
        q[iBx + d] = B[d];
    }
    q[iE] = total_energy(rho, u, p, B, gamma);
    return q;
}

void load_profile(Field& q, Field& favg, int lo, int hi, double gamma) {
    for (int i = lo; i < hi; ++i) {
        const double x = q.g.center(0, i);
        const Vec8 qi = smooth_state(x, gamma);
        const Vec8 fi = flux(qi, 0, gamma);
        for (int c = 0; c < ncomp; ++c) {
            q.at(i, 0, 0, c) = qi[c];
            favg.at(i, 0, 0, c) = fi[c];
        }
    }
}

double flux_difference_error(int n, double gamma) {
    GridSpec g = build_grid({n}, {0.0}, {1.0}, 6);
    Field q(g, ncomp), favg(g, ncomp), fhat(g, ncomp);
    load_profile(q, favg, 0, g.ext(0), gamma);
    double alpha = 0.0;
    for (int i = g.ghost; i < g.ghost + n; ++i) {
        Vec8 qi;
        for (int c = 0; c < ncomp; ++c) qi[c] = q.at(i, 0, 0, c);
        alpha = std::fmax(alpha, max_signal_speed(qi, 0, gamma));
    }
    reconstruct_interface_fluxes(q, favg, 0, alpha, gamma, 1, fhat);
    const double dx = g.dx(0);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = g.center(0, g.ghost + i);
        // independent reference: 4th-order difference of the analytic flux
        // profile with a step far below the mesh width
        const double h = 1e-4;
        const Vec8 fp = flux(smooth_state(x + h, gamma), 0, gamma);
        const Vec8 fm = flux(smooth_state(x - h, gamma), 0, gamma);
        const Vec8 fp2 = flux(smooth_state(x + 2 * h, gamma), 0, gamma);
        const Vec8 fm2 = flux(smooth_state(x - 2 * h, gamma), 0, gamma);
        for (int c = 0; c < ncomp; ++c) {
            const double ref = (-fp2[c] + 8 * fp[c] - 8 * fm[c] + fm2[c]) / (12 * h);
            const double got =
                (fhat.at(g.ghost + i, 0, 0, c) - fhat.at(g.ghost + i - 1, 0, 0, c)) / dx;
            worst = std::fmax(worst, std::fabs(got - ref));
        }
    }
    return worst;
}

} // namespace

TEST_CASE("constant state reproduces its own flux at every interface") {
    const double gamma = 5.0 / 3.0;
    GridSpec g = build_grid({16}, {0.0}, {1.0}, 6);
    Field q(g, ncomp), favg(g, ncomp), fhat(g, ncomp);
    const Vec8 q0 = smooth_state(0.37, gamma);
    const Vec8 f0 = flux(q0, 0, gamma);
    for (int i = 0; i < g.ext(0); ++i)
        for (int c = 0; c < ncomp; ++c) {
            q.at(i, 0, 0, c) = q0[c];
            favg.at(i, 0, 0, c) = f0[c];
        }
    reconstruct_interface_fluxes(q, favg, 0, 1.7, gamma, 1, fhat);
    for (int i = -2; i <= 16; ++i)
        for (int c = 0; c < ncomp; ++c)
            CHECK(std::fabs(fhat.at(g.ghost + i, 0, 0, c) - f0[c]) < 1e-13); // measured 1.3e-15
}

TEST_CASE("flux differences converge at fifth order on a smooth profile") {
    const double gamma = 5.0 / 3.0;
    const double e32 = flux_difference_error(32, gamma);
    const double e64 = flux_difference_error(64, gamma);
    CHECK(e32 < 2.0e-3); // measured 1.15e-3
    CHECK(e64 < 5.0e-5); // measured 2.84e-5
    const double order = std::log2(e32 / e64);
    CHECK(order > 4.6); // measured 5.33
    CHECK(order < 5.8);
}

TEST_CASE("periodic wrap produces bitwise-equal boundary interfaces") {
    // The same physical interface is computed twice near a periodic boundary
    // (as i = -1/2 and as i = m-1/2); exact global conservation requires the
    // two results to be identical to the last bit.
    const double gamma = 5.0 / 3.0;
    const int n = 24;
    GridSpec g = build_grid({n}, {0.0}, {1.0}, 6);
    Field q(g, ncomp), favg(g, ncomp), fhat(g, ncomp);
    load_profile(q, favg, g.ghost, g.ghost + n, gamma);
    const BoundarySpec bc = BoundarySpec::all(BCKind::periodic);
    fill_boundary(q, bc);
    fill_boundary(favg, bc);
    reconstruct_interface_fluxes(q, favg, 0, 2.0, gamma, 1, fhat);
    for (int c = 0; c < ncomp; ++c) {
        CHECK(fhat.at(g.ghost - 1, 0, 0, c) == fhat.at(g.ghost + n - 1, 0, 0, c));
        CHECK(fhat.at(g.ghost - 2, 0, 0, c) == fhat.at(g.ghost + n - 2, 0, 0, c));
    }
}

TEST_CASE("thread count does not change results") {
    const double gamma = 5.0 / 3.0;
    const int n = 12;
    GridSpec g = build_grid({n, n}, {0.0, 0.0}, {1.0, 1.0}, 6);
    Field q(g, ncomp), favg(g, ncomp), f1(g, ncomp), f4(g, ncomp);
    std::mt19937_64 rg = testutil::rng();
    for (int j = 0; j < g.ext(1); ++j)
        for (int i = 0; i < g.ext(0); ++i) {
            const Vec8 qi = testutil::random_state(rg, gamma);
            const Vec8 fi = flux(qi, 1, gamma);
            for (int c = 0; c < ncomp; ++c) {
                q.at(i, j, 0, c) = qi[c];
                favg.at(i, j, 0, c) = fi[c];
            }
        }
    reconstruct_interface_fluxes(q, favg, 1, 3.0, gamma, 1, f1);
    reconstruct_interface_fluxes(q, favg, 1, 3.0, gamma, 4, f4);
    for (size_t k = 0; k < f1.v.size(); ++k) CHECK(f1.v[k] == f4.v[k]);
}
