// Positivity-preserving flux limiter: blends the high-order time-averaged
// interface fluxes toward first-order global Lax-Friedrichs fluxes with one
// scalar per interface, chosen so every cell update keeps density and
// pressure above small floors.
#pragma once

#include "pifweno/grid.hpp"
#include "pifweno/physics.hpp"

namespace pifweno {

struct PositivityFloors {
    double eps_rho = 1e-12;
    double eps_p = 1e-12;
};

// First-order global Lax-Friedrichs interface flux along dir:
//   (f(qr) + f(ql) - alpha (qr - ql)) / 2.
Vec8 lf_flux(const Vec8& ql, const Vec8& qr, int dir, double alpha, double gamma);

// Scratch fields reused across steps.
struct LimiterWorkspace {
    Field flux_lo[3]; // Lax-Friedrichs interface fluxes, entry i = interface i+1/2
    Field q_lf;       // low-order update, interior widened by one cell
    Field lam;        // per-cell blend bounds, two sides per active axis
    void ensure(const GridSpec& g);
};

// Low-order update q_lf = q - dt div(LF flux) on the interior widened by one
// cell per active axis, kept in ws together with the LF interface fluxes.
// The update is expected to respect the floors whenever q does and the CFL
// number is at most 1/2 (conjectured, extensively verified numerically); a
// violation throws std::domain_error naming the cell. dt above the CFL-1/2
// bound (computed from alpha, one entry per axis) throws
// std::invalid_argument.
void lf_update(const Field& q, const double* alpha, double dt, double gamma,
               const PositivityFloors& floors, int threads, LimiterWorkspace& ws);

// Per-cell box shrink. C holds one 8-vector per side in axis order
// (lo0, hi0, lo1, hi1, ...): the update reachable by interface blending is
// q_lf + sum_s theta_s C_s with theta_s in [0,1]. Writes lambda[s] in [0,1]
// such that density stays >= eps_rho and pressure >= eps_p for every theta
// in the box prod_s [0, lambda_s]. The density bound is exact (density is
// affine in theta); the pressure bound shrinks the box vertices by bisection
// (10 iterations, rounding down) and keeps the componentwise-minimal vertex
// scale per side. Requires q_lf itself above the floors.
void shrink_box(const Vec8& q_lf, const Vec8* C, int nsides, double gamma,
                const PositivityFloors& floors, double* lambda);

// Replaces each high-order interface flux F with theta (F - f) + f, where f
// is the stored LF flux and theta is the minimum of the two adjacent cells'
// facing box bounds. Entries with theta == 1 are left bitwise untouched.
// Requires a prior lf_update with the same state and step; fhat[d] must hold
// the high-order fluxes with entries on own-axis [-2, m] and one transverse
// ghost ring (the reconstruction output contract).
void apply_positivity_limiter(const Field& q, double dt, double gamma,
                              const PositivityFloors& floors, int threads,
                              Field* fhat, LimiterWorkspace& ws);

} // namespace pifweno
