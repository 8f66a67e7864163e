// Unstaggered constrained transport: Lax-Wendroff Hamilton-Jacobi evolution
// of the magnetic potential, fourth-order curl correction of B, and the
// optional energy adjustment that keeps pressure unchanged across the
// correction.
#pragma once

#include "pifweno/grid.hpp"
#include "pifweno/physics.hpp"

namespace pifweno {

// Artificial resistivity applied to each 3D potential component along its own
// axis; the 2D solve evolves only the out-of-plane component and needs none.
struct ResistivityParams {
    double nu = 0.01;         // magnitude, 0 disables
    double eps_smooth = 1e-8; // regularizer inside the smoothness indicator
};

// |a-/(a- + a+) - 1/2| with a = (eps + (dx d)^2)^-2: zero for matched
// one-sided slopes, approaching 1/2 where one side dominates.
double smoothness_gamma(double d_minus, double d_plus, double dx, double eps_smooth);

// Scratch fields reused across steps to avoid per-step allocation.
struct CTWorkspace {
    Field uvel;     // velocity
    Field qt;       // state time derivative (2nd-order central flux divergence)
    Field ut;       // velocity time derivative
    Field utt;      // velocity second time derivative, interior only
    Field pflux[3]; // physical fluxes feeding qt
    Field ft[3];    // flux time derivatives feeding utt
    Field t1;       // central (dissipation-free) first time derivative of A
    Field curl;     // 3D only: curl A
    Field curl_t;   // 3D only: curl of t1
    Field d1, d2, d3; // temporal derivatives consumed by the Taylor step
    void ensure(const GridSpec& g, int acomps);
};

// Per-cell temporal derivatives of the potential at the current state, valid
// on the interior.  dA1 is the dissipative Hamilton-Jacobi form: one-sided
// WENO derivatives averaged, Lax-Friedrichs dissipation scaled by the global
// maximum velocity per axis, and in 3D the own-axis artificial resistivity
// (which carries the 1/dt factor, hence dt > 0 whenever nu > 0).  dA2 and dA3
// follow the Cauchy-Kovalevskaya chain with plain 2nd-order central
// differences; the velocity time derivatives inside come from the MHD flux
// divergence of q.  q and A must be boundary-filled; A carries 1 component in
// 2D and 3 in 3D.
void potential_time_derivatives(const Field& q, const Field& A, double gamma,
                                const ResistivityParams& res, double dt, int threads,
                                Field& dA1, Field& dA2, Field& dA3, CTWorkspace& ws);

// Third-order Taylor step of the potential in place over the interior:
//   A += dt dA1 + (dt^2/2) dA2 + (dt^3/6) dA3.
// Ghost layers are left stale; the caller refills them.
void potential_taylor_step(const Field& q, double dt, double gamma,
                           const ResistivityParams& res, int threads, Field& A,
                           CTWorkspace& ws);

// B := curl A with the 4th-order central first derivative, written into the
// magnetic components of q over the interior widened by `extra` cells per
// active axis (A must be valid extra+2 cells deep).  Applying the same
// stencil again cancels exactly, so the 4th-order central divergence of the
// corrected B vanishes to roundoff.  2D writes the two in-plane components
// only; the out-of-plane one belongs to the conservative update.
void curl_correction(const Field& A, int extra, int threads, Field& q);

// E += (|B_new|^2 - |B_old|^2)/2 over the interior, so the pressure implied
// by the corrected field matches the pre-correction one.  b_old holds the
// three magnetic components saved before curl_correction.
void magnetic_energy_correction(const Field& b_old, int threads, Field& q);

} // namespace pifweno
