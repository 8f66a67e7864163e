#pragma once

#include "pifweno/grid.hpp"
#include "pifweno/physics.hpp"

namespace pifweno {

// Scratch fields reused across steps to avoid per-step allocation.
struct PifWorkspace {
    Field pflux[3]; // physical fluxes at cell centers, all ghosted cells
    Field qt;       // state time derivative from the flux divergence
    Field ft[3];    // time derivative of each directional flux
    Field favg[3];  // time-averaged fluxes
    void ensure(const GridSpec& g);
};

// Cell-centered time-averaged flux along every active axis:
//   F = f + (dt/2) f_t + (dt^2/6) f_tt,
// where f_t = J q_t, f_tt = H(q_t, q_t) + J q_tt, and the state time
// derivatives come from 4th-order central differences of the flux fields
// (and of f_t for q_tt).  q must be boundary-filled on entry.  The result is
// computed on the interior widened by two cells per active axis, then `bc`
// extends it over the remaining ghosts so downstream reconstruction sees
// every stencil it needs; with periodic axes this keeps wrapped interfaces
// bitwise identical.
void time_averaged_fluxes(const Field& q, double dt, double gamma, const BoundarySpec& bc,
                          int threads, PifWorkspace& ws);

// Flux-difference update over interior cells.  fhat[d] entry i holds the
// numerical flux at the i+1/2 interface along axis d.
void conservative_update(Field& q, const Field* fhat, double dt, int threads);

// Largest stable step, cfl / sum_d(alpha_d / dx_d).  alpha (length 3, zero on
// inactive axes) receives the per-axis maximum signal speed over the
// interior; it feeds the Lax-Friedrichs splitting.
double compute_dt(const Field& q, double gamma, double cfl, double* alpha);

} // namespace pifweno
