#pragma once

#include "pifweno/grid.hpp"
#include "pifweno/physics.hpp"

namespace pifweno {

// Characteristic-wise fifth-order reconstruction of interface fluxes from
// cell-centered flux values, with global Lax-Friedrichs splitting.
//
// favg holds the (time-averaged) flux along `dir` at cell centers and must be
// valid on every cell the stencils touch; q must be boundary-filled.  Entry i
// of fhat receives the numerical flux at the i+1/2 interface along `dir`.
// Interfaces are produced for own-axis index i in [-2, m] and one transverse
// ghost ring, which covers both the conservative update and the positivity
// limiter's boundary-adjacent stencil.
void reconstruct_interface_fluxes(const Field& q, const Field& favg, int dir, double alpha,
                                  double gamma, int threads, Field& fhat);

} // namespace pifweno
