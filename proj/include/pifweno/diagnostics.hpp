// Scalar monitors and error norms: L-infinity distances, observed convergence
// orders, total-energy drift, the 4th-order magnetic divergence, Schlieren
// shading, and admissibility minima. All reductions run in a fixed order so
// results are bitwise reproducible.
#pragma once

#include "pifweno/grid.hpp"

#include <vector>

namespace pifweno {

// Max |a - b| over interior cells and the listed components (all components
// when comps is empty). Throws std::invalid_argument on mismatched shapes or
// component indices out of range.
double linf_error(const Field& a, const Field& b, const std::vector<int>& comps = {});

// Max |f| over interior cells and the listed components (all when empty).
double max_interior_abs(const Field& f, const std::vector<int>& comps = {});

// Max Euclidean magnetic-field norm over interior cells of a conserved field.
double max_bnorm(const Field& q);

// log2(e_k / e_{k+1}) for successive pairs. Needs at least two entries, all
// positive; throws std::invalid_argument otherwise.
std::vector<double> observed_order(const std::vector<double>& errors);

// |sum(E_now - E_init)| / sum(E_init) over interior cells with compensated
// summation. Both fields are 8-component conserved states on the same grid.
// Throws std::invalid_argument when the initial total energy is not positive.
double energy_conservation_error(const Field& q_now, const Field& q_init);

// sum_d D4_d B^d over interior cells (active axes only); one component,
// ghost entries zero. Magnetic ghosts must be filled at least 2 deep.
Field discrete_divergence(const Field& q);

// exp(-k |grad4 ln rho| / max|grad4 ln rho|) over the interior (ones when the
// density is uniform); one component, ghost entries zero. Density must be
// positive wherever the stencil reads, ghosts 2 deep included.
Field schlieren(const Field& q, double k);

// Interior minima of density and EOS pressure.
double min_density(const Field& q);
double min_pressure(const Field& q, double gamma);

} // namespace pifweno
