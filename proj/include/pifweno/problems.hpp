// Test-problem catalog: initial conditions for the conserved state and the
// magnetic potential, per-problem boundary policies (including potential
// jumps across periodic wraps), and exact solutions where available.
#pragma once

#include "pifweno/grid.hpp"
#include "pifweno/physics.hpp"

#include <string>
#include <vector>

namespace pifweno {

struct ProblemSpec {
    std::string id;
    int ndim = 2;
    std::array<double, max_dim> lo{0, 0, 0};
    std::array<double, max_dim> hi{1, 1, 1};
    BoundarySpec bc_q;            // conserved state
    BoundarySpec bc_a;            // magnetic potential (may carry wrap jumps)
    double gamma = 5.0 / 3.0;
    bool ct_required = true;      // potential transport needed for clean runs
    bool pp_required = false;     // positivity limiter needed to finish
    bool has_exact = false;       // exact_solution available at any time
    double phi = 0.0;             // rotation angles, arctan(1/2) where used
    double theta = 0.0;
    double tfinal = 1.0;          // final time used by the reference runs
    std::array<int, max_dim> default_mesh{64, 64, 1};

    int acomps() const { return ndim == 3 ? 3 : 1; }
};

const std::vector<ProblemSpec>& problem_catalog();

// Throws std::invalid_argument on an unknown id.
const ProblemSpec& find_problem(const std::string& id);

// Grid over the problem's domain. mesh empty -> default_mesh; otherwise one
// interior count per active axis.
GridSpec problem_grid(const ProblemSpec& spec, const std::vector<int>& mesh, int ghost);

// Samples the initial condition at interior cell centers and fills ghosts via
// the problem's boundary policies. q gets 8 components, A gets acomps().
// Throws std::invalid_argument when the grid does not match the problem's
// domain or dimension.
void initialize(const ProblemSpec& spec, const GridSpec& g, Field& q, Field& A);

// Exact state and potential at time t (interior cells, ghosts filled like
// initialize). Only for specs with has_exact; throws otherwise.
void exact_solution(const ProblemSpec& spec, const GridSpec& g, double t, Field& q, Field& A);

} // namespace pifweno
