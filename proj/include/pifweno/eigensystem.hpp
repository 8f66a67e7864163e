// Characteristic decomposition of the directional ideal-MHD flux Jacobian.
// Eight waves: fast/Alfven/slow pairs, the entropy wave, and the zero-speed
// wave carried by the dir-component of B (whose flux vanishes identically).
// R columns are right eigenvectors, L rows are left eigenvectors, L*R = I.
#pragma once

#include "pifweno/physics.hpp"

namespace pifweno {

struct EigenSystem {
    std::array<double, ncomp> speed{};                    // sorted ascending
    std::array<std::array<double, ncomp>, ncomp> R{};     // R[row][wave]
    std::array<std::array<double, ncomp>, ncomp> L{};     // L[wave][row]
};

// Decomposition at the state q. Requires rho > 0 and p > 0.
EigenSystem eigensystem_at(const Vec8& q, int dir, double gamma);

// Decomposition at the arithmetic mean of two admissible states.
inline EigenSystem eigensystem(const Vec8& qa, const Vec8& qb, int dir, double gamma) {
    Vec8 qm;
    for (int c = 0; c < ncomp; ++c) qm[c] = 0.5 * (qa[c] + qb[c]);
    return eigensystem_at(qm, dir, gamma);
}

inline void to_characteristic(const EigenSystem& es, const double* x, double* w) {
    for (int k = 0; k < ncomp; ++k) {
        double s = 0;
        for (int c = 0; c < ncomp; ++c) s += es.L[k][c] * x[c];
        w[k] = s;
    }
}

inline void from_characteristic(const EigenSystem& es, const double* w, double* x) {
    for (int c = 0; c < ncomp; ++c) {
        double s = 0;
        for (int k = 0; k < ncomp; ++k) s += es.R[c][k] * w[k];
        x[c] = s;
    }
}

}  // namespace pifweno
