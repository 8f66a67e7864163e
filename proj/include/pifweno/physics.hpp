// Ideal-MHD state algebra: conserved components, equation of state, flux
// tensor, characteristic speeds, and finite-difference directional flux
// derivatives (Jacobian-vector and Hessian-bilinear products).
#pragma once

#include <array>
#include <cmath>

namespace pifweno {

inline constexpr int ncomp = 8;
enum comp : int { irho = 0, imx = 1, imy = 2, imz = 3, iE = 4, iBx = 5, iBy = 6, iBz = 7 };

using Vec8 = std::array<double, ncomp>;

inline double dot3(const double* a, const double* b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

// p = (gamma-1) (E - |m|^2 / (2 rho) - |B|^2 / 2). Requires rho != 0.
inline double pressure(const Vec8& q, double gamma) {
    const double ke = 0.5 * (q[imx] * q[imx] + q[imy] * q[imy] + q[imz] * q[imz]) / q[irho];
    const double me = 0.5 * (q[iBx] * q[iBx] + q[iBy] * q[iBy] + q[iBz] * q[iBz]);
    return (gamma - 1.0) * (q[iE] - ke - me);
}

// Total energy from primitives (rho, u, p, B).
inline double total_energy(double rho, const double* u, double p, const double* B, double gamma) {
    return p / (gamma - 1.0) + 0.5 * rho * dot3(u, u) + 0.5 * dot3(B, B);
}

// Flux of the conserved state along axis dir (0,1,2).
inline Vec8 flux(const Vec8& q, int dir, double gamma) {
    const double rho = q[irho];
    const double u[3] = {q[imx] / rho, q[imy] / rho, q[imz] / rho};
    const double B[3] = {q[iBx], q[iBy], q[iBz]};
    const double p = pressure(q, gamma);
    const double pt = p + 0.5 * dot3(B, B);
    const double un = u[dir], Bn = B[dir];
    const double uB = dot3(u, B);
    Vec8 f;
    f[irho] = q[imx + dir];
    for (int k = 0; k < 3; ++k)
        f[imx + k] = rho * un * u[k] - Bn * B[k] + (k == dir ? pt : 0.0);
    f[iE] = un * (q[iE] + pt) - Bn * uB;
    for (int k = 0; k < 3; ++k)
        f[iBx + k] = un * B[k] - Bn * u[k];
    return f;
}

// Fast magnetosonic speed along dir. Admissible state required (rho, p > 0).
inline double fast_speed(const Vec8& q, int dir, double gamma) {
    const double rho = q[irho];
    const double p = pressure(q, gamma);
    const double a2 = gamma * p / rho;
    const double b2 = (q[iBx] * q[iBx] + q[iBy] * q[iBy] + q[iBz] * q[iBz]) / rho;
    const double bn2 = q[iBx + dir] * q[iBx + dir] / rho;
    const double s = a2 + b2;
    const double disc = std::sqrt(std::fmax(0.0, s * s - 4.0 * a2 * bn2));
    return std::sqrt(0.5 * (s + disc));
}

// |u_dir| + c_fast: the largest signal speed along dir.
inline double max_signal_speed(const Vec8& q, int dir, double gamma) {
    return std::fabs(q[imx + dir] / q[irho]) + fast_speed(q, dir, gamma);
}

// Directional derivative of the dir-flux in state space:
//   order 1: J_f(q) v      by a central difference along v,
//   order 2: H_f(q)(v, v)  by a second central difference along v.
// Step sizes balance truncation against roundoff; the step shrinks if the
// perturbed state loses positive density.
Vec8 flux_dir_derivative(const Vec8& q, const Vec8& v, int dir, double gamma, int order);

}  // namespace pifweno
