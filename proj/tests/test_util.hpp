// Shared helpers for the unit tests: deterministic random admissible MHD
// states and small dense linear algebra for oracles.
#pragma once

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "pifweno/physics.hpp"

namespace testutil {

using pifweno::Vec8;

inline std::mt19937_64 rng(unsigned seed = 20240817u) { return std::mt19937_64(seed); }

// Random admissible conserved state: rho in [0.1, 10], |u| <= 3, p in
// [0.01, 50], |B| <= 3.
inline Vec8 random_state(std::mt19937_64& g, double gamma) {
    std::uniform_real_distribution<double> ur(0.0, 1.0);
    const double rho = 0.1 + 9.9 * ur(g);
    double u[3], B[3];
    for (int k = 0; k < 3; ++k) u[k] = -3.0 + 6.0 * ur(g);
    for (int k = 0; k < 3; ++k) B[k] = -3.0 + 6.0 * ur(g);
    const double p = 0.01 + 49.99 * ur(g);
    Vec8 q;
    q[pifweno::irho] = rho;
    for (int k = 0; k < 3; ++k) q[pifweno::imx + k] = rho * u[k];
    q[pifweno::iE] = pifweno::total_energy(rho, u, p, B, gamma);
    for (int k = 0; k < 3; ++k) q[pifweno::iBx + k] = B[k];
    return q;
}

// Solves the n x n system A x = b by Gaussian elimination with partial
// pivoting (A row-major, both destroyed). Oracle-quality, no tolerance games.
inline void dense_solve(int n, std::vector<double>& A, std::vector<double>& b) {
    for (int k = 0; k < n; ++k) {
        int p = k;
        for (int i = k + 1; i < n; ++i)
            if (std::fabs(A[i * n + k]) > std::fabs(A[p * n + k])) p = i;
        for (int j = 0; j < n; ++j) std::swap(A[k * n + j], A[p * n + j]);
        std::swap(b[k], b[p]);
        for (int i = k + 1; i < n; ++i) {
            const double f = A[i * n + k] / A[k * n + k];
            for (int j = k; j < n; ++j) A[i * n + j] -= f * A[k * n + j];
            b[i] -= f * b[k];
        }
    }
    for (int i = n - 1; i >= 0; --i) {
        for (int j = i + 1; j < n; ++j) b[i] -= A[i * n + j] * b[j];
        b[i] /= A[i * n + i];
    }
}

}  // namespace testutil
