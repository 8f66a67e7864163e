#include "pifweno/eigensystem.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pifweno {

namespace {

// Dense LU with partial pivoting on an n x n row-major matrix.
// Returns false when a pivot falls below tol * (largest initial entry).
bool lu_factor(int n, double* A, int* piv, double tol) {
    double scale = 0;
    for (int i = 0; i < n * n; ++i) scale = std::fmax(scale, std::fabs(A[i]));
    if (scale == 0) return false;
    for (int k = 0; k < n; ++k) {
        int p = k;
        for (int i = k + 1; i < n; ++i)
            if (std::fabs(A[i * n + k]) > std::fabs(A[p * n + k])) p = i;
        if (std::fabs(A[p * n + k]) <= tol * scale) return false;
        piv[k] = p;
        if (p != k)
            for (int j = 0; j < n; ++j) std::swap(A[k * n + j], A[p * n + j]);
        for (int i = k + 1; i < n; ++i) {
            A[i * n + k] /= A[k * n + k];
            const double lik = A[i * n + k];
            for (int j = k + 1; j < n; ++j) A[i * n + j] -= lik * A[k * n + j];
        }
    }
    return true;
}

void lu_solve(int n, const double* A, const int* piv, double* b) {
    // Row interchanges must all land before the triangular solves: the
    // factorization swaps whole rows, so stored multipliers sit in final
    // row order, not in the order the eliminations happened.
    for (int k = 0; k < n; ++k)
        if (piv[k] != k) std::swap(b[k], b[piv[k]]);
    for (int k = 0; k < n; ++k)
        for (int i = k + 1; i < n; ++i) b[i] -= A[i * n + k] * b[k];
    for (int i = n - 1; i >= 0; --i) {
        for (int j = i + 1; j < n; ++j) b[i] -= A[i * n + j] * b[j];
        b[i] /= A[i * n + i];
    }
}

}  // namespace

EigenSystem eigensystem_at(const Vec8& q, int dir, double gamma) {
    // Local frame: components permuted so the sweep direction is axis n and
    // (n, t1, t2) stays right-handed. perm[local] = global.
    int perm[ncomp];
    perm[0] = irho;
    perm[4] = iE;
    for (int l = 0; l < 3; ++l) {
        perm[1 + l] = imx + (dir + l) % 3;
        perm[5 + l] = iBx + (dir + l) % 3;
    }

    const double rho = q[irho];
    if (!(rho > 0.0)) throw std::domain_error("eigensystem: non-positive density");
    const double u = q[perm[1]] / rho, v = q[perm[2]] / rho, w = q[perm[3]] / rho;
    const double bn = q[perm[5]], bt1 = q[perm[6]], bt2 = q[perm[7]];
    const double p = pressure(q, gamma);
    if (!(p > 0.0)) throw std::domain_error("eigensystem: non-positive pressure");

    const double a2 = gamma * p / rho;
    const double a = std::sqrt(a2);
    const double can2 = bn * bn / rho;
    const double can = std::sqrt(can2);
    const double btot2 = (bn * bn + bt1 * bt1 + bt2 * bt2) / rho;
    const double ssum = a2 + btot2;
    const double disc = std::sqrt(std::fmax(0.0, ssum * ssum - 4.0 * a2 * can2));
    const double cf2 = 0.5 * (ssum + disc), cs2 = std::fmax(0.0, 0.5 * (ssum - disc));
    const double cf = std::sqrt(cf2), cs = std::sqrt(cs2);

    // Normalised eigenvector scalings; degenerate limits pinned so every
    // vector stays O(1).
    const double bperp = std::hypot(bt1, bt2);
    double by, bz;
    if (bperp > 1e-12 * (1.0 + std::sqrt(rho * btot2))) {
        by = bt1 / bperp;
        bz = bt2 / bperp;
    } else {
        by = 1.0;
        bz = 0.0;
    }
    double alf, als;
    const double dfs = cf2 - cs2;
    if (dfs > 1e-14 * ssum + 1e-300) {
        alf = std::sqrt(std::clamp((a2 - cs2) / dfs, 0.0, 1.0));
        als = std::sqrt(std::clamp((cf2 - a2) / dfs, 0.0, 1.0));
    } else {
        alf = 1.0;
        als = 0.0;
    }
    const double sgn = bn >= 0.0 ? 1.0 : -1.0;
    const double sqr = std::sqrt(rho);

    // Primitive right eigenvectors, local ordering
    // (rho, un, ut1, ut2, p, Bn, Bt1, Bt2); column k is wave k.
    double Rp[ncomp][ncomp] = {};
    double lam[ncomp];
    int col = 0;
    for (double sf : {-1.0, 1.0}) {  // fast pair
        lam[col] = u + sf * cf;
        Rp[0][col] = rho * alf;
        Rp[1][col] = sf * alf * cf;
        Rp[2][col] = -sf * als * cs * by * sgn;
        Rp[3][col] = -sf * als * cs * bz * sgn;
        Rp[4][col] = rho * a2 * alf;
        Rp[6][col] = als * a * sqr * by;
        Rp[7][col] = als * a * sqr * bz;
        ++col;
    }
    for (double sa : {-1.0, 1.0}) {  // Alfven pair
        lam[col] = u + sa * can;
        Rp[2][col] = -bz;
        Rp[3][col] = by;
        Rp[6][col] = sa * sgn * sqr * bz;
        Rp[7][col] = -sa * sgn * sqr * by;
        ++col;
    }
    for (double ss : {-1.0, 1.0}) {  // slow pair
        lam[col] = u + ss * cs;
        Rp[0][col] = rho * als;
        Rp[1][col] = ss * als * cs;
        Rp[2][col] = ss * alf * cf * by * sgn;
        Rp[3][col] = ss * alf * cf * bz * sgn;
        Rp[4][col] = rho * a2 * als;
        Rp[6][col] = -alf * a * sqr * by;
        Rp[7][col] = -alf * a * sqr * bz;
        ++col;
    }
    lam[col] = u;  // entropy wave
    Rp[0][col] = 1.0;
    ++col;

    // Zero-speed wave: the Bn flux row vanishes identically, so lambda = 0
    // with an eigenvector obtained from the full primitive quasilinear
    // matrix by pinning dBn = 1. M7 x = -(Bn column), x over the other 7.
    lam[col] = 0.0;
    const int zero_col = col;
    bool zero_from_m7 = false;
    {
        const double ub = u * bn + v * bt1 + w * bt2;
        // Rows/cols ordered (rho, un, ut1, ut2, p, Bt1, Bt2).
        double M7[49] = {
            u, rho, 0,   0,   0,         0,        0,
            0, u,   0,   0,   1.0 / rho, bt1 / rho, bt2 / rho,
            0, 0,   u,   0,   0,         -bn / rho, 0,
            0, 0,   0,   u,   0,         0,        -bn / rho,
            0, gamma * p, 0, 0, u,       0,        0,
            0, bt1, -bn, 0,   0,         u,        0,
            0, bt2, 0,   -bn, 0,         0,        u,
        };
        double rhs[7] = {0, -(-bn / rho), -(-bt1 / rho), -(-bt2 / rho),
                         -((gamma - 1.0) * ub), -(-v), -(-w)};
        int piv[7];
        double M7c[49];
        std::copy(M7, M7 + 49, M7c);
        bool ok = lu_factor(7, M7c, piv, 1e-10);
        if (ok) {
            lu_solve(7, M7c, piv, rhs);
            double mx = 0;
            for (double x : rhs) mx = std::fmax(mx, std::fabs(x));
            // A huge column means lambda = 0 nearly coincides with another
            // wave (M7 near-singular); its direction is then meaningless and
            // would make R ill-conditioned.
            ok = mx < 1e3 * (1.0 + std::fabs(u) + a + std::sqrt(btot2));
        }
        if (ok) {
            Rp[0][col] = rhs[0];
            Rp[1][col] = rhs[1];
            Rp[2][col] = rhs[2];
            Rp[3][col] = rhs[3];
            Rp[4][col] = rhs[4];
            Rp[6][col] = rhs[5];
            Rp[7][col] = rhs[6];
        }
        zero_from_m7 = ok;
        // Near-degenerate states (e.g. Bn ~ 0 with transverse field, where
        // the Jacobian is defective) fall back to a pure dBn perturbation,
        // which keeps R invertible and L*R = I exact.
        Rp[5][col] = 1.0;
    }

    // Conservative transform T = dq/dw in the local ordering, applied to
    // every primitive column.
    double Rc[ncomp][ncomp];
    const double ke = 0.5 * (u * u + v * v + w * w);
    for (int kwave = 0; kwave < ncomp; ++kwave) {
        const double dr = Rp[0][kwave], du = Rp[1][kwave], dv = Rp[2][kwave], dw = Rp[3][kwave];
        const double dp = Rp[4][kwave], dbn = Rp[5][kwave], db1 = Rp[6][kwave], db2 = Rp[7][kwave];
        Rc[0][kwave] = dr;
        Rc[1][kwave] = u * dr + rho * du;
        Rc[2][kwave] = v * dr + rho * dv;
        Rc[3][kwave] = w * dr + rho * dw;
        Rc[4][kwave] = ke * dr + rho * (u * du + v * dv + w * dw) + dp / (gamma - 1.0) +
                       bn * dbn + bt1 * db1 + bt2 * db2;
        Rc[5][kwave] = dbn;
        Rc[6][kwave] = db1;
        Rc[7][kwave] = db2;
    }

    // Sort waves by speed ascending.
    int order[ncomp] = {0, 1, 2, 3, 4, 5, 6, 7};
    std::stable_sort(order, order + ncomp, [&](int x, int y) { return lam[x] < lam[y]; });

    EigenSystem es;
    for (int kk = 0; kk < ncomp; ++kk) {
        es.speed[kk] = lam[order[kk]];
        for (int r = 0; r < ncomp; ++r) es.R[perm[r]][kk] = Rc[r][order[kk]];
    }

    // Left eigenvectors: invert R (in local row order, then permute rows).
    double A[ncomp * ncomp];
    for (int r = 0; r < ncomp; ++r)
        for (int kk = 0; kk < ncomp; ++kk) A[r * ncomp + kk] = Rc[r][order[kk]];
    int piv[ncomp];
    bool inv = lu_factor(ncomp, A, piv, 1e-14);
    if (!inv && zero_from_m7) {
        // The M7-based zero-wave column passed its own guards but still left
        // R (near-)singular; rebuild it as a pure dBn perturbation, which can
        // never be spanned by the other waves (their dBn entries are zero).
        int kz = 0;
        while (order[kz] != zero_col) ++kz;
        for (int r = 0; r < ncomp; ++r) es.R[perm[r]][kz] = 0.0;
        es.R[perm[4]][kz] = bn;  // energy carries bn * dbn
        es.R[perm[5]][kz] = 1.0;
        for (int r = 0; r < ncomp; ++r)
            for (int kk = 0; kk < ncomp; ++kk) A[r * ncomp + kk] = es.R[perm[r]][kk];
        inv = lu_factor(ncomp, A, piv, 1e-14);
    }
    if (!inv) throw std::domain_error("eigensystem: singular eigenvector matrix");
    for (int r = 0; r < ncomp; ++r) {
        double e[ncomp] = {};
        e[r] = 1.0;
        lu_solve(ncomp, A, piv, e);
        // e is column r of R^-1, i.e. L[k][local row r] = e[k].
        for (int kk = 0; kk < ncomp; ++kk) es.L[kk][perm[r]] = e[kk];
    }
    return es;
}

}  // namespace pifweno
