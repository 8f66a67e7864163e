#include "pifweno/reconstruct.hpp"

#include <stdexcept>

#include "pifweno/eigensystem.hpp"
#include "pifweno/parallel.hpp"
#include "pifweno/weno.hpp"

namespace pifweno {

void reconstruct_interface_fluxes(const Field& q, const Field& favg, int dir, double alpha,
                                  double gamma, int threads, Field& fhat) {
    const GridSpec& g = q.g;
    if (dir < 0 || dir >= g.ndim)
        throw std::invalid_argument("reconstruct_interface_fluxes: bad direction");
    if (q.comps != ncomp || favg.comps != ncomp || fhat.comps != ncomp)
        throw std::invalid_argument("reconstruct_interface_fluxes: fields need 8 components");
    if (g.ghost < 5)
        throw std::invalid_argument("reconstruct_interface_fluxes: needs >= 5 ghost layers");

    const int gh = g.ghost;
    const int m = g.m[dir];
    const long long sd = q.stride(dir);

    int t1 = -1, t2 = -1;
    for (int d = 0; d < 3; ++d) {
        if (d == dir) continue;
        (t1 < 0 ? t1 : t2) = d;
    }
    // one transverse ghost ring so the positivity limiter can evaluate its
    // low-order stencil on boundary-adjacent cells
    auto t_lo = [&](int d) { return d < g.ndim ? gh - 1 : 0; };
    auto t_hi = [&](int d) { return d < g.ndim ? gh + g.m[d] + 1 : 1; };
    const int l1 = t_lo(t1), h1 = t_hi(t1);
    const int l2 = t_lo(t2), h2 = t_hi(t2);
    const long long nlines = static_cast<long long>(h1 - l1) * (h2 - l2);

    parallel_for(nlines, threads, [&](long long lb, long long le) {
        for (long long li = lb; li < le; ++li) {
            int idx[3];
            idx[dir] = gh - 2;
            idx[t1] = l1 + static_cast<int>(li % (h1 - l1));
            idx[t2] = l2 + static_cast<int>(li / (h1 - l1));
            const double* qp = q.ptr(idx[0], idx[1], idx[2]);
            const double* fp = favg.ptr(idx[0], idx[1], idx[2]);
            double* op = fhat.ptr(idx[0], idx[1], idx[2]);

            for (int i = -2; i <= m; ++i, qp += sd, fp += sd, op += sd) {
                Vec8 qa, qb;
                for (int c = 0; c < ncomp; ++c) {
                    qa[c] = qp[c];
                    qb[c] = qp[sd + c];
                }
                const EigenSystem es = eigensystem(qa, qb, dir, gamma);

                // Characteristic amplitudes of the split fluxes over the
                // six-cell stencil: wp biased left of the interface, wm
                // mirrored so weno5 sees its stencil right-to-left.
                double wp[5][ncomp], wm[5][ncomp];
                for (int s = 0; s < 5; ++s) {
                    const double* qj = qp + (s - 2) * sd;
                    const double* fj = fp + (s - 2) * sd;
                    const double* qk = qp + (3 - s) * sd;
                    const double* fk = fp + (3 - s) * sd;
                    for (int w = 0; w < ncomp; ++w) {
                        double sp = 0.0, sm = 0.0;
                        for (int c = 0; c < ncomp; ++c) {
                            sp += es.L[w][c] * (fj[c] + alpha * qj[c]);
                            sm += es.L[w][c] * (fk[c] - alpha * qk[c]);
                        }
                        wp[s][w] = 0.5 * sp;
                        wm[s][w] = 0.5 * sm;
                    }
                }
                for (int c = 0; c < ncomp; ++c) op[c] = 0.0;
                for (int w = 0; w < ncomp; ++w) {
                    const double hw = weno5(wp[0][w], wp[1][w], wp[2][w], wp[3][w], wp[4][w]) +
                                      weno5(wm[0][w], wm[1][w], wm[2][w], wm[3][w], wm[4][w]);
                    for (int c = 0; c < ncomp; ++c) op[c] += es.R[c][w] * hw;
                }
            }
        }
    });
}

} // namespace pifweno
