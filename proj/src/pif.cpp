#include "pifweno/pif.hpp"

#include <stdexcept>

#include "pifweno/parallel.hpp"

namespace pifweno {

namespace {

// Iterate cells of the interior box widened by `margin` along active axes,
// parallelized over the outer two indices. fn(i, j, k) gets ghosted indices.
template <typename F>
void for_box(const GridSpec& g, int margin, int threads, F&& fn) {
    int lo[3], hi[3];
    for (int d = 0; d < 3; ++d) {
        lo[d] = d < g.ndim ? g.ghost - margin : 0;
        hi[d] = d < g.ndim ? g.ghost + g.m[d] + margin : 1;
    }
    const long long nkj = static_cast<long long>(hi[2] - lo[2]) * (hi[1] - lo[1]);
    parallel_for(nkj, threads, [&](long long b, long long e) {
        for (long long t = b; t < e; ++t) {
            const int k = lo[2] + static_cast<int>(t / (hi[1] - lo[1]));
            const int j = lo[1] + static_cast<int>(t % (hi[1] - lo[1]));
            for (int i = lo[0]; i < hi[0]; ++i) fn(i, j, k);
        }
    });
}

} // namespace

void PifWorkspace::ensure(const GridSpec& g) {
    auto need = [&](Field& f) {
        if (f.comps != ncomp || f.g.cells() != g.cells() || f.g.m != g.m) f = Field(g, ncomp);
    };
    for (int d = 0; d < 3; ++d) {
        need(pflux[d]);
        need(ft[d]);
        need(favg[d]);
    }
    need(qt);
}

void time_averaged_fluxes(const Field& q, double dt, double gamma, const BoundarySpec& bc,
                          int threads, PifWorkspace& ws) {
    const GridSpec& g = q.g;
    if (g.ghost < 6) throw std::invalid_argument("time_averaged_fluxes: needs >= 6 ghost layers");
    ws.ensure(g);

    double inv12dx[3] = {0, 0, 0};
    long long sd[3] = {0, 0, 0};
    for (int d = 0; d < g.ndim; ++d) {
        inv12dx[d] = 1.0 / (12.0 * g.dx(d));
        sd[d] = q.stride(d);
    }

    // physical fluxes everywhere (ghosts included)
    for (int d = 0; d < g.ndim; ++d) {
        Field& fd = ws.pflux[d];
        const long long n = g.cells();
        parallel_for(n, threads, [&](long long b, long long e) {
            for (long long c = b; c < e; ++c) {
                Vec8 qi;
                for (int x = 0; x < ncomp; ++x) qi[x] = q.v[c * ncomp + x];
                const Vec8 f = flux(qi, d, gamma);
                for (int x = 0; x < ncomp; ++x) fd.v[c * ncomp + x] = f[x];
            }
        });
    }

    // q_t = -div(f) on the margin-4 box
    for_box(g, 4, threads, [&](int i, int j, int k) {
        double* out = ws.qt.ptr(i, j, k);
        for (int c = 0; c < ncomp; ++c) out[c] = 0.0;
        for (int d = 0; d < g.ndim; ++d) {
            const double* p = ws.pflux[d].ptr(i, j, k);
            const long long s = sd[d];
            for (int c = 0; c < ncomp; ++c)
                out[c] -= (p[c - 2 * s] - 8.0 * p[c - s] + 8.0 * p[c + s] - p[c + 2 * s]) *
                          inv12dx[d];
        }
    });

    // f_t = J q_t on the margin-4 box
    for_box(g, 4, threads, [&](int i, int j, int k) {
        const double* qp = q.ptr(i, j, k);
        const double* tp = ws.qt.ptr(i, j, k);
        Vec8 qi, ti;
        for (int c = 0; c < ncomp; ++c) {
            qi[c] = qp[c];
            ti[c] = tp[c];
        }
        for (int d = 0; d < g.ndim; ++d) {
            const Vec8 fd = flux_dir_derivative(qi, ti, d, gamma, 1);
            double* out = ws.ft[d].ptr(i, j, k);
            for (int c = 0; c < ncomp; ++c) out[c] = fd[c];
        }
    });

    // F = f + dt/2 f_t + dt^2/6 (H(q_t,q_t) + J q_tt) on the margin-2 box
    for_box(g, 2, threads, [&](int i, int j, int k) {
        const double* qp = q.ptr(i, j, k);
        const double* tp = ws.qt.ptr(i, j, k);
        Vec8 qi, ti, qtt;
        for (int c = 0; c < ncomp; ++c) {
            qi[c] = qp[c];
            ti[c] = tp[c];
            qtt[c] = 0.0;
        }
        for (int d = 0; d < g.ndim; ++d) {
            const double* p = ws.ft[d].ptr(i, j, k);
            const long long s = sd[d];
            for (int c = 0; c < ncomp; ++c)
                qtt[c] -= (p[c - 2 * s] - 8.0 * p[c - s] + 8.0 * p[c + s] - p[c + 2 * s]) *
                          inv12dx[d];
        }
        for (int d = 0; d < g.ndim; ++d) {
            const Vec8 hess = flux_dir_derivative(qi, ti, d, gamma, 2);
            const Vec8 jtt = flux_dir_derivative(qi, qtt, d, gamma, 1);
            const double* f0 = ws.pflux[d].ptr(i, j, k);
            const double* f1 = ws.ft[d].ptr(i, j, k);
            double* out = ws.favg[d].ptr(i, j, k);
            for (int c = 0; c < ncomp; ++c)
                out[c] = f0[c] + 0.5 * dt * f1[c] +
                         (dt * dt / 6.0) * (hess[c] + jtt[c]);
        }
    });

    for (int d = 0; d < g.ndim; ++d) fill_boundary(ws.favg[d], bc, 2);
}

void conservative_update(Field& q, const Field* fhat, double dt, int threads) {
    const GridSpec& g = q.g;
    double r[3];
    long long sd[3];
    for (int d = 0; d < g.ndim; ++d) {
        r[d] = dt / g.dx(d);
        sd[d] = q.stride(d);
    }
    for_box(g, 0, threads, [&](int i, int j, int k) {
        double* out = q.ptr(i, j, k);
        for (int d = 0; d < g.ndim; ++d) {
            const double* fh = fhat[d].ptr(i, j, k);
            const long long s = sd[d];
            for (int c = 0; c < ncomp; ++c) out[c] -= r[d] * (fh[c] - fh[c - s]);
        }
    });
}

double compute_dt(const Field& q, double gamma, double cfl, double* alpha) {
    const GridSpec& g = q.g;
    for (int d = 0; d < 3; ++d) alpha[d] = 0.0;
    for (int k = (g.ndim > 2 ? g.ghost : 0); k < (g.ndim > 2 ? g.ghost + g.m[2] : 1); ++k)
        for (int j = (g.ndim > 1 ? g.ghost : 0); j < (g.ndim > 1 ? g.ghost + g.m[1] : 1); ++j)
            for (int i = g.ghost; i < g.ghost + g.m[0]; ++i) {
                const double* p = q.ptr(i, j, k);
                Vec8 qi;
                for (int c = 0; c < ncomp; ++c) qi[c] = p[c];
                for (int d = 0; d < g.ndim; ++d)
                    alpha[d] = std::fmax(alpha[d], max_signal_speed(qi, d, gamma));
            }
    double s = 0.0;
    for (int d = 0; d < g.ndim; ++d) s += alpha[d] / g.dx(d);
    if (s <= 0.0) throw std::domain_error("compute_dt: no positive signal speed");
    return cfl / s;
}

} // namespace pifweno
