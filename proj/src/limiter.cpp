#include "pifweno/limiter.hpp"

#include <atomic>
#include <climits>
#include <cstdio>
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

// Workers must not throw across thread boundaries; they record the smallest
// offending linear cell index instead and the caller throws afterwards.
void note_bad_cell(std::atomic<long long>& bad, long long idx) {
    long long prev = bad.load(std::memory_order_relaxed);
    while (idx < prev && !bad.compare_exchange_weak(prev, idx, std::memory_order_relaxed)) {
    }
}

void decode_cell(const GridSpec& g, long long idx, int* c) {
    c[0] = static_cast<int>(idx % g.ext(0));
    c[1] = static_cast<int>(idx / g.ext(0) % g.ext(1));
    c[2] = static_cast<int>(idx / g.ext(0) / g.ext(1));
}

} // namespace

Vec8 lf_flux(const Vec8& ql, const Vec8& qr, int dir, double alpha, double gamma) {
    const Vec8 fl = flux(ql, dir, gamma), fr = flux(qr, dir, gamma);
    Vec8 out;
    for (int c = 0; c < ncomp; ++c) out[c] = 0.5 * (fr[c] + fl[c] - alpha * (qr[c] - ql[c]));
    return out;
}

void LimiterWorkspace::ensure(const GridSpec& g) {
    auto need = [&](Field& f, int comps) {
        if (f.comps != comps || f.g.cells() != g.cells() || f.g.m != g.m) f = Field(g, comps);
    };
    for (int d = 0; d < g.ndim; ++d) need(flux_lo[d], ncomp);
    need(q_lf, ncomp);
    need(lam, 2 * g.ndim);
}

void lf_update(const Field& q, const double* alpha, double dt, double gamma,
               const PositivityFloors& floors, int threads, LimiterWorkspace& ws) {
    const GridSpec& g = q.g;
    if (q.comps != ncomp) throw std::invalid_argument("lf_update: q must hold 8 components");
    if (g.ghost < 3) throw std::invalid_argument("lf_update: needs >= 3 ghost layers");
    if (!(dt > 0.0)) throw std::invalid_argument("lf_update: dt must be positive");
    double cfl = 0.0;
    for (int d = 0; d < g.ndim; ++d) cfl += alpha[d] / g.dx(d);
    if (dt * cfl > 0.5 * (1.0 + 1e-9))
        throw std::invalid_argument("lf_update: positivity limiting requires cfl <= 0.5");
    ws.ensure(g);

    for (int d = 0; d < g.ndim; ++d) {
        Field& fd = ws.flux_lo[d];
        const long long s = q.stride(d);
        const double a = alpha[d];
        for_box(g, 2, threads, [&](int i, int j, int k) {
            const double* pl = q.ptr(i, j, k);
            Vec8 ql, qr;
            for (int c = 0; c < ncomp; ++c) {
                ql[c] = pl[c];
                qr[c] = pl[s + c];
            }
            const Vec8 f = lf_flux(ql, qr, d, a, gamma);
            double* o = fd.ptr(i, j, k);
            for (int c = 0; c < ncomp; ++c) o[c] = f[c];
        });
    }

    double w[3] = {0, 0, 0};
    long long s[3] = {0, 0, 0};
    for (int d = 0; d < g.ndim; ++d) {
        w[d] = dt / g.dx(d);
        s[d] = q.stride(d);
    }
    std::atomic<long long> bad{LLONG_MAX};
    for_box(g, 1, threads, [&](int i, int j, int k) {
        const double* pq = q.ptr(i, j, k);
        double* o = ws.q_lf.ptr(i, j, k);
        for (int c = 0; c < ncomp; ++c) {
            double v = pq[c];
            for (int d = 0; d < g.ndim; ++d) {
                const double* f = ws.flux_lo[d].ptr(i, j, k);
                v -= w[d] * (f[c] - f[c - s[d]]);
            }
            o[c] = v;
        }
        Vec8 qv;
        for (int c = 0; c < ncomp; ++c) qv[c] = o[c];
        if (!(qv[irho] > floors.eps_rho) || !(pressure(qv, gamma) > floors.eps_p))
            note_bad_cell(bad, ws.q_lf.cell(i, j, k));
    });
    if (bad.load() != LLONG_MAX) {
        int c[3];
        decode_cell(g, bad.load(), c);
        Vec8 qv;
        for (int x = 0; x < ncomp; ++x) qv[x] = ws.q_lf.at(c[0], c[1], c[2], x);
        char msg[160];
        std::snprintf(msg, sizeof msg,
                      "low-order update lost positivity at cell (%d,%d,%d): rho=%.3e p=%.3e",
                      c[0] - g.ghost, c[1] - g.ghost, c[2] - (g.ndim > 2 ? g.ghost : 0), qv[irho],
                      pressure(qv, gamma));
        throw std::domain_error(msg);
    }
}

void shrink_box(const Vec8& q_lf, const Vec8* C, int nsides, double gamma,
                const PositivityFloors& floors, double* lambda) {
    if (nsides < 2 || nsides > 6 || nsides % 2 != 0)
        throw std::invalid_argument("shrink_box: nsides must be 2, 4, or 6");
    if (!(q_lf[irho] > floors.eps_rho) || !(pressure(q_lf, gamma) > floors.eps_p))
        throw std::invalid_argument("shrink_box: base state below the floors");

    // density box: density is affine in theta, so capping the total negative
    // mass contribution keeps it above the floor everywhere in the box
    double neg = 0.0;
    for (int s = 0; s < nsides; ++s)
        if (C[s][irho] < 0.0) neg -= C[s][irho];
    double lrho[6];
    for (int s = 0; s < nsides; ++s)
        lrho[s] =
            C[s][irho] < 0.0 ? std::fmin(1.0, (q_lf[irho] - floors.eps_rho) / (1e-12 + neg)) : 1.0;

    // pressure: shrink each violating vertex of the density box toward the
    // base state (pressure is concave along the ray and exceeds the floor at
    // the base), then keep the componentwise-minimal scale per side
    double rmin[6];
    for (int s = 0; s < nsides; ++s) rmin[s] = 1.0;
    for (int mask = 1; mask < (1 << nsides); ++mask) {
        Vec8 qa = q_lf;
        for (int s = 0; s < nsides; ++s)
            if (mask >> s & 1)
                for (int c = 0; c < ncomp; ++c) qa[c] += lrho[s] * C[s][c];
        double r = 1.0;
        if (!(pressure(qa, gamma) >= floors.eps_p)) {
            double lo = 0.0, hi = 1.0;
            for (int it = 0; it < 10; ++it) {
                const double mid = 0.5 * (lo + hi);
                Vec8 qm;
                for (int c = 0; c < ncomp; ++c) qm[c] = q_lf[c] + mid * (qa[c] - q_lf[c]);
                if (pressure(qm, gamma) >= floors.eps_p)
                    lo = mid;
                else
                    hi = mid;
            }
            r = lo; // rounding down keeps the admissible endpoint
        }
        for (int s = 0; s < nsides; ++s)
            if (mask >> s & 1) rmin[s] = std::fmin(rmin[s], r);
    }
    for (int s = 0; s < nsides; ++s) lambda[s] = lrho[s] * rmin[s];
}

void apply_positivity_limiter(const Field& q, double dt, double gamma,
                              const PositivityFloors& floors, int threads,
                              Field* fhat, LimiterWorkspace& ws) {
    const GridSpec& g = q.g;
    if (q.comps != ncomp)
        throw std::invalid_argument("apply_positivity_limiter: q must hold 8 components");
    if (ws.q_lf.comps != ncomp || ws.q_lf.g.cells() != g.cells() || ws.q_lf.g.m != g.m)
        throw std::invalid_argument("apply_positivity_limiter: lf_update must run first");
    for (int d = 0; d < g.ndim; ++d)
        if (fhat[d].comps != ncomp || fhat[d].g.cells() != g.cells())
            throw std::invalid_argument("apply_positivity_limiter: flux field mismatch");

    const int nsides = 2 * g.ndim;
    double w[3] = {0, 0, 0};
    long long s[3] = {0, 0, 0};
    for (int d = 0; d < g.ndim; ++d) {
        w[d] = dt / g.dx(d);
        s[d] = q.stride(d);
    }

    std::atomic<long long> bad{LLONG_MAX};
    for_box(g, 1, threads, [&](int i, int j, int k) {
        Vec8 base;
        const double* pq = ws.q_lf.ptr(i, j, k);
        for (int c = 0; c < ncomp; ++c) base[c] = pq[c];
        double* lam = ws.lam.ptr(i, j, k);
        if (!(base[irho] > floors.eps_rho) || !(pressure(base, gamma) > floors.eps_p)) {
            note_bad_cell(bad, ws.q_lf.cell(i, j, k));
            for (int sd = 0; sd < nsides; ++sd) lam[sd] = 0.0;
            return;
        }
        Vec8 C[6];
        for (int d = 0; d < g.ndim; ++d) {
            const double* fh = fhat[d].ptr(i, j, k);
            const double* fl = ws.flux_lo[d].ptr(i, j, k);
            for (int c = 0; c < ncomp; ++c) {
                C[2 * d][c] = w[d] * (fh[c - s[d]] - fl[c - s[d]]);
                C[2 * d + 1][c] = -w[d] * (fh[c] - fl[c]);
            }
        }
        shrink_box(base, C, nsides, gamma, floors, lam);
    });
    if (bad.load() != LLONG_MAX) {
        int c[3];
        decode_cell(g, bad.load(), c);
        char msg[160];
        std::snprintf(msg, sizeof msg,
                      "apply_positivity_limiter: stale low-order state at cell (%d,%d,%d)",
                      c[0] - g.ghost, c[1] - g.ghost, c[2] - (g.ndim > 2 ? g.ghost : 0));
        throw std::invalid_argument(msg);
    }

    // one scalar per interface: the minimum of the two adjacent cells' facing
    // bounds; interfaces that keep theta == 1 stay bitwise untouched
    for (int d = 0; d < g.ndim; ++d) {
        int lo[3], hi[3];
        for (int dd = 0; dd < 3; ++dd) {
            lo[dd] = dd < g.ndim ? g.ghost : 0;
            hi[dd] = dd < g.ndim ? g.ghost + g.m[dd] : 1;
        }
        lo[d] -= 1; // m + 1 interfaces bound m cells along the own axis
        const long long nkj = static_cast<long long>(hi[2] - lo[2]) * (hi[1] - lo[1]);
        parallel_for(nkj, threads, [&](long long b, long long e) {
            for (long long t = b; t < e; ++t) {
                const int k = lo[2] + static_cast<int>(t / (hi[1] - lo[1]));
                const int j = lo[1] + static_cast<int>(t % (hi[1] - lo[1]));
                for (int i = lo[0]; i < hi[0]; ++i) {
                    const double* ln = ws.lam.ptr(i, j, k);
                    const double theta = std::fmin(ln[2 * d + 1], (ln + ws.lam.stride(d))[2 * d]);
                    if (theta == 1.0) continue;
                    double* fh = fhat[d].ptr(i, j, k);
                    const double* fl = ws.flux_lo[d].ptr(i, j, k);
                    for (int c = 0; c < ncomp; ++c) fh[c] = theta * (fh[c] - fl[c]) + fl[c];
                }
            }
        });
    }
}

} // namespace pifweno
