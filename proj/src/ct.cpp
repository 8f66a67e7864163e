#include "pifweno/ct.hpp"

#include <cmath>
#include <stdexcept>

#include "pifweno/parallel.hpp"
#include "pifweno/weno.hpp"

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

void ensure_field(Field& f, const GridSpec& g, int comps) {
    if (f.comps != comps || f.g.cells() != g.cells() || f.g.m != g.m) f = Field(g, comps);
}

void cross(const double* x, const double* y, double* o) {
    o[0] = x[1] * y[2] - x[2] * y[1];
    o[1] = x[2] * y[0] - x[0] * y[2];
    o[2] = x[0] * y[1] - x[1] * y[0];
}

} // namespace

double smoothness_gamma(double d_minus, double d_plus, double dx, double eps_smooth) {
    const double sm = dx * d_minus * (dx * d_minus);
    const double sp = dx * d_plus * (dx * d_plus);
    const double am = 1.0 / ((eps_smooth + sm) * (eps_smooth + sm));
    const double ap = 1.0 / ((eps_smooth + sp) * (eps_smooth + sp));
    return std::fabs(am / (am + ap) - 0.5);
}

void CTWorkspace::ensure(const GridSpec& g, int acomps) {
    ensure_field(uvel, g, 3);
    ensure_field(qt, g, ncomp);
    ensure_field(ut, g, 3);
    ensure_field(utt, g, 3);
    for (int d = 0; d < g.ndim; ++d) {
        ensure_field(pflux[d], g, ncomp);
        ensure_field(ft[d], g, ncomp);
    }
    ensure_field(t1, g, acomps);
    if (acomps == 3) {
        ensure_field(curl, g, 3);
        ensure_field(curl_t, g, 3);
    }
    ensure_field(d1, g, acomps);
    ensure_field(d2, g, acomps);
    ensure_field(d3, g, acomps);
}

void potential_time_derivatives(const Field& q, const Field& A, double gamma,
                                const ResistivityParams& res, double dt, int threads,
                                Field& dA1, Field& dA2, Field& dA3, CTWorkspace& ws) {
    const GridSpec& g = q.g;
    if (g.ndim < 2) throw std::invalid_argument("potential: needs 2 or 3 active axes");
    const int ac = g.ndim == 2 ? 1 : 3;
    if (A.comps != ac || A.g.cells() != g.cells() || A.g.m != g.m)
        throw std::invalid_argument("potential: A does not match the state grid");
    if (q.comps != ncomp) throw std::invalid_argument("potential: q must hold 8 components");
    if (g.ghost < 3) throw std::invalid_argument("potential: needs >= 3 ghost layers");
    if (ac == 3 && res.nu > 0.0 && !(dt > 0.0))
        throw std::invalid_argument("potential: resistivity needs dt > 0");
    ws.ensure(g, ac);
    ensure_field(dA1, g, ac);
    ensure_field(dA2, g, ac);
    ensure_field(dA3, g, ac);

    long long s8[3] = {0, 0, 0}, sa[3] = {0, 0, 0};
    double inv2dx[3] = {0, 0, 0};
    for (int d = 0; d < g.ndim; ++d) {
        s8[d] = q.stride(d);
        sa[d] = A.stride(d);
        inv2dx[d] = 0.5 / g.dx(d);
    }

    // velocities three cells deep, feeding the central chain below
    for_box(g, 3, threads, [&](int i, int j, int k) {
        const double* qc = q.ptr(i, j, k);
        double* u = ws.uvel.ptr(i, j, k);
        const double ir = 1.0 / qc[irho];
        for (int c = 0; c < 3; ++c) u[c] = qc[imx + c] * ir;
    });

    // physical fluxes two deep, their central divergence one deep
    for_box(g, 2, threads, [&](int i, int j, int k) {
        Vec8 qi;
        const double* qc = q.ptr(i, j, k);
        for (int x = 0; x < ncomp; ++x) qi[x] = qc[x];
        for (int d = 0; d < g.ndim; ++d) {
            const Vec8 f = flux(qi, d, gamma);
            double* o = ws.pflux[d].ptr(i, j, k);
            for (int x = 0; x < ncomp; ++x) o[x] = f[x];
        }
    });
    for_box(g, 1, threads, [&](int i, int j, int k) {
        double* o = ws.qt.ptr(i, j, k);
        for (int x = 0; x < ncomp; ++x) o[x] = 0.0;
        for (int d = 0; d < g.ndim; ++d) {
            const double* f = ws.pflux[d].ptr(i, j, k);
            for (int x = 0; x < ncomp; ++x) o[x] -= (f[s8[d] + x] - f[-s8[d] + x]) * inv2dx[d];
        }
    });

    // velocity time derivative u_t = (m_t - u rho_t) / rho
    for_box(g, 1, threads, [&](int i, int j, int k) {
        const double* qc = q.ptr(i, j, k);
        const double* qtc = ws.qt.ptr(i, j, k);
        const double* u = ws.uvel.ptr(i, j, k);
        double* o = ws.ut.ptr(i, j, k);
        const double ir = 1.0 / qc[irho];
        for (int c = 0; c < 3; ++c) o[c] = (qtc[imx + c] - u[c] * qtc[irho]) * ir;
    });

    // flux time derivatives J q_t, then the second state derivative and
    // u_tt = m_tt/rho - 2 m_t rho_t/rho^2 - m rho_tt/rho^2 + 2 m rho_t^2/rho^3
    for_box(g, 1, threads, [&](int i, int j, int k) {
        Vec8 qi, vi;
        const double* qc = q.ptr(i, j, k);
        const double* qtc = ws.qt.ptr(i, j, k);
        for (int x = 0; x < ncomp; ++x) {
            qi[x] = qc[x];
            vi[x] = qtc[x];
        }
        for (int d = 0; d < g.ndim; ++d) {
            const Vec8 f = flux_dir_derivative(qi, vi, d, gamma, 1);
            double* o = ws.ft[d].ptr(i, j, k);
            for (int x = 0; x < ncomp; ++x) o[x] = f[x];
        }
    });
    for_box(g, 0, threads, [&](int i, int j, int k) {
        double r2[4] = {0.0, 0.0, 0.0, 0.0}; // rho_tt, m_tt
        for (int d = 0; d < g.ndim; ++d) {
            const double* f = ws.ft[d].ptr(i, j, k);
            for (int x = 0; x < 4; ++x) r2[x] -= (f[s8[d] + x] - f[-s8[d] + x]) * inv2dx[d];
        }
        const double* qc = q.ptr(i, j, k);
        const double* qtc = ws.qt.ptr(i, j, k);
        const double ir = 1.0 / qc[irho];
        const double rt = qtc[irho];
        double* o = ws.utt.ptr(i, j, k);
        for (int c = 0; c < 3; ++c) {
            const double m = qc[imx + c], mt = qtc[imx + c];
            o[c] = (r2[1 + c] - 2.0 * mt * rt * ir - m * r2[0] * ir + 2.0 * m * rt * rt * ir * ir) * ir;
        }
    });

    // global maximum velocity per axis scales the Hamilton-Jacobi dissipation
    double alpha[3] = {0.0, 0.0, 0.0};
    for (int k = g.ndim > 2 ? g.ghost : 0; k < (g.ndim > 2 ? g.ghost + g.m[2] : 1); ++k)
        for (int j = g.ghost; j < g.ghost + g.m[1]; ++j)
            for (int i = g.ghost; i < g.ghost + g.m[0]; ++i) {
                const double* qc = q.ptr(i, j, k);
                for (int d = 0; d < g.ndim; ++d) {
                    const double s = std::fabs(qc[imx + d] / qc[irho]);
                    if (s > alpha[d]) alpha[d] = s;
                }
            }

    if (ac == 1) {
        // out-of-plane component: pure in-plane advection
        for_box(g, 2, threads, [&](int i, int j, int k) {
            const double* a = A.ptr(i, j, k);
            const double* u = ws.uvel.ptr(i, j, k);
            const double ax = (a[sa[0]] - a[-sa[0]]) * inv2dx[0];
            const double ay = (a[sa[1]] - a[-sa[1]]) * inv2dx[1];
            ws.t1.at(i, j, k, 0) = -(u[0] * ax + u[1] * ay);
        });
        for_box(g, 1, threads, [&](int i, int j, int k) {
            const double* a = A.ptr(i, j, k);
            const double* t = ws.t1.ptr(i, j, k);
            const double* u = ws.uvel.ptr(i, j, k);
            const double* v = ws.ut.ptr(i, j, k);
            const double ax = (a[sa[0]] - a[-sa[0]]) * inv2dx[0];
            const double ay = (a[sa[1]] - a[-sa[1]]) * inv2dx[1];
            const double tx = (t[sa[0]] - t[-sa[0]]) * inv2dx[0];
            const double ty = (t[sa[1]] - t[-sa[1]]) * inv2dx[1];
            dA2.at(i, j, k, 0) = -(v[0] * ax + v[1] * ay + u[0] * tx + u[1] * ty);
        });
        for_box(g, 0, threads, [&](int i, int j, int k) {
            const double* a = A.ptr(i, j, k);
            const double* t = ws.t1.ptr(i, j, k);
            const double* s = dA2.ptr(i, j, k);
            const double* u = ws.uvel.ptr(i, j, k);
            const double* v = ws.ut.ptr(i, j, k);
            const double* w = ws.utt.ptr(i, j, k);
            const double ax = (a[sa[0]] - a[-sa[0]]) * inv2dx[0];
            const double ay = (a[sa[1]] - a[-sa[1]]) * inv2dx[1];
            const double tx = (t[sa[0]] - t[-sa[0]]) * inv2dx[0];
            const double ty = (t[sa[1]] - t[-sa[1]]) * inv2dx[1];
            const double sx = (s[sa[0]] - s[-sa[0]]) * inv2dx[0];
            const double sy = (s[sa[1]] - s[-sa[1]]) * inv2dx[1];
            dA3.at(i, j, k, 0) =
                -(w[0] * ax + w[1] * ay + 2.0 * (v[0] * tx + v[1] * ty) + u[0] * sx + u[1] * sy);
        });
        for_box(g, 0, threads, [&](int i, int j, int k) {
            const double* a = A.ptr(i, j, k);
            const double* u = ws.uvel.ptr(i, j, k);
            double dmx, dpx, dmy, dpy;
            hj_weno_derivative(a, sa[0], g.dx(0), dmx, dpx);
            hj_weno_derivative(a, sa[1], g.dx(1), dmy, dpy);
            dA1.at(i, j, k, 0) = -0.5 * (u[0] * (dmx + dpx) + u[1] * (dmy + dpy)) +
                                 0.5 * alpha[0] * (dpx - dmx) + 0.5 * alpha[1] * (dpy - dmy);
        });
        return;
    }

    // 3D: dA/dt = u x (curl A), differentiated in time by the product rule
    // with every curl taken as a 2nd-order central difference of the field
    // one level down the chain.
    auto curl_at = [&](const Field& f, int i, int j, int k, double* o) {
        const double* a = f.ptr(i, j, k);
        o[0] = (a[sa[1] + 2] - a[-sa[1] + 2]) * inv2dx[1] - (a[sa[2] + 1] - a[-sa[2] + 1]) * inv2dx[2];
        o[1] = (a[sa[2] + 0] - a[-sa[2] + 0]) * inv2dx[2] - (a[sa[0] + 2] - a[-sa[0] + 2]) * inv2dx[0];
        o[2] = (a[sa[0] + 1] - a[-sa[0] + 1]) * inv2dx[0] - (a[sa[1] + 0] - a[-sa[1] + 0]) * inv2dx[1];
    };
    for_box(g, 2, threads, [&](int i, int j, int k) {
        curl_at(A, i, j, k, ws.curl.ptr(i, j, k));
    });
    for_box(g, 2, threads, [&](int i, int j, int k) {
        cross(ws.uvel.ptr(i, j, k), ws.curl.ptr(i, j, k), ws.t1.ptr(i, j, k));
    });
    for_box(g, 1, threads, [&](int i, int j, int k) {
        curl_at(ws.t1, i, j, k, ws.curl_t.ptr(i, j, k));
    });
    for_box(g, 1, threads, [&](int i, int j, int k) {
        double x1[3], x2[3];
        cross(ws.ut.ptr(i, j, k), ws.curl.ptr(i, j, k), x1);
        cross(ws.uvel.ptr(i, j, k), ws.curl_t.ptr(i, j, k), x2);
        double* o = dA2.ptr(i, j, k);
        for (int c = 0; c < 3; ++c) o[c] = x1[c] + x2[c];
    });
    for_box(g, 0, threads, [&](int i, int j, int k) {
        double wtt[3], x1[3], x2[3], x3[3];
        curl_at(dA2, i, j, k, wtt);
        cross(ws.utt.ptr(i, j, k), ws.curl.ptr(i, j, k), x1);
        cross(ws.ut.ptr(i, j, k), ws.curl_t.ptr(i, j, k), x2);
        cross(ws.uvel.ptr(i, j, k), wtt, x3);
        double* o = dA3.ptr(i, j, k);
        for (int c = 0; c < 3; ++c) o[c] = x1[c] + 2.0 * x2[c] + x3[c];
    });

    // dissipative first derivative: per component c, advection by the two
    // transverse velocities with Lax-Friedrichs dissipation, the transverse
    // source terms averaged without dissipation, and the own-axis artificial
    // resistivity folded into this derivative only.
    for_box(g, 0, threads, [&](int i, int j, int k) {
        const double* a = A.ptr(i, j, k);
        const double* u = ws.uvel.ptr(i, j, k);
        double* o = dA1.ptr(i, j, k);
        for (int c = 0; c < 3; ++c) {
            const int e = (c + 1) % 3, f = (c + 2) % 3;
            double dme, dpe, dmf, dpf, sme, spe, smf, spf;
            hj_weno_derivative(a + c, sa[e], g.dx(e), dme, dpe);
            hj_weno_derivative(a + c, sa[f], g.dx(f), dmf, dpf);
            hj_weno_derivative(a + e, sa[c], g.dx(c), sme, spe);
            hj_weno_derivative(a + f, sa[c], g.dx(c), smf, spf);
            double val = -0.5 * (u[e] * (dme + dpe) + u[f] * (dmf + dpf)) +
                         0.5 * alpha[e] * (dpe - dme) + 0.5 * alpha[f] * (dpf - dmf) +
                         0.5 * u[e] * (sme + spe) + 0.5 * u[f] * (smf + spf);
            if (res.nu > 0.0) {
                double dmc, dpc;
                hj_weno_derivative(a + c, sa[c], g.dx(c), dmc, dpc);
                const double gam = smoothness_gamma(dmc, dpc, g.dx(c), res.eps_smooth);
                val += 2.0 * res.nu * gam * (a[-sa[c] + c] - 2.0 * a[c] + a[sa[c] + c]) / dt;
            }
            o[c] = val;
        }
    });
}

void potential_taylor_step(const Field& q, double dt, double gamma,
                           const ResistivityParams& res, int threads, Field& A,
                           CTWorkspace& ws) {
    potential_time_derivatives(q, A, gamma, res, dt, threads, ws.d1, ws.d2, ws.d3, ws);
    const double c1 = dt, c2 = 0.5 * dt * dt, c3 = dt * dt * dt / 6.0;
    for_box(q.g, 0, threads, [&](int i, int j, int k) {
        double* a = A.ptr(i, j, k);
        const double* b1 = ws.d1.ptr(i, j, k);
        const double* b2 = ws.d2.ptr(i, j, k);
        const double* b3 = ws.d3.ptr(i, j, k);
        for (int c = 0; c < A.comps; ++c) a[c] += c1 * b1[c] + c2 * b2[c] + c3 * b3[c];
    });
}

void curl_correction(const Field& A, int extra, int threads, Field& q) {
    const GridSpec& g = q.g;
    if (g.ndim < 2) throw std::invalid_argument("curl_correction: needs 2 or 3 active axes");
    const int ac = g.ndim == 2 ? 1 : 3;
    if (A.comps != ac || A.g.cells() != g.cells() || A.g.m != g.m)
        throw std::invalid_argument("curl_correction: A does not match the state grid");
    if (q.comps != ncomp) throw std::invalid_argument("curl_correction: q must hold 8 components");
    if (extra < 0 || extra + 2 > g.ghost)
        throw std::invalid_argument("curl_correction: stencil exceeds ghost layers");

    long long sa[3] = {0, 0, 0};
    double i12[3] = {0, 0, 0};
    for (int d = 0; d < g.ndim; ++d) {
        sa[d] = A.stride(d);
        i12[d] = 1.0 / (12.0 * g.dx(d));
    }
    auto d4 = [&](const double* p, int d) {
        return (p[-2 * sa[d]] - 8.0 * p[-sa[d]] + 8.0 * p[sa[d]] - p[2 * sa[d]]) * i12[d];
    };
    if (g.ndim == 2) {
        for_box(g, extra, threads, [&](int i, int j, int k) {
            const double* a = A.ptr(i, j, k);
            double* qc = q.ptr(i, j, k);
            qc[iBx] = d4(a, 1);
            qc[iBy] = -d4(a, 0);
        });
    } else {
        for_box(g, extra, threads, [&](int i, int j, int k) {
            const double* a = A.ptr(i, j, k);
            double* qc = q.ptr(i, j, k);
            qc[iBx] = d4(a + 2, 1) - d4(a + 1, 2);
            qc[iBy] = d4(a + 0, 2) - d4(a + 2, 0);
            qc[iBz] = d4(a + 1, 0) - d4(a + 0, 1);
        });
    }
}

void magnetic_energy_correction(const Field& b_old, int threads, Field& q) {
    const GridSpec& g = q.g;
    if (b_old.comps != 3 || b_old.g.cells() != g.cells() || b_old.g.m != g.m)
        throw std::invalid_argument("energy correction: b_old does not match the state grid");
    if (q.comps != ncomp)
        throw std::invalid_argument("energy correction: q must hold 8 components");
    for_box(g, 0, threads, [&](int i, int j, int k) {
        double* qc = q.ptr(i, j, k);
        const double* bo = b_old.ptr(i, j, k);
        const double nn = qc[iBx] * qc[iBx] + qc[iBy] * qc[iBy] + qc[iBz] * qc[iBz];
        const double oo = bo[0] * bo[0] + bo[1] * bo[1] + bo[2] * bo[2];
        qc[iE] += 0.5 * (nn - oo);
    });
}

} // namespace pifweno
