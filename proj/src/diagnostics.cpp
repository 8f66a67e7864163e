#include "pifweno/diagnostics.hpp"

#include "pifweno/physics.hpp"

#include <cmath>
#include <stdexcept>

namespace pifweno {
namespace {

void check_same_shape(const Field& a, const Field& b) {
    if (a.comps != b.comps || a.g.ndim != b.g.ndim)
        throw std::invalid_argument("diagnostics: field shapes differ");
    for (int d = 0; d < max_dim; ++d)
        if (a.g.m[d] != b.g.m[d] || a.g.ghost != b.g.ghost)
            throw std::invalid_argument("diagnostics: field shapes differ");
}

std::vector<int> resolve_comps(const Field& f, const std::vector<int>& comps) {
    std::vector<int> out(comps);
    if (out.empty())
        for (int c = 0; c < f.comps; ++c) out.push_back(c);
    for (int c : out)
        if (c < 0 || c >= f.comps)
            throw std::invalid_argument("diagnostics: component index out of range");
    return out;
}

// Applies fn(cell pointer) over interior cells in a fixed k-j-i order.
template <class F>
void for_interior(const Field& f, F&& fn) {
    const GridSpec& g = f.g;
    const int klo = g.ndim == 3 ? g.ghost : 0;
    const int khi = g.ndim == 3 ? g.m[2] + g.ghost : 1;
    const int jlo = g.ndim >= 2 ? g.ghost : 0;
    const int jhi = g.ndim >= 2 ? g.m[1] + g.ghost : 1;
    for (int k = klo; k < khi; ++k)
        for (int j = jlo; j < jhi; ++j)
            for (int i = g.ghost; i < g.m[0] + g.ghost; ++i) fn(i, j, k);
}

struct Kahan {
    double sum = 0, carry = 0;
    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

double d4(const double* p, long long s, double inv12dx) {
    return (p[-2 * s] - 8.0 * p[-s] + 8.0 * p[s] - p[2 * s]) * inv12dx;
}

} // namespace

double linf_error(const Field& a, const Field& b, const std::vector<int>& comps) {
    check_same_shape(a, b);
    const std::vector<int> cs = resolve_comps(a, comps);
    double err = 0;
    for_interior(a, [&](int i, int j, int k) {
        const double* pa = a.ptr(i, j, k);
        const double* pb = b.ptr(i, j, k);
        for (int c : cs) err = std::fmax(err, std::fabs(pa[c] - pb[c]));
    });
    return err;
}

double max_interior_abs(const Field& f, const std::vector<int>& comps) {
    const std::vector<int> cs = resolve_comps(f, comps);
    double m = 0;
    for_interior(f, [&](int i, int j, int k) {
        const double* p = f.ptr(i, j, k);
        for (int c : cs) m = std::fmax(m, std::fabs(p[c]));
    });
    return m;
}

double max_bnorm(const Field& q) {
    if (q.comps != ncomp)
        throw std::invalid_argument("max_bnorm: conserved field expected");
    double m = 0;
    for_interior(q, [&](int i, int j, int k) {
        const double* p = q.ptr(i, j, k);
        m = std::fmax(m, dot3(p + iBx, p + iBx));
    });
    return std::sqrt(m);
}

std::vector<double> observed_order(const std::vector<double>& errors) {
    if (errors.size() < 2)
        throw std::invalid_argument("observed_order: need at least two errors");
    for (double e : errors)
        if (!(e > 0.0))
            throw std::invalid_argument("observed_order: errors must be positive");
    std::vector<double> orders;
    for (size_t n = 0; n + 1 < errors.size(); ++n)
        orders.push_back(std::log2(errors[n] / errors[n + 1]));
    return orders;
}

double energy_conservation_error(const Field& q_now, const Field& q_init) {
    check_same_shape(q_now, q_init);
    if (q_now.comps != ncomp)
        throw std::invalid_argument("energy_conservation_error: conserved fields expected");
    Kahan diff, init;
    for_interior(q_now, [&](int i, int j, int k) {
        diff.add(q_now.at(i, j, k, iE) - q_init.at(i, j, k, iE));
        init.add(q_init.at(i, j, k, iE));
    });
    if (!(init.sum > 0.0))
        throw std::invalid_argument("energy_conservation_error: non-positive initial energy");
    return std::fabs(diff.sum) / init.sum;
}

Field discrete_divergence(const Field& q) {
    if (q.comps != ncomp)
        throw std::invalid_argument("discrete_divergence: conserved field expected");
    if (q.g.ghost < 2)
        throw std::invalid_argument("discrete_divergence: needs ghost >= 2");
    Field div(q.g, 1);
    for_interior(q, [&](int i, int j, int k) {
        double sum = 0;
        for (int d = 0; d < q.g.ndim; ++d)
            sum += d4(q.ptr(i, j, k) + iBx + d, q.stride(d), 1.0 / (12.0 * q.g.dx(d)));
        div.at(i, j, k, 0) = sum;
    });
    return div;
}

Field schlieren(const Field& q, double k) {
    if (q.comps != ncomp)
        throw std::invalid_argument("schlieren: conserved field expected");
    if (q.g.ghost < 2)
        throw std::invalid_argument("schlieren: needs ghost >= 2");
    const GridSpec& g = q.g;
    // ln rho everywhere the gradient stencil reads: interior widened by 2.
    Field lnr(g, 1);
    const int wid = 2;
    const int klo = g.ndim == 3 ? g.ghost - wid : 0;
    const int khi = g.ndim == 3 ? g.m[2] + g.ghost + wid : 1;
    const int jlo = g.ndim >= 2 ? g.ghost - wid : 0;
    const int jhi = g.ndim >= 2 ? g.m[1] + g.ghost + wid : 1;
    for (int kk = klo; kk < khi; ++kk)
        for (int j = jlo; j < jhi; ++j)
            for (int i = g.ghost - wid; i < g.m[0] + g.ghost + wid; ++i) {
                const double rho = q.at(i, j, kk, irho);
                if (!(rho > 0.0))
                    throw std::invalid_argument("schlieren: non-positive density");
                lnr.at(i, j, kk, 0) = std::log(rho);
            }
    Field grad(g, 1);
    double gmax = 0, lmax = 0, dxmin = 1e300;
    for (int d = 0; d < g.ndim; ++d) dxmin = std::fmin(dxmin, g.dx(d));
    for_interior(q, [&](int i, int j, int kk) {
        double s2 = 0;
        for (int d = 0; d < g.ndim; ++d) {
            const double gd = d4(lnr.ptr(i, j, kk), lnr.stride(d), 1.0 / (12.0 * g.dx(d)));
            s2 += gd * gd;
        }
        const double gn = std::sqrt(s2);
        grad.at(i, j, kk, 0) = gn;
        gmax = std::fmax(gmax, gn);
        lmax = std::fmax(lmax, std::fabs(lnr.at(i, j, kk, 0)));
    });
    // Differencing noise floor: a near-uniform density would otherwise
    // normalize pure roundoff to full shading.
    const double gfloor = 1e-11 * std::fmax(1.0, lmax) / dxmin;
    Field out(g, 1);
    const double scale = gmax > gfloor ? 1.0 / gmax : 0.0;
    for_interior(q, [&](int i, int j, int kk) {
        out.at(i, j, kk, 0) = std::exp(-k * grad.at(i, j, kk, 0) * scale);
    });
    return out;
}

double min_density(const Field& q) {
    if (q.comps != ncomp)
        throw std::invalid_argument("min_density: conserved field expected");
    double m = 1e300;
    for_interior(q, [&](int i, int j, int k) { m = std::fmin(m, q.at(i, j, k, irho)); });
    return m;
}

double min_pressure(const Field& q, double gamma) {
    if (q.comps != ncomp)
        throw std::invalid_argument("min_pressure: conserved field expected");
    double m = 1e300;
    for_interior(q, [&](int i, int j, int k) {
        Vec8 s;
        const double* p = q.ptr(i, j, k);
        for (int c = 0; c < ncomp; ++c) s[c] = p[c];
        m = std::fmin(m, pressure(s, gamma));
    });
    return m;
}

} // namespace pifweno
