#include "pifweno/physics.hpp"

#include <stdexcept>

namespace pifweno {

namespace {

double norm8(const Vec8& a) {
    double s = 0;
    for (double x : a) s += x * x;
    return std::sqrt(s);
}

bool admissible_density(const Vec8& q) { return q[irho] > 0.0 && std::isfinite(q[irho]); }

}  // namespace

Vec8 flux_dir_derivative(const Vec8& q, const Vec8& v, int dir, double gamma, int order) {
    if (order != 1 && order != 2)
        throw std::invalid_argument("flux_dir_derivative: order must be 1 or 2");
    const double nv = norm8(v);
    Vec8 zero{};
    if (nv == 0.0) return zero;
    const double scale = (norm8(q) + 1e-300) / nv;
    // eps ~ eps_mach^(1/3) for the first derivative, eps_mach^(1/4) for the
    // second; both scaled so the perturbation is relative to the state size.
    double eps = (order == 1 ? 6.0e-6 : 1.2e-4) * scale;

    for (int tries = 0; tries < 60; ++tries) {
        Vec8 qp = q, qm = q;
        for (int c = 0; c < ncomp; ++c) {
            qp[c] += eps * v[c];
            qm[c] -= eps * v[c];
        }
        if (!admissible_density(qp) || !admissible_density(qm)) {
            eps *= 0.5;
            continue;
        }
        const Vec8 fp = flux(qp, dir, gamma), fm = flux(qm, dir, gamma);
        Vec8 r;
        if (order == 1) {
            for (int c = 0; c < ncomp; ++c) r[c] = (fp[c] - fm[c]) / (2.0 * eps);
        } else {
            const Vec8 f0 = flux(q, dir, gamma);
            for (int c = 0; c < ncomp; ++c) r[c] = (fp[c] - 2.0 * f0[c] + fm[c]) / (eps * eps);
        }
        return r;
    }
    throw std::domain_error("flux_dir_derivative: could not find admissible perturbation");
}

}  // namespace pifweno
