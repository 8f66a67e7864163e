// Fifth-order WENO interface reconstruction and the matching one-sided
// Hamilton-Jacobi derivatives built from divided differences.
#pragma once

namespace pifweno {

inline constexpr double weno_eps = 1e-6;

// Value at the right edge of the middle cell from five cell values
// (v1 leftmost). Linear weights 1/10, 6/10, 3/10; classical smoothness
// indicators.
inline double weno5(double v1, double v2, double v3, double v4, double v5) {
    const double p0 = (2.0 * v1 - 7.0 * v2 + 11.0 * v3) / 6.0;
    const double p1 = (-v2 + 5.0 * v3 + 2.0 * v4) / 6.0;
    const double p2 = (2.0 * v3 + 5.0 * v4 - v5) / 6.0;
    const double d01 = v1 - 2.0 * v2 + v3, d02 = v1 - 4.0 * v2 + 3.0 * v3;
    const double d11 = v2 - 2.0 * v3 + v4, d12 = v2 - v4;
    const double d21 = v3 - 2.0 * v4 + v5, d22 = 3.0 * v3 - 4.0 * v4 + v5;
    const double b0 = (13.0 / 12.0) * d01 * d01 + 0.25 * d02 * d02;
    const double b1 = (13.0 / 12.0) * d11 * d11 + 0.25 * d12 * d12;
    const double b2 = (13.0 / 12.0) * d21 * d21 + 0.25 * d22 * d22;
    const double w0 = 0.1 / ((weno_eps + b0) * (weno_eps + b0));
    const double w1 = 0.6 / ((weno_eps + b1) * (weno_eps + b1));
    const double w2 = 0.3 / ((weno_eps + b2) * (weno_eps + b2));
    return (w0 * p0 + w1 * p1 + w2 * p2) / (w0 + w1 + w2);
}

// Ideal-weight combination of the three candidate stencils: the fifth-order
// linear reconstruction the nonlinear weights approach on smooth data.
inline double weno5_linear(double v1, double v2, double v3, double v4, double v5) {
    const double p0 = (2.0 * v1 - 7.0 * v2 + 11.0 * v3) / 6.0;
    const double p1 = (-v2 + 5.0 * v3 + 2.0 * v4) / 6.0;
    const double p2 = (2.0 * v3 + 5.0 * v4 - v5) / 6.0;
    return 0.1 * p0 + 0.6 * p1 + 0.3 * p2;
}

// One-sided derivatives at a grid point from the seven surrounding values
// a[-3*stride .. 3*stride]. The minus (left-biased) derivative feeds the
// divided differences on cells i-3..i+1 through the same weno5 kernel; the
// plus derivative mirrors the stencil. Exact for affine data (both sides
// equal the slope).
inline void hj_weno_derivative(const double* a, long long stride, double dx,
                               double& dminus, double& dplus) {
    double d[6];  // d[j] = (a[j-2] - a[j-3]) / dx, forward differences
    for (int j = 0; j < 6; ++j)
        d[j] = (a[(j - 2) * stride] - a[(j - 3) * stride]) / dx;
    dminus = weno5(d[0], d[1], d[2], d[3], d[4]);
    dplus = weno5(d[5], d[4], d[3], d[2], d[1]);
}

}  // namespace pifweno
