// Structured grid with ghost layers: GridSpec geometry, Field storage,
// boundary fills (periodic, zeroth/first-order extrapolation).
#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace pifweno {

inline constexpr int max_dim = 3;

struct GridSpec {
    int ndim = 0;
    std::array<int, max_dim> m{1, 1, 1};        // interior cell counts, 1 on inactive axes
    std::array<double, max_dim> lo{0, 0, 0};
    std::array<double, max_dim> hi{1, 1, 1};
    int ghost = 0;

    double dx(int d) const { return (hi[d] - lo[d]) / m[d]; }
    // Ghosted extent along axis d (1 on inactive axes so strides collapse).
    int ext(int d) const { return d < ndim ? m[d] + 2 * ghost : 1; }
    // Center of the cell with ghosted index i along axis d; extends affinely
    // into the ghost region.
    double center(int d, int i) const { return lo[d] + (i - ghost + 0.5) * dx(d); }
    long long cells() const { return 1LL * ext(0) * ext(1) * ext(2); }
    long long interior_cells() const { return 1LL * m[0] * m[1] * m[2]; }
};

// Throws std::invalid_argument on non-positive extents, ndim outside 1..3,
// or lo >= hi on an active axis.
GridSpec build_grid(const std::vector<int>& dims,
                    const std::vector<double>& lo,
                    const std::vector<double>& hi,
                    int ghost);

// Cell-major storage: all components of a cell are contiguous.
struct Field {
    GridSpec g;
    int comps = 0;
    std::vector<double> v;

    Field() = default;
    Field(const GridSpec& spec, int ncomp)
        : g(spec), comps(ncomp), v(static_cast<size_t>(spec.cells()) * ncomp, 0.0) {}

    // Linear cell index from ghosted per-axis indices.
    long long cell(int i, int j = 0, int k = 0) const {
        return (static_cast<long long>(k) * g.ext(1) + j) * g.ext(0) + i;
    }
    double& at(int i, int j, int k, int c) { return v[cell(i, j, k) * comps + c]; }
    double at(int i, int j, int k, int c) const { return v[cell(i, j, k) * comps + c]; }
    double* ptr(int i, int j = 0, int k = 0) { return v.data() + cell(i, j, k) * comps; }
    const double* ptr(int i, int j = 0, int k = 0) const { return v.data() + cell(i, j, k) * comps; }
    // Stride, in doubles, between neighbouring cells along axis d.
    long long stride(int d) const {
        long long s = comps;
        for (int a = 0; a < d; ++a) s *= g.ext(a);
        return s;
    }
};

enum class BCKind { periodic, extrap0, extrap1 };

// Per-axis boundary policy. An axis is periodic on both sides or on neither.
// periodic_jump[c] is the constant increment of component c across one wrap
// in +d; nonzero only for potential fields whose curl has a nonzero mean.
struct AxisBC {
    BCKind lo = BCKind::periodic;
    BCKind hi = BCKind::periodic;
    std::vector<double> periodic_jump;  // empty = no jump
    // Nonzero: extrapolate along the lattice direction (oblique, -2) instead
    // of straight along this axis, so fields constant along that direction
    // extend exactly (top ghosts copy from (i + oblique, j - 2), bottom from
    // (i - oblique, j + 2)).  Supported on the y axis of 2D grids with
    // square cells; used by problems whose solution is a rotated 1D profile.
    int oblique = 0;
};

struct BoundarySpec {
    std::array<AxisBC, max_dim> axis;
    static BoundarySpec all(BCKind k) {
        BoundarySpec b;
        for (auto& a : b.axis) { a.lo = k; a.hi = k; }
        return b;
    }
};

// Fills ghost cells layer by layer, axis 0 first. Along each axis the source
// region spans the interior widened by `margin` cells on every previously
// filled or own axis, so derived fields computed on a slightly larger box
// keep their computed values. Idempotent: a second call recomputes the same
// ghost values.
void fill_boundary(Field& f, const BoundarySpec& bc, int margin = 0);

}  // namespace pifweno
