#include "pifweno/grid.hpp"

#include <stdexcept>
#include <string>

namespace pifweno {

GridSpec build_grid(const std::vector<int>& dims,
                    const std::vector<double>& lo,
                    const std::vector<double>& hi,
                    int ghost) {
    if (dims.empty() || dims.size() > max_dim)
        throw std::invalid_argument("build_grid: need 1 to 3 dimensions");
    if (lo.size() != dims.size() || hi.size() != dims.size())
        throw std::invalid_argument("build_grid: dims/lo/hi size mismatch");
    if (ghost < 0) throw std::invalid_argument("build_grid: negative ghost width");
    GridSpec g;
    g.ndim = static_cast<int>(dims.size());
    g.ghost = ghost;
    for (int d = 0; d < g.ndim; ++d) {
        if (dims[d] < 1)
            throw std::invalid_argument("build_grid: non-positive cell count on axis " + std::to_string(d));
        if (!(lo[d] < hi[d]))
            throw std::invalid_argument("build_grid: lo >= hi on axis " + std::to_string(d));
        g.m[d] = dims[d];
        g.lo[d] = lo[d];
        g.hi[d] = hi[d];
    }
    return g;
}

namespace {

// Fills the ghost cells of one row (a 1D line along axis d through the
// ghosted cell `base`), reading and writing through `stride`.
void fill_line(double* base, long long stride, int comps, int m, int ghost, int margin,
               const AxisBC& bc) {
    const int g = ghost;
    const int lo_end = g - margin;        // first valid own-axis index
    const int hi_end = g + m + margin;    // one past last valid own-axis index
    const int n = m + 2 * g;

    auto val = [&](int i, int c) -> double& { return base[i * stride + c]; };

    const bool lo_per = bc.lo == BCKind::periodic;
    const bool hi_per = bc.hi == BCKind::periodic;
    if (lo_per != hi_per)
        throw std::invalid_argument("fill_boundary: periodic axis must be periodic on both sides");

    if (lo_per) {
        auto fill_wrap = [&](int i) {
            // Wrap count w shifts jump-carrying components by w jumps.
            int off = i - g;
            int w = off >= 0 ? off / m : -((-off + m - 1) / m);
            int src = g + (off - w * m);
            for (int c = 0; c < comps; ++c) {
                double jump = c < static_cast<int>(bc.periodic_jump.size()) ? bc.periodic_jump[c] : 0.0;
                val(i, c) = val(src, c) + w * jump;
            }
        };
        for (int i = 0; i < lo_end; ++i) fill_wrap(i);
        for (int i = hi_end; i < n; ++i) fill_wrap(i);
        return;
    }

    switch (bc.lo) {
        case BCKind::extrap0:
            for (int i = 0; i < lo_end; ++i)
                for (int c = 0; c < comps; ++c) val(i, c) = val(lo_end, c);
            break;
        case BCKind::extrap1:
            for (int i = lo_end - 1; i >= 0; --i)
                for (int c = 0; c < comps; ++c) val(i, c) = 2.0 * val(i + 1, c) - val(i + 2, c);
            break;
        default: break;
    }
    switch (bc.hi) {
        case BCKind::extrap0:
            for (int i = hi_end; i < n; ++i)
                for (int c = 0; c < comps; ++c) val(i, c) = val(hi_end - 1, c);
            break;
        case BCKind::extrap1:
            for (int i = hi_end; i < n; ++i)
                for (int c = 0; c < comps; ++c) val(i, c) = 2.0 * val(i - 1, c) - val(i - 2, c);
            break;
        default: break;
    }
}

// Oblique extrapolation on the y axis: each ghost row is produced from rows
// two closer to the interior, shifted `p` columns, marching parallel to a
// rotated profile.  Columns whose shifted source falls outside the allocated
// extent fall back to straight extrapolation; with the x axis filled first
// those columns sit in the far corner wedges.
void fill_oblique_y(Field& f, const AxisBC& bc, int margin) {
    const GridSpec& g = f.g;
    const int p = bc.oblique;
    const int nx = g.ext(0);
    const int ny = g.ext(1);
    const int lo_end = g.ghost - margin;
    const int hi_end = g.ghost + g.m[1] + margin;
    auto val = [&](int i, int j, int c) -> double& {
        return f.v[static_cast<size_t>(f.cell(i, j, 0)) * f.comps + c];
    };
    auto fill_row = [&](int j, int dj, int dp, BCKind kind) {
        for (int i = 0; i < nx; ++i) {
            const int s1 = i + dp, s2 = i + 2 * dp;
            for (int c = 0; c < f.comps; ++c) {
                if (kind == BCKind::extrap0)
                    val(i, j, c) = s1 >= 0 && s1 < nx ? val(s1, j + 2 * dj, c)
                                                      : val(i, j + 2 * dj, c);
                else
                    val(i, j, c) = s1 >= 0 && s1 < nx && s2 >= 0 && s2 < nx
                                       ? 2.0 * val(s1, j + 2 * dj, c) - val(s2, j + 4 * dj, c)
                                       : 2.0 * val(i, j + dj, c) - val(i, j + 2 * dj, c);
            }
        }
    };
    for (int j = hi_end; j < ny; ++j) fill_row(j, -1, p, bc.hi);
    for (int j = lo_end - 1; j >= 0; --j) fill_row(j, +1, -p, bc.lo);
}

}  // namespace

void fill_boundary(Field& f, const BoundarySpec& bc, int margin) {
    const GridSpec& g = f.g;
    if (margin < 0 || margin > g.ghost)
        throw std::invalid_argument("fill_boundary: margin out of range");
    for (int d = 0; d < g.ndim; ++d) {
        if (g.m[d] < 2 && (bc.axis[d].lo != BCKind::periodic))
            throw std::invalid_argument("fill_boundary: extrapolation needs at least 2 cells");
        if (bc.axis[d].oblique != 0) {
            if (g.ndim != 2 || d != 1 || bc.axis[d].lo == BCKind::periodic ||
                bc.axis[d].hi == BCKind::periodic)
                throw std::invalid_argument(
                    "fill_boundary: oblique extrapolation needs the y axis of a 2D grid "
                    "with non-periodic ends");
            fill_oblique_y(f, bc.axis[d], margin);
            continue;
        }
        const long long stride = f.stride(d);
        // Sweep every line through axis d. Lines are indexed by the other
        // two axes over their full ghosted extents; rows not yet valid on a
        // later axis are overwritten when that axis is filled.
        int a1 = (d + 1) % max_dim, a2 = (d + 2) % max_dim;
        for (int k = 0; k < g.ext(a2); ++k)
            for (int j = 0; j < g.ext(a1); ++j) {
                std::array<int, max_dim> idx{};
                idx[a1] = j;
                idx[a2] = k;
                double* base = f.v.data() + f.cell(idx[0], idx[1], idx[2]) * f.comps;
                fill_line(base, stride, f.comps, g.m[d], g.ghost, margin, bc.axis[d]);
            }
    }
}

}  // namespace pifweno
