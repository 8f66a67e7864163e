#include "pifweno/output.hpp"

#include "pifweno/physics.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <vector>

static_assert(std::endian::native == std::endian::little,
              "snapshot payload is written as raw little-endian doubles");

namespace pifweno {
namespace {

const char* comp_names_q[ncomp] = {"rho", "mx", "my", "mz", "E", "Bx", "By", "Bz"};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// Interior traversal bounds for a possibly lower-dimensional grid.
struct Box {
    int lo[3], hi[3];
    explicit Box(const GridSpec& g) {
        for (int d = 0; d < 3; ++d) {
            lo[d] = d < g.ndim ? g.ghost : 0;
            hi[d] = d < g.ndim ? g.m[d] + g.ghost : 1;
        }
    }
};

} // namespace

void write_snapshot(const std::string& path, const std::string& problem_id, double t,
                    const Field& q, const Field* A) {
    if (q.comps != ncomp)
        throw std::invalid_argument("write_snapshot: conserved field expected");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_snapshot: cannot open " + path);
    const GridSpec& g = q.g;
    out << snapshot_magic << "\n";
    out << "problem " << problem_id << "\n";
    out << "t " << fmt(t) << "\n";
    out << "ndim " << g.ndim << "\n";
    out << "dims";
    for (int d = 0; d < g.ndim; ++d) out << ' ' << g.m[d];
    out << "\nlo";
    for (int d = 0; d < g.ndim; ++d) out << ' ' << fmt(g.lo[d]);
    out << "\nhi";
    for (int d = 0; d < g.ndim; ++d) out << ' ' << fmt(g.hi[d]);
    out << "\ncomponents";
    for (const char* n : comp_names_q) out << ' ' << n;
    if (A) {
        if (A->comps == 1)
            out << " Az";
        else if (A->comps == 3)
            out << " Ax Ay Az";
        else
            throw std::invalid_argument("write_snapshot: potential needs 1 or 3 components");
    }
    out << "\ndata\n";
    const Box b(g);
    std::vector<double> row;
    for (int k = b.lo[2]; k < b.hi[2]; ++k)
        for (int j = b.lo[1]; j < b.hi[1]; ++j)
            for (int i = b.lo[0]; i < b.hi[0]; ++i) {
                row.clear();
                const double* pq = q.ptr(i, j, k);
                row.insert(row.end(), pq, pq + ncomp);
                if (A) {
                    const double* pa = A->ptr(i, j, k);
                    row.insert(row.end(), pa, pa + A->comps);
                }
                out.write(reinterpret_cast<const char*>(row.data()),
                          static_cast<std::streamsize>(row.size() * sizeof(double)));
            }
    if (!out) throw std::runtime_error("write_snapshot: write failed for " + path);
}

Snapshot read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_snapshot: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != snapshot_magic)
        throw std::runtime_error("read_snapshot: bad magic in " + path);
    Snapshot snap;
    int ndim = 0, acomps = 0;
    std::vector<int> dims;
    std::vector<double> lo, hi;
    while (std::getline(in, line) && line != "data") {
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "problem") {
            ls >> snap.problem;
        } else if (key == "t") {
            ls >> snap.t;
        } else if (key == "ndim") {
            ls >> ndim;
        } else if (key == "dims") {
            int v;
            while (ls >> v) dims.push_back(v);
        } else if (key == "lo") {
            double v;
            while (ls >> v) lo.push_back(v);
        } else if (key == "hi") {
            double v;
            while (ls >> v) hi.push_back(v);
        } else if (key == "components") {
            std::string name;
            int n = 0;
            while (ls >> name) ++n;
            acomps = n - ncomp;
        } else {
            throw std::runtime_error("read_snapshot: unknown header key " + key);
        }
    }
    if (line != "data" || ndim < 1 || ndim > 3 ||
        static_cast<int>(dims.size()) != ndim || lo.size() != dims.size() ||
        hi.size() != dims.size() || acomps < 0)
        throw std::runtime_error("read_snapshot: malformed header in " + path);
    GridSpec g = build_grid(dims, lo, hi, 0);
    snap.q = Field(g, ncomp);
    if (acomps > 0) snap.A = Field(g, acomps);
    std::vector<double> row(static_cast<size_t>(ncomp + acomps));
    const long long n = g.interior_cells();
    for (long long cell = 0; cell < n; ++cell) {
        in.read(reinterpret_cast<char*>(row.data()),
                static_cast<std::streamsize>(row.size() * sizeof(double)));
        if (!in) throw std::runtime_error("read_snapshot: short payload in " + path);
        for (int c = 0; c < ncomp; ++c) snap.q.v[cell * ncomp + c] = row[c];
        for (int c = 0; c < acomps; ++c) snap.A.v[cell * acomps + c] = row[ncomp + c];
    }
    return snap;
}

Field scalar_map(const Field& q, ScalarKind kind, double gamma) {
    if (q.comps != ncomp)
        throw std::invalid_argument("scalar_map: conserved field expected");
    Field out(q.g, 1);
    const Box b(q.g);
    for (int k = b.lo[2]; k < b.hi[2]; ++k)
        for (int j = b.lo[1]; j < b.hi[1]; ++j)
            for (int i = b.lo[0]; i < b.hi[0]; ++i) {
                const double* p = q.ptr(i, j, k);
                double v = 0;
                switch (kind) {
                    case ScalarKind::density: v = p[irho]; break;
                    case ScalarKind::pressure: {
                        Vec8 s;
                        for (int c = 0; c < ncomp; ++c) s[c] = p[c];
                        v = pressure(s, gamma);
                        break;
                    }
                    case ScalarKind::bnorm:
                        v = std::sqrt(dot3(p + iBx, p + iBx));
                        break;
                    case ScalarKind::unorm:
                        v = std::sqrt(dot3(p + imx, p + imx)) / p[irho];
                        break;
                }
                out.at(i, j, k, 0) = v;
            }
    return out;
}

namespace {

// 3D exports slice the mid-plane along z; 1D/2D use the whole interior.
int slice_k(const GridSpec& g) { return g.ndim == 3 ? g.ghost + g.m[2] / 2 : 0; }

template <class RowFn>
void walk_plane(const Field& f, RowFn&& fn) {
    const GridSpec& g = f.g;
    const Box b(g);
    const int k = slice_k(g);
    for (int j = b.lo[1]; j < b.hi[1]; ++j) {
        for (int i = b.lo[0]; i < b.hi[0]; ++i)
            fn(g.center(0, i), g.ndim >= 2 ? g.center(1, j) : 0.0, f.at(i, j, k, 0),
               false);
        fn(0, 0, 0, true);  // row break
    }
}

} // namespace

void write_csv_map(const std::string& path, const Field& f) {
    if (f.comps != 1)
        throw std::invalid_argument("write_csv_map: one-component field expected");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_csv_map: cannot open " + path);
    out << "x,y,value\n";
    walk_plane(f, [&](double x, double y, double v, bool brk) {
        if (!brk) out << fmt(x) << ',' << fmt(y) << ',' << fmt(v) << '\n';
    });
    if (!out) throw std::runtime_error("write_csv_map: write failed for " + path);
}

void write_gnuplot_grid(const std::string& path, const Field& f) {
    if (f.comps != 1)
        throw std::invalid_argument("write_gnuplot_grid: one-component field expected");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_gnuplot_grid: cannot open " + path);
    walk_plane(f, [&](double x, double y, double v, bool brk) {
        if (brk)
            out << '\n';
        else
            out << fmt(x) << ' ' << fmt(y) << ' ' << fmt(v) << '\n';
    });
    if (!out) throw std::runtime_error("write_gnuplot_grid: write failed for " + path);
}

SeriesWriter::SeriesWriter(const std::string& path) : out_(path) {
    if (!out_) throw std::runtime_error("series: cannot open " + path);
    out_ << "t,energy_error,max_divB,min_rho,min_p\n";
}

void SeriesWriter::row(double t, double energy_error, double max_divb, double min_rho,
                       double min_p) {
    out_ << fmt(t) << ',' << fmt(energy_error) << ',' << fmt(max_divb) << ','
         << fmt(min_rho) << ',' << fmt(min_p) << '\n';
    out_.flush();
    if (!out_) throw std::runtime_error("series: write failed");
}

} // namespace pifweno
