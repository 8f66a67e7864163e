// On-disk artifacts: binary field snapshots (ASCII header + little-endian
// float64 payload), plot-ready CSV and gnuplot exports of derived scalars,
// and the per-step diagnostics series.
#pragma once

#include "pifweno/grid.hpp"

#include <fstream>
#include <string>

namespace pifweno {

inline constexpr const char* snapshot_magic = "PIFWENO-MHD-SNAP v1";

// Writes header lines (magic, problem, t, ndim, dims, lo, hi, components)
// followed by raw float64 data: interior cells in storage order, each cell's
// state components then, when A is non-null, its potential components.
// Throws std::runtime_error when the file cannot be written.
void write_snapshot(const std::string& path, const std::string& problem_id, double t,
                    const Field& q, const Field* A);

// A snapshot read back from disk; fields carry zero ghost layers. A.comps is
// zero when the file holds no potential.
struct Snapshot {
    std::string problem;
    double t = 0;
    Field q;
    Field A;
};

// Throws std::runtime_error on a bad magic line, malformed header, or short
// payload.
Snapshot read_snapshot(const std::string& path);

// Derived per-cell scalars for plotting.
enum class ScalarKind { density, pressure, bnorm, unorm };

// One-component field of the selected scalar over the interior.
Field scalar_map(const Field& q, ScalarKind kind, double gamma);

// Interior cells of a one-component field as "x,y,value" CSV rows (3D: the
// mid-plane slice along z). Header row included.
void write_csv_map(const std::string& path, const Field& f);

// Same data as a gnuplot grid: space-separated "x y value" with a blank line
// after each row, ready for splot / set contour.
void write_gnuplot_grid(const std::string& path, const Field& f);

// Append-only diagnostics series: "t,energy_error,max_divB,min_rho,min_p".
class SeriesWriter {
  public:
    explicit SeriesWriter(const std::string& path);
    void row(double t, double energy_error, double max_divb, double min_rho,
             double min_p);

  private:
    std::ofstream out_;
};

} // namespace pifweno
