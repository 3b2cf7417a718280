#pragma once

#include <cstddef>
#include <vector>

#include "predprey/model.hpp"

namespace predprey {

/// Row-major nx x ny array; value(x, y) lives at data[y * nx + x].
struct Grid2 {
    int nx = 0;
    int ny = 0;
    std::vector<double> data;

    Grid2() = default;
    Grid2(int nx_, int ny_, double fill = 0.0)
        : nx(nx_), ny(ny_), data(static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_), fill) {}

    double& at(int x, int y) { return data[static_cast<std::size_t>(y) * nx + x]; }
    double at(int x, int y) const { return data[static_cast<std::size_t>(y) * nx + x]; }
};

/// Grid geometry and diffusion. Boundaries are always zero-flux Neumann.
struct GridSpec {
    int nx = 64;
    int ny = 64;
    double h = 1.0;
    double d1 = 0.1; ///< prey diffusion
    double d2 = 0.1; ///< predator diffusion
    bool reaction = true; ///< false: pure diffusion (reaction and forcing off)
};

void validate(const GridSpec& gs);

struct Field {
    Grid2 r;
    Grid2 c;
    double time = 0.0;
};

/// 5-point Laplacian; ghost cells mirror the boundary cell across its face
/// (zero normal flux), so the cell sum of the result is zero.
Grid2 laplacian(const Grid2& grid, double h);

/// Largest dt accepted by step_pde: 0.9 h^2 / (4 max(d1, d2)); infinity without diffusion.
double max_stable_dt(const GridSpec& gs);

/// One forward-Euler step of reaction + diffusion with pointwise clamping.
/// Forcing is spatially uniform, evaluated at f.time.
Field step_pde(const NondimParams& params, const Disturbance& dist, const GridSpec& gs, const Field& f, double dt);

/// Snapshots at t0, every round(snapshot_every/dt) steps, and at exactly t1.
std::vector<Field> run_pde(const NondimParams& params, const Disturbance& dist, const GridSpec& gs,
                           const Field& initial, double t1, double dt, double snapshot_every);

} // namespace predprey
