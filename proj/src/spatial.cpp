#include "predprey/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "predprey/error.hpp"

namespace predprey {

namespace {

void require_same_shape(const GridSpec& gs, const Field& f) {
    if (f.r.nx != gs.nx || f.r.ny != gs.ny || f.c.nx != gs.nx || f.c.ny != gs.ny) {
        throw Error(ErrorKind::invalid_input, "field shape does not match grid spec");
    }
}

} // namespace

void validate(const GridSpec& gs) {
    if (gs.nx < 3 || gs.ny < 3) throw Error(ErrorKind::configuration, "grid.nx and grid.ny must be >= 3");
    if (!(gs.h > 0.0) || !std::isfinite(gs.h)) throw Error(ErrorKind::configuration, "grid.h must be > 0");
    if (!(gs.d1 >= 0.0) || !std::isfinite(gs.d1)) throw Error(ErrorKind::configuration, "grid.d1 must be >= 0");
    if (!(gs.d2 >= 0.0) || !std::isfinite(gs.d2)) throw Error(ErrorKind::configuration, "grid.d2 must be >= 0");
}

Grid2 laplacian(const Grid2& grid, double h) {
    Grid2 out(grid.nx, grid.ny);
    const double inv_h2 = 1.0 / (h * h);
    for (int y = 0; y < grid.ny; ++y) {
        // Ghost cells mirror across the cell face, so a wall contributes no flux.
        const int up = y == 0 ? 0 : y - 1;
        const int down = y == grid.ny - 1 ? y : y + 1;
        for (int x = 0; x < grid.nx; ++x) {
            const int left = x == 0 ? 0 : x - 1;
            const int right = x == grid.nx - 1 ? x : x + 1;
            const double centre = grid.at(x, y);
            // Differences first so a constant field gives exactly zero.
            out.at(x, y) = ((grid.at(left, y) - centre) + (grid.at(right, y) - centre) +
                            (grid.at(x, up) - centre) + (grid.at(x, down) - centre)) *
                           inv_h2;
        }
    }
    return out;
}

double max_stable_dt(const GridSpec& gs) {
    const double d = std::max(gs.d1, gs.d2);
    if (d <= 0.0) return std::numeric_limits<double>::infinity();
    return 0.9 * gs.h * gs.h / (4.0 * d);
}

Field step_pde(const NondimParams& params, const Disturbance& dist, const GridSpec& gs, const Field& f, double dt) {
    validate(gs);
    require_same_shape(gs, f);
    if (!(dt > 0.0)) throw Error(ErrorKind::configuration, "dt must be > 0");
    const double limit = max_stable_dt(gs);
    if (dt > limit) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "dt = " << dt << " violates the diffusion stability bound; maximal admissible dt = " << limit;
        throw Error(ErrorKind::cfl, msg.str());
    }
    if (dist.noise.kind != NoiseKind::none) {
        throw Error(ErrorKind::configuration, "stochastic noise is not supported in spatial runs");
    }

    const Grid2 lap_r = gs.d1 > 0.0 ? laplacian(f.r, gs.h) : Grid2(gs.nx, gs.ny);
    const Grid2 lap_c = gs.d2 > 0.0 ? laplacian(f.c, gs.h) : Grid2(gs.nx, gs.ny);

    Field next{Grid2(gs.nx, gs.ny), Grid2(gs.nx, gs.ny), f.time + dt};
    for (std::size_t i = 0; i < f.r.data.size(); ++i) {
        Rate react{0.0, 0.0};
        if (gs.reaction) react = nondim_rhs(params, dist, f.time, State{f.r.data[i], f.c.data[i]});
        double r = f.r.data[i] + dt * (react.dr + gs.d1 * lap_r.data[i]);
        double c = f.c.data[i] + dt * (react.dc + gs.d2 * lap_c.data[i]);
        next.r.data[i] = std::max(r, 0.0);
        next.c.data[i] = std::max(c, 0.0);
    }
    return next;
}

std::vector<Field> run_pde(const NondimParams& params, const Disturbance& dist, const GridSpec& gs,
                           const Field& initial, double t1, double dt, double snapshot_every) {
    if (!(t1 > initial.time)) throw Error(ErrorKind::configuration, "t1 must exceed the initial field time");
    if (!(dt > 0.0)) throw Error(ErrorKind::configuration, "dt must be > 0");
    if (!(snapshot_every >= dt * (1.0 - 1e-12))) {
        throw Error(ErrorKind::configuration, "grid.snapshot_every must be >= dt");
    }
    const double t0 = initial.time;
    const auto steps = static_cast<long long>(std::ceil((t1 - t0) / dt - 1e-9));
    const long long stride = std::max(1LL, std::llround(snapshot_every / dt));

    std::vector<Field> snapshots{initial};
    Field f = initial;
    for (long long k = 0; k < steps; ++k) {
        const double t_next = k + 1 == steps ? t1 : t0 + static_cast<double>(k + 1) * dt;
        f = step_pde(params, dist, gs, f, t_next - f.time);
        f.time = t_next;
        if ((k + 1) % stride == 0 || k + 1 == steps) snapshots.push_back(f);
    }
    return snapshots;
}

} // namespace predprey
