#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "predprey/error.hpp"
#include "predprey/integrators.hpp"
#include "predprey/spatial.hpp"

using namespace predprey;

namespace {

NondimParams simulation_params() { return {0.2, 1.0, 0.066, 1.0, 0.125, 0.1, 0.05, 0.05}; }

Disturbance simulation_forcing() {
    Disturbance d;
    d.amp_prey_A = 1.0;
    d.amp_pred_Abar = 1.0;
    d.omega = 2 * std::numbers::pi / 12;
    d.phi = std::numbers::pi / 4;
    return d;
}

Grid2 random_grid(int nx, int ny, std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    Grid2 g(nx, ny);
    for (double& v : g.data) v = u(rng);
    return g;
}

double total(const Grid2& g) { return std::accumulate(g.data.begin(), g.data.end(), 0.0); }

double variance(const Grid2& g) {
    const double m = total(g) / static_cast<double>(g.data.size());
    double acc = 0.0;
    for (double v : g.data) acc += (v - m) * (v - m);
    return acc / static_cast<double>(g.data.size());
}

bool is_uniform(const Grid2& g) {
    return std::all_of(g.data.begin(), g.data.end(), [&](double v) { return v == g.data.front(); });
}

} // namespace

TEST_CASE("laplacian of a constant grid is zero") {
    const Grid2 g(7, 5, 3.14159);
    for (double v : laplacian(g, 0.3).data) CHECK(v == 0.0);
}

TEST_CASE("laplacian 3x3 hand stencil") {
    Grid2 g(3, 3);
    g.at(1, 1) = 1.0;
    const Grid2 lap = laplacian(g, 1.0);
    CHECK(lap.at(1, 1) == -4.0);
    CHECK(lap.at(1, 0) == 1.0);
    CHECK(lap.at(0, 1) == 1.0);
    CHECK(lap.at(2, 1) == 1.0);
    CHECK(lap.at(1, 2) == 1.0);
    CHECK(lap.at(0, 0) == 0.0);
    CHECK(lap.at(2, 0) == 0.0);
    CHECK(lap.at(0, 2) == 0.0);
    CHECK(lap.at(2, 2) == 0.0);
}

TEST_CASE("laplacian sums to zero under zero flux") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 50; ++i) {
        const Grid2 g = random_grid(3 + i % 11, 3 + i % 7, rng, -5.0, 5.0);
        CHECK(std::abs(total(laplacian(g, 0.7))) <= 1e-11);
    }
}

TEST_CASE("diffusion-free uniform field follows the explicit Euler ODE") {
    GridSpec gs{8, 8, 1.0, 0.0, 0.0, true};
    Field f{Grid2(8, 8, 2.0), Grid2(8, 8, 1.0), 0.0};
    const auto snaps = run_pde(simulation_params(), simulation_forcing(), gs, f, 10.0, 0.05, 1.0);

    IntegrationSpec spec;
    spec.method = Method::euler_maruyama;
    spec.t0 = 0.0;
    spec.t1 = 10.0;
    spec.dt = 0.05;
    spec.sample_every = 1.0;
    const Trajectory ode = integrate(simulation_params(), simulation_forcing(), spec, {2.0, 1.0});
    REQUIRE(snaps.size() == ode.size());
    for (std::size_t k = 0; k < snaps.size(); ++k) {
        CHECK(snaps[k].time == doctest::Approx(ode.times[k]).epsilon(1e-12));
        for (std::size_t i = 0; i < snaps[k].r.data.size(); ++i) {
            CHECK(std::abs(snaps[k].r.data[i] - ode.states[k].r) <= 1e-8);
            CHECK(std::abs(snaps[k].c.data[i] - ode.states[k].c) <= 1e-8);
        }
    }
}

TEST_CASE("uniform field stays uniform with diffusion") {
    GridSpec gs{16, 12, 1.0, 0.1, 0.2, true};
    Field f{Grid2(16, 12, 2.0), Grid2(16, 12, 1.0), 0.0};
    const auto snaps = run_pde(simulation_params(), simulation_forcing(), gs, f, 12.0, 0.05, 3.0);
    CHECK(snaps.back().time == 12.0);
    for (const Field& s : snaps) {
        CHECK(is_uniform(s.r));
        CHECK(is_uniform(s.c));
    }
}

TEST_CASE("pure diffusion conserves mass and smooths") {
    std::mt19937_64 rng(9);
    GridSpec gs{20, 16, 1.0, 0.3, 0.1, false};
    Field f{random_grid(20, 16, rng), random_grid(20, 16, rng), 0.0};
    const double dt = 0.5 * max_stable_dt(gs);
    const double mass_r = total(f.r);
    const double mass_c = total(f.c);
    double max_r = *std::max_element(f.r.data.begin(), f.r.data.end());
    for (int step = 0; step < 1000; ++step) {
        const Field next = step_pde(simulation_params(), simulation_forcing(), gs, f, dt);
        CHECK(std::abs(total(next.r) - total(f.r)) <= 1e-12 * total(f.r));
        const double new_max = *std::max_element(next.r.data.begin(), next.r.data.end());
        CHECK(new_max <= max_r);
        max_r = new_max;
        f = next;
    }
    CHECK(std::abs(total(f.r) - mass_r) <= 1e-10 * mass_r);
    CHECK(std::abs(total(f.c) - mass_c) <= 1e-10 * mass_c);

    Field start{random_grid(20, 16, rng), random_grid(20, 16, rng), 0.0};
    const auto snaps = run_pde(simulation_params(), simulation_forcing(), gs, start, 20.0, dt, 2.0);
    for (std::size_t k = 1; k < snaps.size(); ++k) CHECK(variance(snaps[k].r) < variance(snaps[k - 1].r));
}

TEST_CASE("zero field without forcing stays zero") {
    GridSpec gs{10, 10, 1.0, 0.1, 0.1, true};
    Field f{Grid2(10, 10), Grid2(10, 10), 0.0};
    for (const Field& s : run_pde(simulation_params(), Disturbance{}, gs, f, 5.0, 0.1, 1.0)) {
        CHECK(total(s.r) == 0.0);
        CHECK(total(s.c) == 0.0);
    }
}

TEST_CASE("CFL guard") {
    GridSpec gs{10, 10, 1.0, 0.5, 0.1, true};
    CHECK(max_stable_dt(gs) == doctest::Approx(0.45));
    Field f{Grid2(10, 10, 1.0), Grid2(10, 10, 1.0), 0.0};
    CHECK_NOTHROW(step_pde(simulation_params(), simulation_forcing(), gs, f, 0.45));
    try {
        step_pde(simulation_params(), simulation_forcing(), gs, f, 0.46);
        FAIL("expected CFL error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::cfl);
        CHECK(std::string(e.what()).find("0.45") != std::string::npos);
    }
    CHECK(std::isinf(max_stable_dt(GridSpec{10, 10, 1.0, 0.0, 0.0, true})));
}

TEST_CASE("CFL-admissible random runs stay finite") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        GridSpec gs{12, 10, 0.5 + u(rng), u(rng), u(rng), true};
        Field f{random_grid(12, 10, rng, 0.0, 3.0), random_grid(12, 10, rng, 0.0, 3.0), 0.0};
        const double dt = std::min(0.05, max_stable_dt(gs));
        for (int step = 0; step < 10000; ++step) f = step_pde(simulation_params(), simulation_forcing(), gs, f, dt);
        for (std::size_t i = 0; i < f.r.data.size(); ++i) {
            CHECK(std::isfinite(f.r.data[i]));
            CHECK(std::isfinite(f.c.data[i]));
            CHECK(f.r.data[i] >= 0.0);
        }
    }
}

TEST_CASE("grid refinement leaves a uniform solution unchanged") {
    Field coarse{Grid2(8, 8, 2.0), Grid2(8, 8, 1.0), 0.0};
    Field fine{Grid2(16, 16, 2.0), Grid2(16, 16, 1.0), 0.0};
    GridSpec gs_coarse{8, 8, 1.0, 0.1, 0.1, true};
    GridSpec gs_fine{16, 16, 0.5, 0.1, 0.1, true};
    const double dt = 0.5;
    CHECK(dt <= max_stable_dt(gs_coarse));
    const double dt_fine = std::min(dt, max_stable_dt(gs_fine));
    // Same time step on both grids so only the spatial discretization differs.
    const auto a = run_pde(simulation_params(), simulation_forcing(), gs_coarse, coarse, 30.0, dt_fine, 30.0);
    const auto b = run_pde(simulation_params(), simulation_forcing(), gs_fine, fine, 30.0, dt_fine, 30.0);
    CHECK(std::abs(a.back().r.data[0] - b.back().r.data[0]) < 1e-6);
    CHECK(std::abs(a.back().c.data[0] - b.back().c.data[0]) < 1e-6);
}

TEST_CASE("grid validation and noise rejection") {
    Field f{Grid2(2, 5), Grid2(2, 5), 0.0};
    CHECK_THROWS_AS(step_pde(simulation_params(), Disturbance{}, GridSpec{2, 5, 1.0, 0.1, 0.1, true}, f, 0.1), Error);
    Disturbance noisy;
    noisy.noise.kind = NoiseKind::white;
    Field g{Grid2(4, 4), Grid2(4, 4), 0.0};
    CHECK_THROWS_AS(step_pde(simulation_params(), noisy, GridSpec{4, 4, 1.0, 0.1, 0.1, true}, g, 0.1), Error);
}
