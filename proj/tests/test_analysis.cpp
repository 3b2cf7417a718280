#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <numbers>
#include <random>

#include "predprey/analysis.hpp"
#include "predprey/error.hpp"
#include "support/oracles.hpp"

using namespace predprey;

namespace {

std::vector<double> sinusoid(double period, double dt, double t_end, double shift = 0.0) {
    std::vector<double> out;
    for (int i = 0; i * dt <= t_end + 1e-9; ++i) out.push_back(std::sin(2 * std::numbers::pi * (i * dt - shift) / period));
    return out;
}

Trajectory make_trajectory(const std::vector<double>& r, const std::vector<double>& c, double dt) {
    Trajectory traj;
    for (std::size_t i = 0; i < r.size(); ++i) {
        traj.times.push_back(i * dt);
        traj.states.push_back({r[i], c[i]});
    }
    return traj;
}

} // namespace

TEST_CASE("dominant period of a constructed sinusoid") {
    const auto x = sinusoid(12.0, 0.1, 120.0);
    const PeriodEstimate est = dominant_period(x, 0.1);
    REQUIRE(est.period);
    CHECK(std::abs(*est.period - 12.0) <= 0.02 * 12.0);
    CHECK(est.frequency * *est.period == doctest::Approx(2 * std::numbers::pi).epsilon(1e-9));
    CHECK(est.amplitude == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(std::abs(oracle::dft_peak_period(x, 0.1) - *est.period) <= 0.1 * 12.0);
}

TEST_CASE("dominant period recovers any period in [5, 50]") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(5.0, 50.0);
    std::uniform_real_distribution<double> phase(0.0, 10.0);
    for (int i = 0; i < 200; ++i) {
        const double period = u(rng);
        const double dt = period / 40.0;
        const auto x = sinusoid(period, dt, 10.0 * period, phase(rng));
        const PeriodEstimate est = dominant_period(x, dt);
        REQUIRE(est.period);
        CAPTURE(period);
        CHECK(std::abs(*est.period - period) <= 0.02 * period);
    }
}

TEST_CASE("flat and short series") {
    const std::vector<double> flat(200, 3.0);
    const PeriodEstimate est = dominant_period(flat, 0.1);
    CHECK(!est.period);
    CHECK(est.amplitude == 0.0);

    try {
        dominant_period(std::vector<double>(63, 1.0), 0.1);
        FAIL("expected insufficient data");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::insufficient_data);
    }
}

TEST_CASE("phase lag of shifted series") {
    const double dt = 0.1;
    const auto r = sinusoid(12.0, dt, 120.0);
    std::vector<double> c(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) c[i] = i >= 3 ? r[i - 3] : 0.0;
    CHECK(std::abs(phase_lag(r, c, dt) - 3 * dt) <= dt);
    CHECK(phase_lag(r, r, dt) == 0.0);
    CHECK(std::abs(phase_lag(c, r, dt) + 3 * dt) <= dt);
}

TEST_CASE("phase lag is antisymmetric") {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> noise(0.0, 0.3);
    std::uniform_real_distribution<double> shift(-4.0, 4.0);
    for (int trial = 0; trial < 30; ++trial) {
        const double dt = 0.1;
        auto r = sinusoid(10.0, dt, 100.0);
        auto c = sinusoid(10.0, dt, 100.0, shift(rng));
        for (double& v : r) v += noise(rng);
        for (double& v : c) v += noise(rng);
        CHECK(phase_lag(r, c, dt) == -phase_lag(c, r, dt));
    }
}

TEST_CASE("phase lag input validation") {
    CHECK_THROWS_AS(phase_lag(std::vector<double>(100, 0.0), std::vector<double>(99, 0.0), 0.1), Error);
    CHECK_THROWS_AS(phase_lag(std::vector<double>(10, 0.0), std::vector<double>(10, 0.0), 0.1), Error);
}

TEST_CASE("windowed statistics") {
    const std::vector<double> constant(50, 2.5);
    const WindowStats a = windowed_stats(make_trajectory(constant, constant, 0.1), 0.0, 4.9);
    CHECK(a.mean_r == 2.5);
    CHECK(a.var_r == 0.0);

    std::vector<double> alternating;
    for (int i = 0; i < 100; ++i) alternating.push_back(i % 2 == 0 ? 1.5 : -1.5);
    const WindowStats b = windowed_stats(make_trajectory(alternating, alternating, 0.1), 0.0, 9.9);
    CHECK(b.mean_r == doctest::Approx(0.0).scale(1.0));
    CHECK(b.var_r == doctest::Approx(2.25));

    const double period = 12.0;
    const double dt = period / 1200.0;
    std::vector<double> forcing;
    for (int i = 0; i < 1200; ++i) forcing.push_back(std::sin(2 * std::numbers::pi * i * dt / period));
    const WindowStats c = windowed_stats(make_trajectory(forcing, forcing, dt), 0.0, 1199 * dt);
    CHECK(std::abs(c.mean_r) <= 1e-3);

    CHECK_THROWS_AS(windowed_stats(make_trajectory(constant, constant, 0.1), 1.01, 1.09), Error);
    CHECK_THROWS_AS(windowed_stats(make_trajectory(constant, constant, 0.1), 0.0, 100.0), Error);
}

TEST_CASE("windowed statistics ignore sample order") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::vector<double> r(80), c(80);
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] = u(rng);
        c[i] = u(rng);
    }
    const WindowStats a = windowed_stats(make_trajectory(r, c, 1.0), 0.0, 79.0);
    std::vector<std::size_t> order(r.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<double> r2, c2;
    for (auto i : order) {
        r2.push_back(r[i]);
        c2.push_back(c[i]);
    }
    const WindowStats b = windowed_stats(make_trajectory(r2, c2, 1.0), 0.0, 79.0);
    CHECK(b.mean_r == doctest::Approx(a.mean_r).epsilon(1e-12));
    CHECK(b.var_r == doctest::Approx(a.var_r).epsilon(1e-12));
    CHECK(b.mean_c == doctest::Approx(a.mean_c).epsilon(1e-12));
    CHECK(b.var_c == doctest::Approx(a.var_c).epsilon(1e-12));
}

TEST_CASE("detrended variance removes a linear trend") {
    std::vector<double> line;
    for (int i = 0; i < 100; ++i) line.push_back(3.0 + 0.25 * i);
    CHECK(detrended_variance(line) <= 1e-20);
    std::vector<double> wiggle;
    for (int i = 0; i < 100; ++i) wiggle.push_back(0.25 * i + (i % 2 == 0 ? 1.0 : -1.0));
    CHECK(detrended_variance(wiggle) == doctest::Approx(1.0).epsilon(1e-3));
}
