#include "predprey/analysis.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <memory>
#include <numbers>
#include <numeric>
#include <vector>

#include "predprey/error.hpp"

namespace predprey {

namespace {

constexpr double kFlatVariance = 1e-15;

struct FftwDeleter {
    void operator()(fftw_plan_s* plan) const noexcept { fftw_destroy_plan(plan); }
};

std::vector<double> magnitude_spectrum(std::vector<double> windowed) {
    const int n = static_cast<int>(windowed.size());
    std::vector<std::complex<double>> out(static_cast<std::size_t>(n / 2 + 1));
    std::unique_ptr<fftw_plan_s, FftwDeleter> plan(fftw_plan_dft_r2c_1d(
        n, windowed.data(), reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE));
    fftw_execute(plan.get());
    std::vector<double> mag(out.size());
    std::transform(out.begin(), out.end(), mag.begin(), [](const std::complex<double>& z) { return std::abs(z); });
    return mag;
}

double mean_of(std::span<const double> xs) {
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double variance_of(std::span<const double> xs) {
    const double m = mean_of(xs);
    double acc = 0.0;
    for (double x : xs) acc += (x - m) * (x - m);
    return acc / static_cast<double>(xs.size());
}

void require_samples(std::size_t n) {
    if (n < kMinSpectralSamples) {
        throw Error(ErrorKind::insufficient_data,
                    "need at least " + std::to_string(kMinSpectralSamples) + " samples, got " + std::to_string(n));
    }
}

double pearson(std::span<const double> a, std::span<const double> b) {
    const double ma = mean_of(a);
    const double mb = mean_of(b);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - ma;
        const double db = b[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa <= 0.0 || sbb <= 0.0) return 0.0;
    return sab / std::sqrt(saa * sbb);
}

} // namespace

PeriodEstimate dominant_period(std::span<const double> series, double dt) {
    require_samples(series.size());
    if (!(dt > 0.0)) throw Error(ErrorKind::invalid_input, "sample interval must be > 0");

    PeriodEstimate out;
    if (variance_of(series) < kFlatVariance) return out;

    const std::size_t n = series.size();
    const double mean = mean_of(series);
    std::vector<double> windowed(n);
    double lo = series[0] - mean, hi = lo;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = series[i] - mean;
        lo = std::min(lo, x);
        hi = std::max(hi, x);
        const double hann = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                                  static_cast<double>(n - 1)));
        windowed[i] = x * hann;
    }
    out.amplitude = 0.5 * (hi - lo);

    const std::vector<double> mag = magnitude_spectrum(std::move(windowed));
    // Skip DC; the last bin has no right neighbour.
    std::size_t peak = 1;
    for (std::size_t k = 2; k + 1 < mag.size(); ++k) {
        if (mag[k] > mag[peak]) peak = k;
    }

    double offset = 0.0;
    if (peak + 1 < mag.size() && mag[peak - 1] > 0.0 && mag[peak + 1] > 0.0 && mag[peak] > 0.0) {
        const double a = std::log(mag[peak - 1]);
        const double b = std::log(mag[peak]);
        const double c = std::log(mag[peak + 1]);
        const double curvature = a - 2.0 * b + c;
        if (curvature < 0.0) offset = std::clamp(0.5 * (a - c) / curvature, -0.5, 0.5);
    }
    const double bin = static_cast<double>(peak) + offset;
    const double period = static_cast<double>(n) * dt / bin;
    out.period = period;
    out.frequency = 2.0 * std::numbers::pi / period;

    std::vector<double> sorted(mag.begin() + 1, mag.end());
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    const double median = sorted[sorted.size() / 2];
    out.sharpness = median > 0.0 ? mag[peak] / median : std::numeric_limits<double>::infinity();
    return out;
}

double phase_lag(std::span<const double> r_series, std::span<const double> c_series, double dt) {
    if (r_series.size() != c_series.size()) throw Error(ErrorKind::invalid_input, "series lengths differ");
    require_samples(r_series.size());
    if (!(dt > 0.0)) throw Error(ErrorKind::invalid_input, "sample interval must be > 0");

    const auto n = static_cast<long long>(r_series.size());
    const PeriodEstimate est = dominant_period(r_series, dt);
    long long max_lag = n / 4;
    if (est.period) max_lag = std::min(max_lag, static_cast<long long>(std::floor(0.5 * *est.period / dt)));
    max_lag = std::max(max_lag, 1LL);

    long long best_lag = 0;
    double best = -std::numeric_limits<double>::infinity();
    // Search outward from zero so ties resolve to the smallest |lag|, then to
    // the positive side; swapping the inputs mirrors every value.
    for (long long m = 0; m <= max_lag; ++m) {
        for (long long k : {m, -m}) {
            if (m == 0 && k != 0) continue;
            const auto overlap = static_cast<std::size_t>(n - std::abs(k));
            std::span<const double> a = k >= 0 ? r_series.subspan(0, overlap) : r_series.subspan(static_cast<std::size_t>(-k), overlap);
            std::span<const double> b = k >= 0 ? c_series.subspan(static_cast<std::size_t>(k), overlap) : c_series.subspan(0, overlap);
            const double corr = pearson(a, b);
            if (corr > best) {
                best = corr;
                best_lag = k;
            }
        }
    }
    return static_cast<double>(best_lag) * dt;
}

WindowStats windowed_stats(const Trajectory& traj, double t_start, double t_end) {
    if (traj.empty() || t_start < traj.times.front() - 1e-12 || t_end > traj.times.back() + 1e-12 ||
        !(t_end >= t_start)) {
        throw Error(ErrorKind::insufficient_data, "window lies outside the trajectory span");
    }
    WindowStats out;
    double sr = 0.0, sc = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        if (traj.times[i] < t_start || traj.times[i] > t_end) continue;
        sr += traj.states[i].r;
        sc += traj.states[i].c;
        ++out.count;
    }
    if (out.count == 0) throw Error(ErrorKind::insufficient_data, "no samples inside the window");
    const double n = static_cast<double>(out.count);
    out.mean_r = sr / n;
    out.mean_c = sc / n;
    double vr = 0.0, vc = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        if (traj.times[i] < t_start || traj.times[i] > t_end) continue;
        vr += (traj.states[i].r - out.mean_r) * (traj.states[i].r - out.mean_r);
        vc += (traj.states[i].c - out.mean_c) * (traj.states[i].c - out.mean_c);
    }
    out.var_r = vr / n;
    out.var_c = vc / n;
    return out;
}

double detrended_variance(std::span<const double> series) {
    const std::size_t n = series.size();
    if (n < 3) throw Error(ErrorKind::insufficient_data, "detrending needs at least 3 samples");
    const double xm = 0.5 * static_cast<double>(n - 1);
    const double ym = mean_of(series);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = static_cast<double>(i) - xm;
        sxy += dx * (series[i] - ym);
        sxx += dx * dx;
    }
    const double slope = sxy / sxx;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double resid = series[i] - ym - slope * (static_cast<double>(i) - xm);
        acc += resid * resid;
    }
    return acc / static_cast<double>(n);
}

OscillationReport analyze(const Trajectory& traj, bool steady_window) {
    if (traj.size() < 2) throw Error(ErrorKind::insufficient_data, "trajectory has fewer than 2 samples");
    const double t_start = steady_window ? 0.5 * (traj.times.front() + traj.times.back()) : traj.times.front();

    std::vector<double> r, c;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        if (traj.times[i] < t_start) continue;
        r.push_back(traj.states[i].r);
        c.push_back(traj.states[i].c);
    }
    require_samples(r.size());
    // Uniform sampling is assumed; the interval is taken from the window span.
    const double first = traj.times[traj.size() - r.size()];
    const double dt = (traj.times.back() - first) / static_cast<double>(r.size() - 1);

    OscillationReport out;
    const WindowStats stats = windowed_stats(traj, t_start, traj.times.back());
    out.mean_r = stats.mean_r;
    out.mean_c = stats.mean_c;
    out.var_r = stats.var_r;
    out.var_c = stats.var_c;

    const PeriodEstimate pr = dominant_period(r, dt);
    const PeriodEstimate pc = dominant_period(c, dt);
    out.dominant_period = pr.period;
    out.dominant_frequency = pr.frequency;
    out.peak_amplitude = pr.amplitude;
    out.sharpness_r = pr.sharpness;
    out.sharpness_c = pc.sharpness;
    out.amplitude_c = pc.amplitude;
    out.lag_rc = phase_lag(r, c, dt);
    return out;
}

} // namespace predprey
