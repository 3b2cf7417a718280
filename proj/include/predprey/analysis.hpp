#pragma once

#include <optional>
#include <span>

#include "predprey/integrators.hpp"

namespace predprey {

inline constexpr std::size_t kMinSpectralSamples = 64;

struct PeriodEstimate {
    std::optional<double> period; ///< absent when the series is flat
    double frequency = 0.0;       ///< angular, 2*pi/period
    double amplitude = 0.0;       ///< half the peak-to-trough range after mean removal
    double sharpness = 0.0;       ///< peak magnitude over median magnitude of the spectrum
};

/// Mean-removed, Hann-windowed magnitude spectrum; the peak bin is refined
/// with a parabola through the log-magnitudes of its two neighbours.
PeriodEstimate dominant_period(std::span<const double> series, double dt);

/// Time shift maximizing the normalized cross-correlation of the mean-removed
/// series, searched over half a dominant period either way. Positive means the
/// predator series lags the prey series.
double phase_lag(std::span<const double> r_series, std::span<const double> c_series, double dt);

struct WindowStats {
    std::size_t count = 0;
    double mean_r = 0.0;
    double mean_c = 0.0;
    double var_r = 0.0; ///< population variance (divide by count)
    double var_c = 0.0;
};

WindowStats windowed_stats(const Trajectory& traj, double t_start, double t_end);

/// Variance of the residual after a least-squares straight-line fit.
double detrended_variance(std::span<const double> series);

struct OscillationReport {
    std::optional<double> dominant_period;
    double dominant_frequency = 0.0;
    double peak_amplitude = 0.0;
    double mean_r = 0.0;
    double mean_c = 0.0;
    double var_r = 0.0;
    double var_c = 0.0;
    double lag_rc = 0.0;
    double sharpness_r = 0.0;
    double sharpness_c = 0.0;
    double amplitude_c = 0.0;
};

/// Full report on a uniformly sampled trajectory. With steady_window set,
/// only samples in the second half of the time span are used.
OscillationReport analyze(const Trajectory& traj, bool steady_window = true);

} // namespace predprey
