#pragma once

#include <cstdint>
#include <string_view>

namespace predprey {

/// Classic Lotka-Volterra coefficients with the human-harvest term.
/// The harvest coefficient a3 = b3 = n_total - m_harvested acts on both species.
struct ClassicParams {
    double a1 = 0.0; ///< prey natural growth rate
    double a2 = 0.0; ///< predation interaction coefficient
    double b1 = 0.0; ///< predator decline rate
    double b2 = 0.0; ///< conversion interaction coefficient
    double n_total = 0.0;
    double m_harvested = 0.0;

    double harvest() const noexcept { return n_total - m_harvested; }
};

/// Dimensional coefficients of the harvested Holling type-III model.
struct RawParams {
    double u = 0.0;        ///< prey growth rate
    double m_cap = 1.0;    ///< prey carrying capacity
    double k = 0.0;        ///< maximum predation rate
    double p = 1.0;        ///< saturation constant (prey units squared)
    double q = 0.0;        ///< catchability
    double effort_E = 0.0; ///< harvest effort
    double v = 0.0;        ///< predator growth rate
    double n_cap = 1.0;    ///< predator carrying capacity
    double e_conv = 0.0;   ///< conversion rate
    double d = 0.0;        ///< predator death rate
};

/// Dimensionless coefficients; the primitive parameterization of the forced model.
struct NondimParams {
    double beta = 0.0;
    double alpha = 0.0;
    double delta = 0.0;
    double q = 0.0;
    double effort_E = 0.0;
    double sigma = 0.0;
    double rho = 0.0;
    double mu = 0.0;

    /// Effective harvest rate delta * q * E.
    double harvest() const noexcept { return delta * q * effort_E; }
};

enum class NoiseKind { none, white, colored };

std::string_view to_string(NoiseKind kind) noexcept;
NoiseKind noise_kind_from_string(std::string_view name);

struct NoiseSpec {
    NoiseKind kind = NoiseKind::none;
    double intensity = 0.0;
    double tau = 1.0; ///< correlation time, colored kind only
    std::uint64_t seed = 0;
};

/// Sinusoidal forcing A sin(wt) on prey and Abar sin(wt + phi) on predator,
/// plus the optional stochastic term applied by the integrator.
struct Disturbance {
    double amp_prey_A = 0.0;
    double amp_pred_Abar = 0.0;
    double omega = 0.0;
    double phi = 0.0;
    NoiseSpec noise;
};

struct State {
    double r = 0.0;
    double c = 0.0;

    friend bool operator==(const State&, const State&) = default;
};

/// Time derivative (dr/dt, dc/dt).
struct Rate {
    double dr = 0.0;
    double dc = 0.0;

    friend bool operator==(const Rate&, const Rate&) = default;
};

enum class HollingType { I, II, III };

void validate(const ClassicParams& params);
void validate(const RawParams& params);
void validate(const NondimParams& params);
void validate(const NoiseSpec& noise);
void validate(const Disturbance& dist);

Rate lv_classic_rhs(const ClassicParams& params, const State& s);

/// Functional response. Type I is linear k*r/p capped at k.
double holling(HollingType type, double k, double p, double r);

Rate dimensional_rhs(const RawParams& params, const State& s);

/// Forced nondimensional vector field without diffusion and without noise.
/// With A = Abar = 0 this is the autonomous system.
Rate nondim_rhs(const NondimParams& params, const Disturbance& dist, double t, const State& s);

/// Autonomous part only (forcing dropped).
Rate autonomous_rhs(const NondimParams& params, const State& s);

} // namespace predprey
