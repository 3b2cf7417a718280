#include "predprey/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "predprey/error.hpp"

namespace predprey {

namespace {

void require_finite(const State& s) {
    if (!std::isfinite(s.r) || !std::isfinite(s.c)) {
        throw Error(ErrorKind::invalid_input, "state must be finite");
    }
}

void require_nonnegative(double value, const char* name) {
    if (!(value >= 0.0) || !std::isfinite(value)) {
        throw Error(ErrorKind::invalid_parameter,
                    std::string(name) + " must be finite and >= 0");
    }
}

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw Error(ErrorKind::invalid_parameter, std::string(name) + " must be finite and > 0");
    }
}

// Holling type-III term r^2 / (1 + r^2) in nondimensional units.
double sigmoid_uptake(double r) noexcept {
    const double r2 = r * r;
    return r2 / (1.0 + r2);
}

} // namespace

std::string_view to_string(NoiseKind kind) noexcept {
    switch (kind) {
    case NoiseKind::none: return "none";
    case NoiseKind::white: return "white";
    case NoiseKind::colored: return "colored";
    }
    return "none";
}

NoiseKind noise_kind_from_string(std::string_view name) {
    if (name == "none") return NoiseKind::none;
    if (name == "white") return NoiseKind::white;
    if (name == "colored") return NoiseKind::colored;
    throw Error(ErrorKind::invalid_parameter,
                "unknown noise kind '" + std::string(name) + "' (expected none, white or colored)");
}

void validate(const ClassicParams& params) {
    require_nonnegative(params.a1, "a1");
    require_nonnegative(params.a2, "a2");
    require_nonnegative(params.b1, "b1");
    require_nonnegative(params.b2, "b2");
    require_nonnegative(params.m_harvested, "m_harvested");
    require_nonnegative(params.n_total, "n_total");
    if (params.m_harvested > params.n_total) {
        throw Error(ErrorKind::invalid_parameter, "m_harvested must not exceed n_total");
    }
}

void validate(const RawParams& params) {
    require_nonnegative(params.u, "u");
    require_positive(params.m_cap, "m_cap");
    require_nonnegative(params.k, "k");
    require_positive(params.p, "p");
    require_nonnegative(params.q, "q");
    require_nonnegative(params.effort_E, "effort_E");
    require_nonnegative(params.v, "v");
    require_positive(params.n_cap, "n_cap");
    require_nonnegative(params.e_conv, "e_conv");
    require_nonnegative(params.d, "d");
}

void validate(const NondimParams& params) {
    require_nonnegative(params.beta, "beta");
    require_nonnegative(params.alpha, "alpha");
    require_nonnegative(params.delta, "delta");
    require_nonnegative(params.q, "q");
    require_nonnegative(params.effort_E, "effort_E");
    require_nonnegative(params.sigma, "sigma");
    require_nonnegative(params.rho, "rho");
    require_nonnegative(params.mu, "mu");
}

void validate(const NoiseSpec& noise) {
    if (noise.kind == NoiseKind::none) return;
    require_nonnegative(noise.intensity, "noise.intensity");
    if (noise.kind == NoiseKind::colored) require_positive(noise.tau, "noise.tau");
}

void validate(const Disturbance& dist) {
    require_nonnegative(dist.amp_prey_A, "amp_prey_A");
    require_nonnegative(dist.amp_pred_Abar, "amp_pred_Abar");
    require_nonnegative(dist.omega, "omega");
    if (!std::isfinite(dist.phi) || dist.phi <= -std::numbers::pi || dist.phi > std::numbers::pi) {
        throw Error(ErrorKind::invalid_parameter, "phi must lie in (-pi, pi]");
    }
    validate(dist.noise);
}

Rate lv_classic_rhs(const ClassicParams& params, const State& s) {
    require_finite(s);
    const double h = params.harvest();
    return {
        params.a1 * s.r - params.a2 * s.r * s.c - h * s.r,
        -params.b1 * s.c + params.b2 * s.r * s.c - h * s.c,
    };
}

double holling(HollingType type, double k, double p, double r) {
    if (!(p > 0.0)) throw Error(ErrorKind::invalid_parameter, "saturation constant p must be > 0");
    switch (type) {
    case HollingType::I: return std::min(k * r / p, k);
    case HollingType::II: return k * r / (p + r);
    case HollingType::III: return k * r * r / (p + r * r);
    }
    return 0.0;
}

Rate dimensional_rhs(const RawParams& params, const State& s) {
    require_finite(s);
    const double uptake = holling(HollingType::III, params.k, params.p, s.r);
    return {
        params.u * s.r * (1.0 - s.r / params.m_cap) - uptake * s.c - params.q * params.effort_E * s.r,
        params.v * s.c * (1.0 - s.c / params.n_cap) + params.e_conv * uptake * s.c - params.d * s.c,
    };
}

Rate autonomous_rhs(const NondimParams& params, const State& s) {
    require_finite(s);
    const double uptake = sigmoid_uptake(s.r);
    return {
        s.r * (params.beta - s.r) - params.alpha * uptake * s.c - params.harvest() * s.r,
        s.c * (params.sigma - s.c) + params.rho * uptake * s.c - params.mu * s.c,
    };
}

Rate nondim_rhs(const NondimParams& params, const Disturbance& dist, double t, const State& s) {
    if (!std::isfinite(t)) throw Error(ErrorKind::invalid_input, "time must be finite");
    Rate rate = autonomous_rhs(params, s);
    rate.dr += dist.amp_prey_A * std::sin(dist.omega * t);
    rate.dc += dist.amp_pred_Abar * std::sin(dist.omega * t + dist.phi);
    return rate;
}

} // namespace predprey
