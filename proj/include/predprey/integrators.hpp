#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "predprey/model.hpp"

namespace predprey {

enum class Method { rk4, adaptive, euler_maruyama };

std::string_view to_string(Method method) noexcept;
Method method_from_string(std::string_view name);

struct IntegrationSpec {
    Method method = Method::rk4;
    double t0 = 0.0;
    double t1 = 1.0;
    double dt = 0.01; ///< fixed step, or initial step in adaptive mode
    double abs_tol = 1e-9;
    double rel_tol = 1e-9;
    double sample_every = 0.01;
    bool clamp_negative = true;
};

/// Throws ErrorKind::configuration on an invalid spec or a noisy
/// disturbance paired with a deterministic method.
void validate(const IntegrationSpec& spec, const NoiseSpec& noise);

enum class Component { prey, predator };

struct ClampEvent {
    double time = 0.0;
    Component component = Component::prey;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    std::vector<ClampEvent> clamp_events;
    std::map<std::string, std::string> meta;

    std::size_t size() const noexcept { return times.size(); }
    bool empty() const noexcept { return times.empty(); }
};

/// Name of the generator recorded in Trajectory::meta.
inline constexpr std::string_view kGeneratorName = "std::mt19937_64";

/// Advances the forced field from spec.t0 to spec.t1. Fixed-step methods
/// march on t0 + k*dt with the last step shortened to land on t1, and
/// sample every round(sample_every/dt) steps plus the final state.
Trajectory integrate(const NondimParams& params, const Disturbance& dist, const IntegrationSpec& spec,
                     const State& s0);

/// Logistic test problem dr/dt = r(beta - r) used for scheme validation.
struct LogisticProblem {
    double beta = 1.0;
    double r0 = 0.5;
    double t1 = 1.0;

    double exact(double t) const noexcept;
};

/// |numeric - exact| at problem.t1 for the given method and step.
double logistic_global_error(const LogisticProblem& problem, Method method, double dt, double rel_tol = 1e-9,
                             double abs_tol = 1e-12);

/// Least-squares slope of log(error) against log(dt).
double convergence_order(const LogisticProblem& problem, Method method, std::span<const double> dts);

} // namespace predprey
