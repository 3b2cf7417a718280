#include "predprey/integrators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "predprey/error.hpp"

namespace predprey {

namespace {

State axpy(const State& s, double h, const Rate& f) noexcept { return {s.r + h * f.dr, s.c + h * f.dc}; }

std::string fmt_double(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

class Stepper {
public:
    Stepper(const NondimParams& params, const Disturbance& dist) : params_(params), dist_(dist) {}

    Rate f(double t, const State& s) const { return nondim_rhs(params_, dist_, t, s); }

    State rk4(double t, const State& s, double h) const {
        const Rate k1 = f(t, s);
        const Rate k2 = f(t + 0.5 * h, axpy(s, 0.5 * h, k1));
        const Rate k3 = f(t + 0.5 * h, axpy(s, 0.5 * h, k2));
        const Rate k4 = f(t + h, axpy(s, h, k3));
        return {s.r + h / 6.0 * (k1.dr + 2.0 * k2.dr + 2.0 * k3.dr + k4.dr),
                s.c + h / 6.0 * (k1.dc + 2.0 * k2.dc + 2.0 * k3.dc + k4.dc)};
    }

    // Dormand-Prince 5(4). Returns the 5th-order solution and writes the
    // difference to the embedded 4th-order solution into err.
    State dopri(double t, const State& s, double h, State& err) const {
        static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
        static constexpr double a21 = 1.0 / 5;
        static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
        static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
        static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                                a54 = -212.0 / 729;
        static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                                a65 = -5103.0 / 18656;
        static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                                b6 = 11.0 / 84;
        static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                                e6 = 22.0 / 525, e7 = -1.0 / 40;

        const Rate k1 = f(t, s);
        const Rate k2 = f(t + c2 * h, {s.r + h * a21 * k1.dr, s.c + h * a21 * k1.dc});
        const Rate k3 = f(t + c3 * h, {s.r + h * (a31 * k1.dr + a32 * k2.dr), s.c + h * (a31 * k1.dc + a32 * k2.dc)});
        const Rate k4 = f(t + c4 * h, {s.r + h * (a41 * k1.dr + a42 * k2.dr + a43 * k3.dr),
                                       s.c + h * (a41 * k1.dc + a42 * k2.dc + a43 * k3.dc)});
        const Rate k5 = f(t + c5 * h, {s.r + h * (a51 * k1.dr + a52 * k2.dr + a53 * k3.dr + a54 * k4.dr),
                                       s.c + h * (a51 * k1.dc + a52 * k2.dc + a53 * k3.dc + a54 * k4.dc)});
        const Rate k6 =
            f(t + h, {s.r + h * (a61 * k1.dr + a62 * k2.dr + a63 * k3.dr + a64 * k4.dr + a65 * k5.dr),
                      s.c + h * (a61 * k1.dc + a62 * k2.dc + a63 * k3.dc + a64 * k4.dc + a65 * k5.dc)});
        const State next{s.r + h * (b1 * k1.dr + b3 * k3.dr + b4 * k4.dr + b5 * k5.dr + b6 * k6.dr),
                         s.c + h * (b1 * k1.dc + b3 * k3.dc + b4 * k4.dc + b5 * k5.dc + b6 * k6.dc)};
        const Rate k7 = f(t + h, next);
        err = {h * (e1 * k1.dr + e3 * k3.dr + e4 * k4.dr + e5 * k5.dr + e6 * k6.dr + e7 * k7.dr),
               h * (e1 * k1.dc + e3 * k3.dc + e4 * k4.dc + e5 * k5.dc + e6 * k6.dc + e7 * k7.dc)};
        return next;
    }

private:
    const NondimParams& params_;
    const Disturbance& dist_;
};

// Additive noise for Euler-Maruyama. White: intensity*sqrt(h)*xi.
// Colored: per-component OU state eta, dEta = -eta/tau dt + intensity*sqrt(2/tau) dW,
// entering the drift.
class NoiseSource {
public:
    explicit NoiseSource(const NoiseSpec& spec) : spec_(spec), rng_(spec.seed) {}

    State increment(double h) {
        switch (spec_.kind) {
        case NoiseKind::none:
            return {0.0, 0.0};
        case NoiseKind::white: {
            const double scale = spec_.intensity * std::sqrt(h);
            const double xr = normal_(rng_);
            const double xc = normal_(rng_);
            return {scale * xr, scale * xc};
        }
        case NoiseKind::colored: {
            const State drift{h * eta_.r, h * eta_.c};
            const double kick = spec_.intensity * std::sqrt(2.0 / spec_.tau) * std::sqrt(h);
            const double xr = normal_(rng_);
            const double xc = normal_(rng_);
            eta_.r += -eta_.r / spec_.tau * h + kick * xr;
            eta_.c += -eta_.c / spec_.tau * h + kick * xc;
            return drift;
        }
        }
        return {0.0, 0.0};
    }

private:
    NoiseSpec spec_;
    std::mt19937_64 rng_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    State eta_{};
};

void clamp(State& s, double t, bool enabled, std::vector<ClampEvent>& events) {
    if (!enabled) return;
    if (s.r < 0.0) {
        s.r = 0.0;
        events.push_back({t, Component::prey});
    }
    if (s.c < 0.0) {
        s.c = 0.0;
        events.push_back({t, Component::predator});
    }
}

void record_meta(Trajectory& traj, const NondimParams& p, const Disturbance& d, const IntegrationSpec& spec) {
    auto& m = traj.meta;
    m["beta"] = fmt_double(p.beta);
    m["alpha"] = fmt_double(p.alpha);
    m["delta"] = fmt_double(p.delta);
    m["q"] = fmt_double(p.q);
    m["effort_E"] = fmt_double(p.effort_E);
    m["sigma"] = fmt_double(p.sigma);
    m["rho"] = fmt_double(p.rho);
    m["mu"] = fmt_double(p.mu);
    m["amp_prey_A"] = fmt_double(d.amp_prey_A);
    m["amp_pred_Abar"] = fmt_double(d.amp_pred_Abar);
    m["omega"] = fmt_double(d.omega);
    m["phi"] = fmt_double(d.phi);
    m["noise_kind"] = std::string(to_string(d.noise.kind));
    m["noise_intensity"] = fmt_double(d.noise.intensity);
    m["noise_tau"] = fmt_double(d.noise.tau);
    m["seed"] = std::to_string(d.noise.seed);
    m["generator"] = std::string(kGeneratorName);
    m["method"] = std::string(to_string(spec.method));
    m["dt"] = fmt_double(spec.dt);
}

Trajectory integrate_fixed(const Stepper& stepper, const Disturbance& dist, const IntegrationSpec& spec,
                           const State& s0) {
    Trajectory traj;
    const double span = spec.t1 - spec.t0;
    const auto steps = static_cast<long long>(std::ceil(span / spec.dt - 1e-9));
    const long long stride = std::max(1LL, std::llround(spec.sample_every / spec.dt));
    traj.times.reserve(static_cast<std::size_t>(steps / stride + 2));
    traj.states.reserve(traj.times.capacity());

    NoiseSource noise(dist.noise);
    State s = s0;
    traj.times.push_back(spec.t0);
    traj.states.push_back(s);
    for (long long k = 0; k < steps; ++k) {
        const double t = spec.t0 + static_cast<double>(k) * spec.dt;
        const double t_next = k + 1 == steps ? spec.t1 : spec.t0 + static_cast<double>(k + 1) * spec.dt;
        const double h = t_next - t;
        if (spec.method == Method::rk4) {
            s = stepper.rk4(t, s, h);
        } else {
            const Rate drift = stepper.f(t, s);
            const State kick = noise.increment(h);
            s = {s.r + h * drift.dr + kick.r, s.c + h * drift.dc + kick.c};
        }
        clamp(s, t_next, spec.clamp_negative, traj.clamp_events);
        if ((k + 1) % stride == 0 || k + 1 == steps) {
            traj.times.push_back(t_next);
            traj.states.push_back(s);
        }
    }
    return traj;
}

Trajectory integrate_adaptive(const Stepper& stepper, const IntegrationSpec& spec, const State& s0) {
    Trajectory traj;
    State s = s0;
    double t = spec.t0;
    double h = spec.dt;
    const double h_min = spec.dt * 1e-12;
    traj.times.push_back(t);
    traj.states.push_back(s);

    long long next_sample = 1;
    const auto sample_time = [&](long long i) { return std::min(spec.t1, spec.t0 + i * spec.sample_every); };

    while (t < spec.t1) {
        const double target = sample_time(next_sample);
        const double step = std::min(h, target - t);
        State err;
        State trial = stepper.dopri(t, s, step, err);
        const double sc_r = spec.abs_tol + spec.rel_tol * std::max(std::abs(s.r), std::abs(trial.r));
        const double sc_c = spec.abs_tol + spec.rel_tol * std::max(std::abs(s.c), std::abs(trial.c));
        const double err_norm = std::max(std::abs(err.r) / sc_r, std::abs(err.c) / sc_c);
        if (!std::isfinite(err_norm)) {
            throw Error(ErrorKind::stiffness, "non-finite error estimate at t = " + fmt_double(t));
        }
        const double factor =
            std::clamp(err_norm > 0.0 ? 0.9 * std::pow(err_norm, -0.2) : 5.0, 0.2, 5.0);
        if (err_norm <= 1.0) {
            const bool hit_target = step == target - t;
            t = hit_target ? target : t + step;
            s = trial;
            clamp(s, t, spec.clamp_negative, traj.clamp_events);
            if (hit_target) {
                traj.times.push_back(t);
                traj.states.push_back(s);
                ++next_sample;
            }
            // Do not let a clipped step shrink the working step size.
            h = std::max(h, step) * factor;
        } else {
            h = step * factor;
            if (h < h_min) {
                throw Error(ErrorKind::stiffness,
                            "adaptive step underflow at t = " + fmt_double(t) + " (h = " + fmt_double(h) + ")");
            }
        }
    }
    return traj;
}

} // namespace

std::string_view to_string(Method method) noexcept {
    switch (method) {
    case Method::rk4: return "rk4";
    case Method::adaptive: return "adaptive";
    case Method::euler_maruyama: return "euler-maruyama";
    }
    return "rk4";
}

Method method_from_string(std::string_view name) {
    if (name == "rk4") return Method::rk4;
    if (name == "adaptive") return Method::adaptive;
    if (name == "euler-maruyama") return Method::euler_maruyama;
    throw Error(ErrorKind::configuration,
                "unknown integration method '" + std::string(name) + "' (expected rk4, adaptive or euler-maruyama)");
}

void validate(const IntegrationSpec& spec, const NoiseSpec& noise) {
    const auto fail = [](const std::string& msg) { throw Error(ErrorKind::configuration, msg); };
    if (!std::isfinite(spec.t0) || !std::isfinite(spec.t1) || !(spec.t1 > spec.t0)) fail("integration.t1 must exceed integration.t0");
    if (!(spec.dt > 0.0) || !std::isfinite(spec.dt)) fail("integration.dt must be > 0");
    if (spec.method == Method::adaptive) {
        if (!(spec.abs_tol > 0.0)) fail("integration.abs_tol must be > 0");
        if (!(spec.rel_tol > 0.0)) fail("integration.rel_tol must be > 0");
    }
    if (!(spec.sample_every >= spec.dt * (1.0 - 1e-12)) || !std::isfinite(spec.sample_every)) {
        fail("integration.sample_every must be >= integration.dt");
    }
    if (noise.kind != NoiseKind::none && spec.method != Method::euler_maruyama) {
        fail("stochastic noise requires integration.method = \"euler-maruyama\"");
    }
}

Trajectory integrate(const NondimParams& params, const Disturbance& dist, const IntegrationSpec& spec,
                     const State& s0) {
    validate(params);
    validate(dist);
    validate(spec, dist.noise);
    if (!std::isfinite(s0.r) || !std::isfinite(s0.c) || s0.r < 0.0 || s0.c < 0.0) {
        throw Error(ErrorKind::invalid_input, "initial state must be finite and nonnegative");
    }

    const Stepper stepper(params, dist);
    Trajectory traj = spec.method == Method::adaptive ? integrate_adaptive(stepper, spec, s0)
                                                      : integrate_fixed(stepper, dist, spec, s0);
    record_meta(traj, params, dist, spec);
    return traj;
}

double LogisticProblem::exact(double t) const noexcept {
    return beta / (1.0 + (beta / r0 - 1.0) * std::exp(-beta * t));
}

double logistic_global_error(const LogisticProblem& problem, Method method, double dt, double rel_tol,
                             double abs_tol) {
    NondimParams params;
    params.beta = problem.beta;
    IntegrationSpec spec;
    spec.method = method;
    spec.t0 = 0.0;
    spec.t1 = problem.t1;
    spec.dt = dt;
    spec.sample_every = problem.t1;
    spec.rel_tol = rel_tol;
    spec.abs_tol = abs_tol;
    const Trajectory traj = integrate(params, Disturbance{}, spec, State{problem.r0, 0.0});
    return std::abs(traj.states.back().r - problem.exact(problem.t1));
}

double convergence_order(const LogisticProblem& problem, Method method, std::span<const double> dts) {
    if (dts.size() < 3) throw Error(ErrorKind::insufficient_data, "convergence_order needs >= 3 step sizes");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (double dt : dts) {
        const double x = std::log(dt);
        const double y = std::log(logistic_global_error(problem, method, dt));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(dts.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace predprey
