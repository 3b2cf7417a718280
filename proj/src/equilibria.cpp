#include "predprey/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "predprey/error.hpp"
#include "predprey/stability.hpp"

namespace predprey {

namespace {

constexpr int kMaxNewtonIterations = 50;
constexpr int kMaxHalvings = 30;
constexpr double kDedupDistance = 1e-6;

double residual_norm(const Rate& f) noexcept { return std::max(std::abs(f.dr), std::abs(f.dc)); }

std::optional<State> newton_from(const NondimParams& params, State x) {
    Rate f = autonomous_rhs(params, x);
    double norm = residual_norm(f);
    for (int iter = 0; iter < kMaxNewtonIterations; ++iter) {
        if (norm <= kEquilibriumResidualTol) {
            // One polishing step, kept only if it does not make things worse.
            const Jacobian2 j = jacobian(params, x);
            const double det = j.determinant();
            if (det != 0.0 && std::isfinite(det)) {
                const State polished{x.r - (j.j22 * f.dr - j.j12 * f.dc) / det,
                                     x.c - (-j.j21 * f.dr + j.j11 * f.dc) / det};
                if (std::isfinite(polished.r) && std::isfinite(polished.c) &&
                    residual_norm(autonomous_rhs(params, polished)) <= norm) {
                    x = polished;
                }
            }
            return x;
        }
        const Jacobian2 j = jacobian(params, x);
        const double det = j.determinant();
        const double scale = std::max({std::abs(j.j11), std::abs(j.j12), std::abs(j.j21), std::abs(j.j22), 1.0});
        if (!std::isfinite(det) || std::abs(det) <= 1e-14 * scale * scale) return std::nullopt;

        const double step_r = (j.j22 * f.dr - j.j12 * f.dc) / det;
        const double step_c = (-j.j21 * f.dr + j.j11 * f.dc) / det;

        double lambda = 1.0;
        State trial{x.r - step_r, x.c - step_c};
        Rate trial_f = autonomous_rhs(params, trial);
        for (int h = 0; h < kMaxHalvings && !(residual_norm(trial_f) < norm); ++h) {
            lambda *= 0.5;
            trial = {x.r - lambda * step_r, x.c - lambda * step_c};
            trial_f = autonomous_rhs(params, trial);
        }
        if (!std::isfinite(trial.r) || !std::isfinite(trial.c)) return std::nullopt;
        x = trial;
        f = trial_f;
        norm = residual_norm(f);
    }
    if (norm <= kEquilibriumResidualTol) return x;
    return std::nullopt;
}

} // namespace

std::string_view to_string(EquilibriumKind kind) noexcept {
    switch (kind) {
    case EquilibriumKind::trivial: return "trivial";
    case EquilibriumKind::forced_quasi: return "forced-quasi";
    case EquilibriumKind::numeric: return "numeric";
    }
    return "numeric";
}

EquilibriumPoint trivial_equilibrium() noexcept { return {0.0, 0.0, EquilibriumKind::trivial, std::nullopt}; }

EquilibriumPoint forced_quasi_equilibrium(const NondimParams& params, const Disturbance& dist, double t) {
    const double prey_growth = params.beta - params.harvest();
    const double pred_growth = params.sigma - params.mu;
    if (prey_growth == 0.0) {
        throw Error(ErrorKind::prey_degenerate, "beta equals delta*q*E; prey quasi-equilibrium undefined");
    }
    if (pred_growth == 0.0) {
        throw Error(ErrorKind::predator_degenerate, "sigma equals mu; predator quasi-equilibrium undefined");
    }
    EquilibriumPoint out;
    out.r_e = -dist.amp_prey_A * std::sin(dist.omega * t) / prey_growth;
    out.c_e = -dist.amp_pred_Abar * std::sin(dist.omega * t + dist.phi) / pred_growth;
    out.kind = EquilibriumKind::forced_quasi;
    out.at_time = t;
    return out;
}

std::vector<EquilibriumPoint> find_autonomous_equilibria(const NondimParams& params, const SearchBox& box,
                                                         int grid_n) {
    if (!(box.r_max > 0.0) || !(box.c_max > 0.0)) {
        throw Error(ErrorKind::invalid_parameter, "search box extents must be > 0");
    }
    if (grid_n < 8) throw Error(ErrorKind::invalid_parameter, "grid_n must be >= 8");

    const double slack_r = 1e-9 * box.r_max;
    const double slack_c = 1e-9 * box.c_max;
    std::vector<State> roots{State{0.0, 0.0}};

    for (int i = 0; i < grid_n; ++i) {
        for (int k = 0; k < grid_n; ++k) {
            const State seed{box.r_max * i / (grid_n - 1), box.c_max * k / (grid_n - 1)};
            const auto root = newton_from(params, seed);
            if (!root) continue;
            if (root->r < -slack_r || root->r > box.r_max + slack_r || root->c < -slack_c ||
                root->c > box.c_max + slack_c) {
                continue;
            }
            const bool seen = std::any_of(roots.begin(), roots.end(), [&](const State& known) {
                return std::hypot(known.r - root->r, known.c - root->c) <= kDedupDistance;
            });
            if (!seen) roots.push_back(*root);
        }
    }

    std::sort(roots.begin(), roots.end(), [](const State& a, const State& b) {
        return a.r != b.r ? a.r < b.r : a.c < b.c;
    });

    std::vector<EquilibriumPoint> out;
    out.reserve(roots.size());
    for (const State& s : roots) out.push_back({s.r, s.c, EquilibriumKind::numeric, std::nullopt});
    return out;
}

} // namespace predprey
