#pragma once

#include <array>
#include <complex>
#include <string_view>

#include "predprey/model.hpp"

namespace predprey {

struct EquilibriumPoint;

struct Jacobian2 {
    double j11 = 0.0;
    double j12 = 0.0;
    double j21 = 0.0;
    double j22 = 0.0;

    double trace() const noexcept { return j11 + j22; }
    double determinant() const noexcept { return j11 * j22 - j12 * j21; }
};

enum class StabilityClass {
    stable_node,
    unstable_node,
    saddle,
    stable_focus,
    unstable_focus,
    center,
    degenerate,
};

std::string_view to_string(StabilityClass cls) noexcept;

struct StabilityReport {
    /// Ordered by decreasing real part, then decreasing imaginary part.
    std::array<std::complex<double>, 2> eigenvalues{};
    double trace = 0.0;
    double determinant = 0.0;
    double discriminant = 0.0;
    StabilityClass cls = StabilityClass::degenerate;
};

/// Analytic Jacobian of the autonomous nondimensional field at s.
Jacobian2 jacobian(const NondimParams& params, const State& s);

/// Eigenvalues by the trace-determinant closed form plus classification.
/// Classification tolerance is 1e-9 scaled by the largest entry magnitude.
StabilityReport eigen2(const Jacobian2& j);

StabilityReport classify_equilibrium(const NondimParams& params, const EquilibriumPoint& point);

/// Two product-form lambda expressions for the forced equilibrium, evaluated
/// with P = -r, K = -c, A = r/(1+r^2), B = r^2/(1+r^2). They are diagnostics
/// only; they are not the eigenvalues of the Jacobian.
struct ProductLambdas {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
};

ProductLambdas product_lambda_diagnostics(const NondimParams& params, const State& s);

} // namespace predprey
