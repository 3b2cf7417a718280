#include "predprey/stability.hpp"

#include <algorithm>
#include <cmath>

#include "predprey/equilibria.hpp"
#include "predprey/error.hpp"

namespace predprey {

std::string_view to_string(StabilityClass cls) noexcept {
    switch (cls) {
    case StabilityClass::stable_node: return "stable-node";
    case StabilityClass::unstable_node: return "unstable-node";
    case StabilityClass::saddle: return "saddle";
    case StabilityClass::stable_focus: return "stable-focus";
    case StabilityClass::unstable_focus: return "unstable-focus";
    case StabilityClass::center: return "center";
    case StabilityClass::degenerate: return "degenerate";
    }
    return "degenerate";
}

Jacobian2 jacobian(const NondimParams& params, const State& s) {
    if (!std::isfinite(s.r) || !std::isfinite(s.c)) {
        throw Error(ErrorKind::invalid_input, "jacobian: state must be finite");
    }
    const double r = s.r;
    const double c = s.c;
    const double denom = 1.0 + r * r;
    const double uptake = r * r / denom;
    const double uptake_slope = 2.0 * r / (denom * denom); // d/dr of r^2/(1+r^2)

    Jacobian2 j;
    j.j11 = params.beta - 2.0 * r - params.alpha * uptake_slope * c - params.harvest();
    j.j12 = -params.alpha * uptake;
    j.j21 = params.rho * uptake_slope * c;
    j.j22 = params.sigma - 2.0 * c + params.rho * uptake - params.mu;
    return j;
}

StabilityReport eigen2(const Jacobian2& j) {
    StabilityReport out;
    out.trace = j.trace();
    out.determinant = j.determinant();
    // (j11 - j22)^2 + 4 j12 j21 equals T^2 - 4 det without the cancellation.
    const double split = j.j11 - j.j22;
    out.discriminant = split * split + 4.0 * j.j12 * j.j21;

    using cplx = std::complex<double>;
    if (j.j12 == 0.0 || j.j21 == 0.0) {
        // Triangular: eigenvalues are the diagonal entries exactly.
        out.eigenvalues = {cplx(j.j11), cplx(j.j22)};
    } else if (out.discriminant >= 0.0) {
        const double root = std::sqrt(out.discriminant);
        const double big = 0.5 * (out.trace + std::copysign(root, out.trace));
        const double other = big != 0.0 ? out.determinant / big : 0.5 * (out.trace - root);
        out.eigenvalues = {cplx(big), cplx(other)};
    } else {
        const double im = 0.5 * std::sqrt(-out.discriminant);
        out.eigenvalues = {cplx(0.5 * out.trace, im), cplx(0.5 * out.trace, -im)};
    }
    if (out.eigenvalues[0].real() < out.eigenvalues[1].real() ||
        (out.eigenvalues[0].real() == out.eigenvalues[1].real() &&
         out.eigenvalues[0].imag() < out.eigenvalues[1].imag())) {
        std::swap(out.eigenvalues[0], out.eigenvalues[1]);
    }

    const double scale = std::max({std::abs(j.j11), std::abs(j.j12), std::abs(j.j21), std::abs(j.j22)});
    if (scale == 0.0) {
        out.cls = StabilityClass::degenerate;
        return out;
    }
    const double tol_linear = 1e-9 * scale;
    const double tol_quadratic = 1e-9 * scale * scale;

    const double T = out.trace;
    const double det = out.determinant;
    const double disc = out.discriminant;
    if (det < -tol_quadratic) {
        out.cls = StabilityClass::saddle;
    } else if (det > tol_quadratic && std::abs(T) <= tol_linear && disc < -tol_quadratic) {
        out.cls = StabilityClass::center;
    } else if (det > tol_quadratic && disc >= -tol_quadratic && std::abs(T) > tol_linear) {
        out.cls = T < 0.0 ? StabilityClass::stable_node : StabilityClass::unstable_node;
    } else if (det > tol_quadratic && disc < -tol_quadratic) {
        out.cls = T < 0.0 ? StabilityClass::stable_focus : StabilityClass::unstable_focus;
    } else {
        out.cls = StabilityClass::degenerate;
    }
    return out;
}

StabilityReport classify_equilibrium(const NondimParams& params, const EquilibriumPoint& point) {
    return eigen2(jacobian(params, State{point.r_e, point.c_e}));
}

ProductLambdas product_lambda_diagnostics(const NondimParams& params, const State& s) {
    const double P = -s.r;
    const double K = -s.c;
    const double denom = 1.0 + s.r * s.r;
    const double A = s.r / denom;
    const double B = s.r * s.r / denom;
    ProductLambdas out;
    out.lambda1 = (params.beta + 2.0 * P + 2.0 * params.alpha * K * (A - B * P)) *
                  (params.sigma + 2.0 * K + params.rho * B - params.mu);
    out.lambda2 = -2.0 * params.alpha * B * K * (A + B * P);
    return out;
}

} // namespace predprey
