#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "predprey/model.hpp"

namespace predprey {

enum class EquilibriumKind { trivial, forced_quasi, numeric };

std::string_view to_string(EquilibriumKind kind) noexcept;

struct EquilibriumPoint {
    double r_e = 0.0;
    double c_e = 0.0;
    EquilibriumKind kind = EquilibriumKind::trivial;
    std::optional<double> at_time; ///< set for forced-quasi points only

    State state() const noexcept { return {r_e, c_e}; }
};

struct SearchBox {
    double r_max = 1.0;
    double c_max = 1.0;
};

/// Componentwise residual bound every numeric root satisfies.
inline constexpr double kEquilibriumResidualTol = 1e-10;

/// Extinction of both species.
EquilibriumPoint trivial_equilibrium() noexcept;

/// Time-dependent balance point of the forced system with the quadratic and
/// cross terms dropped:
///   R_e = -A sin(wt) / (beta - dqE),  C_e = -Abar sin(wt + phi) / (sigma - mu).
/// Returned signed, as the formula gives it.
EquilibriumPoint forced_quasi_equilibrium(const NondimParams& params, const Disturbance& dist, double t);

/// Fixed points of the autonomous field inside the box, by damped Newton
/// from a grid_n x grid_n lattice of seeds. Sorted by r then c; always
/// contains the origin.
std::vector<EquilibriumPoint> find_autonomous_equilibria(const NondimParams& params, const SearchBox& box,
                                                         int grid_n);

} // namespace predprey
