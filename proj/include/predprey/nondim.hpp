#pragma once

#include "predprey/model.hpp"

namespace predprey {

/// Scale factors of the substitutions r = rbar * sqrt(p), t = tbar * time_scale.
struct ScaleRecord {
    double sqrt_p = 1.0;
    double time_scale_prey = 1.0; ///< m_cap / (u sqrt(p))
    double time_scale_pred = 1.0; ///< n_cap / (v sqrt(p))
};

struct NondimResult {
    NondimParams params;
    ScaleRecord scales;
};

/// Quantities the dimensionless groups do not determine.
struct ScaleAnchors {
    double u = 1.0;
    double v = 1.0;
    double p = 1.0;
};

/// Dimensionless groups as defined for the final model:
///   beta = m/sqrt(p), alpha = k m/(u sqrt(p)), delta = m/(u sqrt(p)),
///   sigma = n/sqrt(p), rho = e n k/(v sqrt(p)), mu = d n/(v sqrt(p)).
/// The prey and predator groups use different time scales, so this is a
/// convenience mapping, not a consistent rescaling of one coupled system.
NondimResult to_nondim(const RawParams& raw);

/// Inverse of to_nondim given the anchors u, v, p.
RawParams from_nondim(const NondimParams& nd, const ScaleRecord& scales, const ScaleAnchors& anchors);

} // namespace predprey
