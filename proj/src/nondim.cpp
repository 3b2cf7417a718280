#include "predprey/nondim.hpp"

#include <cmath>

#include "predprey/error.hpp"

namespace predprey {

NondimResult to_nondim(const RawParams& raw) {
    if (!(raw.u > 0.0) || !(raw.v > 0.0) || !(raw.p > 0.0)) {
        throw Error(ErrorKind::singular_scaling, "nondimensionalization requires u > 0, v > 0 and p > 0");
    }
    validate(raw);

    const double sqrt_p = std::sqrt(raw.p);
    const double prey_scale = raw.u * sqrt_p;
    const double pred_scale = raw.v * sqrt_p;

    NondimResult out;
    out.params.beta = raw.m_cap / sqrt_p;
    out.params.alpha = raw.k * raw.m_cap / prey_scale;
    out.params.delta = raw.m_cap / prey_scale;
    out.params.q = raw.q;
    out.params.effort_E = raw.effort_E;
    out.params.sigma = raw.n_cap / sqrt_p;
    out.params.rho = raw.e_conv * raw.n_cap * raw.k / pred_scale;
    out.params.mu = raw.d * raw.n_cap / pred_scale;
    out.scales.sqrt_p = sqrt_p;
    out.scales.time_scale_prey = raw.m_cap / prey_scale;
    out.scales.time_scale_pred = raw.n_cap / pred_scale;
    return out;
}

RawParams from_nondim(const NondimParams& nd, const ScaleRecord& scales, const ScaleAnchors& anchors) {
    if (!(anchors.u > 0.0) || !(anchors.v > 0.0) || !(anchors.p > 0.0)) {
        throw Error(ErrorKind::singular_scaling, "anchors u, v, p must be > 0");
    }
    validate(nd);
    const double sqrt_p = std::sqrt(anchors.p);
    if (std::abs(scales.sqrt_p - sqrt_p) > 1e-12 * sqrt_p) {
        throw Error(ErrorKind::invalid_parameter, "scale record does not match anchor p");
    }
    if (!(nd.beta > 0.0) || !(nd.sigma > 0.0)) {
        throw Error(ErrorKind::singular_scaling, "beta and sigma must be > 0 to recover carrying capacities");
    }

    RawParams raw;
    raw.u = anchors.u;
    raw.v = anchors.v;
    raw.p = anchors.p;
    raw.m_cap = nd.beta * sqrt_p;
    raw.n_cap = nd.sigma * sqrt_p;
    raw.k = nd.alpha * anchors.u * sqrt_p / raw.m_cap;
    raw.q = nd.q;
    raw.effort_E = nd.effort_E;
    raw.d = nd.mu * anchors.v * sqrt_p / raw.n_cap;
    if (raw.k > 0.0) {
        raw.e_conv = nd.rho * anchors.v * sqrt_p / (raw.n_cap * raw.k);
    } else if (nd.rho == 0.0) {
        raw.e_conv = 0.0;
    } else {
        throw Error(ErrorKind::singular_scaling, "rho > 0 with alpha = 0 leaves e_conv undetermined");
    }
    return raw;
}

} // namespace predprey
