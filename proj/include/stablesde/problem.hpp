#pragma once

#include "stablesde/drift.hpp"
#include "stablesde/errors.hpp"
#include "stablesde/num_format.hpp"

namespace stablesde {

/// Scalar SDE  dx = f(x) dt + dL(t),  x(0) = x0,  driven by a symmetric
/// alpha-stable process with alpha in (1,2). alpha = 2 (Brownian case) is
/// deliberately outside this type: the sampler handles it, the error
/// theory here does not.
struct SdeProblem {
    DriftSpec drift;
    double x0;
    double alpha;   // noise index, in (1, 2) strictly
    double horizon; // T > 0

    SdeProblem(DriftSpec drift_, double x0_, double alpha_, double horizon_)
        : drift(std::move(drift_)), x0(x0_), alpha(alpha_), horizon(horizon_) {
        if (!(alpha > 1.0) || !(alpha < 2.0))
            throw validation_error("SDE requires alpha in (1, 2), got " + format_double(alpha));
        if (!(horizon > 0.0))
            throw validation_error("SDE requires T > 0, got " + format_double(horizon));
        if (!std::isfinite(x0))
            throw validation_error("SDE requires finite x0");
    }

    /// The strong-error theory needs 2*beta < alpha. Zero drift is exact
    /// by coupling, so the flag is true there as well.
    bool theorem_applies() const {
        if (drift.is_zero()) return true;
        return 2.0 * holder_meta(drift).beta < alpha;
    }
};

}  // namespace stablesde
