#pragma once

#include "stablesde/rng.hpp"

namespace stablesde {

/// Parameters of a symmetric centered stable law S_alpha(sigma, 0, 0).
/// Skewness and location are fixed at zero; with both zero the common
/// stable parameterizations coincide, so no continuity-in-alpha
/// correction enters the sampler.
struct StableParams {
    double alpha;  // stability index, in (0, 2]
    double sigma;  // scale, > 0

    StableParams(double alpha_, double sigma_);
};

/// One draw from S_alpha(sigma, 0, 0) by the Chambers-Mallows-Stuck
/// transform for the symmetric case:
///
///   X = sigma * sin(alpha U) / (cos U)^{1/alpha}
///             * [cos((1-alpha) U) / W]^{(1-alpha)/alpha},
///
/// U uniform on (-pi/2, pi/2), W exponential with mean 1. Exact on all of
/// alpha in (0,2]: at alpha=2 it reduces to 2 sigma sin(U) sqrt(W), which
/// is Normal(0, 2 sigma^2); at alpha=1 to sigma tan(U), a scaled Cauchy.
/// Consumes exactly two 64-bit words per variate.
double sample_stable(const StableParams& params, RngStream& stream);

/// Scale of one increment of the driving process over a step delta:
/// delta^{1/alpha}, so that the increment is S_alpha(delta^{1/alpha},0,0).
double increment_scale(double alpha, double delta);

/// Exact fractional absolute moment E|X|^q for X ~ S_alpha(sigma,0,0),
/// finite iff q < alpha. For 0 < q < alpha < 2,
///
///   E|X|^q = sigma^q * 2^q Gamma((q+1)/2) Gamma(1 - q/alpha)
///                      / (sqrt(pi) Gamma(1 - q/2)).
///
/// Rejects q <= 0, q >= alpha, and alpha = 2 (Gaussian moments are a
/// different formula and not needed here).
double abs_moment(double alpha, double q, double sigma);

}  // namespace stablesde
