#include "stablesde/stable.hpp"

#include <cmath>
#include <string>

#include "stablesde/errors.hpp"

namespace stablesde {

StableParams::StableParams(double alpha_, double sigma_) : alpha(alpha_), sigma(sigma_) {
    if (!(alpha > 0.0) || !(alpha <= 2.0))
        throw validation_error("stable law requires alpha in (0, 2], got " + std::to_string(alpha));
    if (!(sigma > 0.0))
        throw validation_error("stable law requires sigma > 0, got " + std::to_string(sigma));
}

double sample_stable(const StableParams& params, RngStream& stream) {
    const double a = params.alpha;
    const double u = stream.uniform_angle();  // (-pi/2, pi/2), cos(u) > 0
    const double w = stream.exponential();    // > 0

    // (1-a)/a is 0 at a=1 and pow(x, 0) == 1, so the Cauchy case needs no branch.
    const double t1 = std::sin(a * u) / std::pow(std::cos(u), 1.0 / a);
    const double t2 = std::pow(std::cos((1.0 - a) * u) / w, (1.0 - a) / a);
    return params.sigma * t1 * t2;
}

double increment_scale(double alpha, double delta) {
    if (!(alpha > 0.0) || !(alpha <= 2.0))
        throw validation_error("increment_scale requires alpha in (0, 2], got " + std::to_string(alpha));
    if (!(delta > 0.0))
        throw validation_error("increment_scale requires delta > 0, got " + std::to_string(delta));
    return std::pow(delta, 1.0 / alpha);
}

double abs_moment(double alpha, double q, double sigma) {
    if (!(alpha > 0.0) || alpha >= 2.0)
        throw validation_error("abs_moment requires alpha in (0, 2), got " + std::to_string(alpha));
    if (!(q > 0.0))
        throw validation_error("abs_moment requires q > 0, got " + std::to_string(q));
    if (q >= alpha)
        throw validation_error("abs_moment requires q < alpha: E|X|^q is infinite for q >= alpha");
    if (!(sigma > 0.0))
        throw validation_error("abs_moment requires sigma > 0, got " + std::to_string(sigma));

    // Evaluated through lgamma: every Gamma argument here is positive
    // (q/2 < 1 and q/alpha < 1), so no reflection is needed.
    const double log_c = q * std::log(2.0) + std::lgamma((q + 1.0) / 2.0) +
                         std::lgamma(1.0 - q / alpha) - 0.5 * std::log(M_PI) -
                         std::lgamma(1.0 - q / 2.0);
    return std::pow(sigma, q) * std::exp(log_c);
}

}  // namespace stablesde
