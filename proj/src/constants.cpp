#include "stablesde/constants.hpp"

#include <cmath>

#include "stablesde/stable.hpp"

namespace stablesde {

TheoryInputs TheoryInputs::from_problem(const SdeProblem& problem, double p, double delta,
                                        std::optional<double> q) {
    if (problem.drift.is_zero())
        throw validation_error("zero drift has a zero error bound; no constants to compute");
    const HolderMeta meta = holder_meta(problem.drift);
    return TheoryInputs{problem.alpha,
                        meta.beta,
                        meta.k,
                        meta.k2,
                        q.value_or(default_q(problem.alpha, meta.beta)),
                        problem.horizon,
                        problem.x0,
                        p,
                        delta};
}

AssumptionChecks check_assumptions(const TheoryInputs& in) {
    return AssumptionChecks{
        in.alpha > 1.0 && in.alpha < 2.0,
        in.beta > 0.0 && in.beta < 1.0,
        2.0 * in.beta < in.alpha,
        in.q > 2.0 * in.beta && in.q < in.alpha,
        in.q >= 1.0,
        in.p > 0.0 && in.p <= 2.0,
        in.delta > 0.0 && in.delta < 1.0,
    };
}

namespace {

enum class Mode { theorem, lemma };

// The lemma (moment/gap) bounds need q in (0, alpha) only; 2*beta < alpha
// and q in (2*beta, alpha) belong to the error-rate theorem.
void require_valid(const TheoryInputs& in, Mode mode) {
    const AssumptionChecks checks = check_assumptions(in);
    if (!checks.alpha_in_range)
        throw validation_error("constants require alpha in (1, 2), got " + format_double(in.alpha));
    if (!checks.beta_in_range)
        throw validation_error("constants require beta in (0, 1), got " + format_double(in.beta));
    if (mode == Mode::theorem) {
        if (!checks.two_beta_lt_alpha)
            throw validation_error("the error theory requires 2*beta < alpha; got 2*" +
                                   format_double(in.beta) + " >= " + format_double(in.alpha));
        if (!checks.q_in_range)
            throw validation_error("q must lie in (2*beta, alpha) = (" +
                                   format_double(2.0 * in.beta) + ", " + format_double(in.alpha) +
                                   "), got " + format_double(in.q));
    } else {
        if (!(in.q > 0.0) || !(in.q < in.alpha))
            throw validation_error("q must lie in (0, alpha), got " + format_double(in.q));
    }
    if (!checks.p_in_range)
        throw validation_error("p must lie in (0, 2], got " + format_double(in.p));
    if (!checks.delta_in_range)
        throw validation_error("delta must lie in (0, 1), got " + format_double(in.delta));
    if (!(in.horizon > 0.0)) throw validation_error("constants require T > 0");
    if (!std::isfinite(in.x0)) throw validation_error("constants require finite x0");
    if (mode == Mode::theorem) {
        if (!(in.k > 0.0) || !(in.k2 > 0.0))
            throw validation_error("constants require K > 0 and K2 > 0; for zero drift the "
                                   "error bound is identically zero");
    } else {
        if (in.k < 0.0 || in.k2 < 0.0) throw validation_error("K and K2 must be nonnegative");
    }
}

TheoryConstants evaluate(const TheoryInputs& in) {
    const double a = in.alpha, b = in.beta, q = in.q, t = in.horizon;
    const double c1 = std::pow(abs_moment(a, q, 1.0), 1.0 / q);
    const double c1q = abs_moment(a, q, 1.0);  // C1^q without the round trip through ^1/q
    const double c2 = std::pow(3.0, q) * (std::pow(std::abs(in.x0), q) +
                                          std::pow(2.0 * in.k2, q) * std::pow(t, (2.0 * q - 1.0) / q) +
                                          c1q * std::pow(t, q / a));
    const double c3 =
        std::pow(std::pow(c2, 1.0 - b) + (1.0 - b) * std::pow(6.0 * in.k2, q) * t, 1.0 / (1.0 - b));
    const double c4 = std::pow(2.0, 2.0 * q) * std::pow(in.k2, q) * (1.0 + std::pow(c3, b)) +
                      std::pow(2.0, q) * c1q;
    const double c5 = 2.0 * in.k * in.k * std::pow(t, 1.5) * std::pow(c4, 2.0 * b / q);
    const double c6 = 2.0 * in.k * in.k * std::sqrt(t) /
                      (std::pow(c5 * std::pow(in.delta, 2.0 * b / a), 1.0 - b) +
                       (1.0 - b) * 2.0 * in.k * in.k * std::pow(t, 1.5));
    return TheoryConstants{c1, c2, c3, c4, c5, c6};
}

}  // namespace

TheoryConstants compute_constants(const TheoryInputs& inputs) {
    require_valid(inputs, Mode::theorem);
    return evaluate(inputs);
}

TheoryConstants compute_lemma_constants(const TheoryInputs& inputs) {
    require_valid(inputs, Mode::lemma);
    TheoryConstants c = evaluate(inputs);
    if (inputs.k == 0.0) c.c5 = c.c6 = 0.0;  // degenerate; the bound is zero outright
    return c;
}

TheoremBound theorem_bound(const TheoryConstants& constants, const TheoryInputs& inputs) {
    require_valid(inputs, Mode::theorem);
    const double log_bound = (inputs.p * inputs.beta / inputs.alpha) * std::log(inputs.delta) +
                             (inputs.p / 2.0) * std::log(constants.c5) +
                             constants.c6 * inputs.horizon * inputs.p / 2.0;
    const double value = std::exp(log_bound);
    return TheoremBound{value, log_bound / std::log(10.0), !std::isfinite(value)};
}

double LemmaBounds::gap_bound(double delta) const {
    return gap_coeff * std::pow(delta, gap_exponent);
}

LemmaBounds lemma_bounds(const TheoryConstants& constants, const TheoryInputs& inputs) {
    return LemmaBounds{constants.c3, constants.c4, inputs.q / inputs.alpha};
}

}  // namespace stablesde
