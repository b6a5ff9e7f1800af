#pragma once

#include <optional>

#include "stablesde/problem.hpp"

namespace stablesde {

/// Inputs for the explicit error constants. Validity (checked on use):
///   alpha in (1,2), beta in (0,1), 2*beta < alpha, q in (2*beta, alpha),
///   K > 0, K2 >= K or K2 >= |f(0)|, T > 0, p in (0,2], delta in (0,1).
/// q >= 1 is what the moment bounds assume; values below 1 are accepted
/// but flagged (see AssumptionChecks).
struct TheoryInputs {
    double alpha;
    double beta;
    double k;
    double k2;
    double q;
    double horizon;  // T
    double x0;
    double p;      // error moment order
    double delta;  // step size

    /// Midpoint of the admissible interval (2*beta, alpha); the canonical
    /// default choice of q.
    static double default_q(double alpha, double beta) { return (2.0 * beta + alpha) / 2.0; }

    /// Assemble inputs from a problem's drift metadata. Rejects zero
    /// drift: its error bound is identically zero and short-circuits
    /// before any constant is evaluated.
    static TheoryInputs from_problem(const SdeProblem& problem, double p, double delta,
                                     std::optional<double> q = std::nullopt);
};

struct AssumptionChecks {
    bool alpha_in_range;      // alpha in (1,2)
    bool beta_in_range;       // beta in (0,1)
    bool two_beta_lt_alpha;   // 2*beta < alpha
    bool q_in_range;          // q in (2*beta, alpha)
    bool q_at_least_one;      // q >= 1 (moment lemmas); informational
    bool p_in_range;          // p in (0,2]
    bool delta_in_range;      // delta in (0,1)

    bool all_required() const {
        return alpha_in_range && beta_in_range && two_beta_lt_alpha && q_in_range && p_in_range &&
               delta_in_range;
    }
};

AssumptionChecks check_assumptions(const TheoryInputs& in);

/// The six explicit constants of the strong-error analysis:
///   C1 = (E|X|^q)^{1/q} at unit scale
///   C2 = 3^q (|x0|^q + (2 K2)^q T^{(2q-1)/q} + C1^q T^{q/alpha})
///   C3 = [C2^{1-beta} + (1-beta)(6 K2)^q T]^{1/(1-beta)}
///   C4 = 2^{2q} K2^q (1 + C3^beta) + 2^q C1^q
///   C5 = 2 K^2 T^{3/2} C4^{2 beta/q}
///   C6 = 2 K^2 T^{1/2} [ (C5 delta^{2 beta/alpha})^{1-beta}
///                        + (1-beta) 2 K^2 T^{3/2} ]^{-1}
/// C1..C5 do not depend on delta; C6 does.
struct TheoryConstants {
    double c1, c2, c3, c4, c5, c6;
};

/// Evaluates C1..C6. Throws on invalid inputs and on K2 = 0 (zero drift);
/// callers short-circuit that case to a zero bound.
TheoryConstants compute_constants(const TheoryInputs& inputs);

/// Strong-error bound  delta^{p beta/alpha} C5^{p/2} exp(C6 T p / 2),
/// an upper bound on sup_{t<=T} E|x(t) - Y(t)|^p. Kept in log form as
/// well: the constants can be astronomically large for some inputs, and
/// then only log10 is representable.
struct TheoremBound {
    double value;        // +inf when not representable
    double log10_value;  // always finite for valid inputs
    bool overflowed;
};

TheoremBound theorem_bound(const TheoryConstants& constants, const TheoryInputs& inputs);

/// The two auxiliary bounds: sup_t E|Y(t)|^q <= C3 (one C3 serves both the
/// true solution and the Euler path), and the discretization gap
/// E|Y(t) - Ybar(t)|^q <= C4 delta^{q/alpha}.
struct LemmaBounds {
    double moment_bound;  // C3
    double gap_coeff;     // C4
    double gap_exponent;  // q/alpha

    double gap_bound(double delta) const;
};

LemmaBounds lemma_bounds(const TheoryConstants& constants, const TheoryInputs& inputs);

/// C1..C4 alone, additionally allowing the zero-drift degenerate case
/// K = K2 = 0 (where C3 collapses to C2 and C4 to 2^q C1^q). Used by the
/// moment and gap checks, which remain meaningful for zero drift.
TheoryConstants compute_lemma_constants(const TheoryInputs& inputs);

}  // namespace stablesde
