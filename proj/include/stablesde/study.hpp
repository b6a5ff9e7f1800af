#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stablesde/constants.hpp"
#include "stablesde/problem.hpp"
#include "stablesde/stats.hpp"

namespace stablesde {

/// Strong-error convergence study: coupled-path Monte Carlo across a
/// ladder of step sizes against a shared finest-grid reference.
struct StudyConfig {
    StudyConfig(SdeProblem problem_, std::vector<double> deltas_)
        : problem(std::move(problem_)), deltas(std::move(deltas_)) {}

    SdeProblem problem;
    std::vector<double> deltas;     // strictly descending; each divides T
    std::int64_t ref_ratio = 8;     // reference step = smallest delta / ref_ratio
    std::int64_t paths = 1000;      // M
    double p = 2.0;                 // error moment order, in (0,2]
    std::uint64_t master_seed = 42;
    int threads = 0;                // 0 = hardware concurrency; never affects results
    double rate_margin = 0.05;      // slope must reach beta/alpha - margin
    std::optional<double> q;        // auxiliary moment order; default midpoint
    double exclusion_abort = 0.01;  // abort if more than this fraction of paths explodes

    /// The default experiment: drift sign(x)|x|^{4/9}, alpha 1.8, x0 1,
    /// T 2, dyadic deltas 2^{-4}..2^{-9} of T, reference step 2^{-12} T,
    /// 1000 paths, p = 2.
    static StudyConfig default_study();
};

struct DeltaStats {
    double delta;
    std::int64_t n_steps;
    std::int64_t ratio;         // reference steps per step at this delta
    double error_p;             // max over grid times of mean |Y_ref - Y_delta|^p
    double error_root;          // error_p^{1/p}
    double std_error;           // of the per-path p-th powers at the argmax time
    double excess_kurtosis;     // of the same values; heavy-tail diagnostic
    std::int64_t argmax_index;  // grid index attaining the max
    double bound;               // theorem bound at this delta (0 for zero drift)
    double log10_bound;
    double c6;                  // the delta-dependent constant
};

struct StudyFlags {
    bool slope_ok;       // fitted slope >= beta/alpha - rate_margin (when enforced)
    bool dominance_ok;   // every error_p <= bound
    bool monotone_ok;    // no adjacent increase by more than 3 combined std errors
    bool exclusions_ok;  // exploded paths within budget

    bool all() const { return slope_ok && dominance_ok && monotone_ok && exclusions_ok; }
};

struct StudyReport {
    std::vector<DeltaStats> per_delta;  // same order as config.deltas
    std::optional<LineFit> fit;         // ln(error_root) vs ln(delta); absent when degenerate
    double expected_rate;               // beta/alpha (0 for zero drift)
    double rate_margin;
    bool rate_enforced;  // false when the 2*beta < alpha hypothesis fails
    bool degenerate;     // zero drift: errors identically zero, fit skipped
    std::int64_t paths;
    std::int64_t paths_excluded;
    double p;
    double q;  // auxiliary order used for the constants
    std::uint64_t master_seed;
    double ref_delta;
    std::int64_t ref_steps;
    std::optional<TheoryConstants> constants;  // absent for zero drift
    StudyFlags flags;

    bool pass() const { return flags.all(); }
};

/// Validates nesting (every delta = T/N for integer N, an integer multiple
/// of the reference step, strictly descending) and the remaining config
/// invariants; throws validation_error naming the violated rule.
void validate_study_config(const StudyConfig& config);

StudyReport run_study(const StudyConfig& config);

/// One rung of the ladder: strong error at a single delta against a
/// reference at delta/ref_ratio (coupled by shared noise).
struct StrongErrorResult {
    double error_p;
    double std_error;
    std::int64_t m_effective;
};

StrongErrorResult strong_error(const SdeProblem& problem, double delta, std::int64_t ref_ratio,
                               std::int64_t paths, double p, std::uint64_t master_seed,
                               int threads = 0);

/// Least-squares estimate of the convergence order: slope of
/// ln(error^{1/p}) against ln(delta). Requires >= 3 points, all errors
/// positive.
LineFit rate_fit(std::span<const double> deltas, std::span<const double> errors, double p = 1.0);

/// Empirical check of the q-th moment bound sup_t E|Y(t)|^q <= C3.
struct MomentCheckResult {
    double empirical_sup_moment;
    double std_error;           // at the argmax time
    std::int64_t argmax_index;
    double c3;
    bool pass;
    std::int64_t m_effective;
    bool low_confidence;  // M == 1
};

MomentCheckResult moment_check(const SdeProblem& problem, double q, double delta,
                               std::int64_t paths, std::uint64_t master_seed, int threads = 0);

/// Discretization-gap study: E|Y(t) - Ybar(t)|^q at the fine midpoint of
/// each coarse cell, per delta, plus the fitted slope of ln(max gap) vs
/// ln(delta) (expected about q/alpha).
struct GapDeltaStats {
    double delta;
    std::int64_t ratio;      // fine steps per coarse step (even)
    double gap_max;          // max over midpoints of the per-time mean
    double std_error;        // at the argmax midpoint
    std::int64_t argmax_index;
    double gap_pooled;       // mean over all midpoints and paths
    double pooled_std_error;
    double analytic_zero_drift;  // C1^q (delta/2)^{q/alpha}; reference value
    std::int64_t m_effective;
};

struct GapReport {
    std::vector<GapDeltaStats> per_delta;
    std::optional<LineFit> fit;  // ln(gap_pooled) vs ln(delta); needs >= 3 deltas
    double expected_slope;       // q/alpha
    double q;
};

GapReport gap_check(const SdeProblem& problem, std::vector<double> deltas, std::int64_t ref_ratio,
                    double q, std::int64_t paths, std::uint64_t master_seed, int threads = 0);

}  // namespace stablesde
