#include "stablesde/study.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stablesde/num_format.hpp"
#include "stablesde/parallel.hpp"
#include "stablesde/path.hpp"
#include "stablesde/stable.hpp"

namespace stablesde {

StudyConfig StudyConfig::default_study() {
    SdeProblem problem(DriftSpec::odd_power(1.0, 4.0 / 9.0), 1.0, 1.8, 2.0);
    std::vector<double> deltas;
    for (int k = 4; k <= 9; ++k) deltas.push_back(problem.horizon / static_cast<double>(1 << k));
    return StudyConfig(std::move(problem), std::move(deltas));
}

namespace {

// Recover the integer step count behind a real delta; delta must equal
// T/N to within a relative 1e-9.
std::int64_t steps_for_delta(double horizon, double delta) {
    if (!(delta > 0.0))
        throw validation_error("delta must be positive, got " + format_double(delta));
    const auto n = static_cast<std::int64_t>(std::llround(horizon / delta));
    if (n < 1 || std::abs(horizon / static_cast<double>(n) - delta) > 1e-9 * delta)
        throw validation_error("delta = " + format_double(delta) +
                               " does not divide T = " + format_double(horizon) +
                               " (deltas must be T/N for integer N)");
    return n;
}

struct Ladder {
    GridSpec ref_grid;
    std::vector<GridSpec> coarse;      // one per delta, descending delta
    std::vector<std::int64_t> ratios;  // ref steps per coarse step
};

Ladder build_ladder(const SdeProblem& problem, const std::vector<double>& deltas,
                    std::int64_t ref_ratio) {
    if (deltas.empty()) throw validation_error("at least one delta is required");
    for (std::size_t i = 1; i < deltas.size(); ++i)
        if (!(deltas[i] < deltas[i - 1]))
            throw validation_error("deltas must be strictly descending");
    if (ref_ratio < 2) throw validation_error("ref_ratio must be >= 2");

    std::vector<std::int64_t> n_steps;
    n_steps.reserve(deltas.size());
    for (double d : deltas) n_steps.push_back(steps_for_delta(problem.horizon, d));

    const std::int64_t n_ref = n_steps.back() * ref_ratio;
    std::vector<GridSpec> coarse;
    std::vector<std::int64_t> ratios;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        if (n_ref % n_steps[i] != 0)
            throw validation_error(
                "delta = " + format_double(deltas[i]) +
                " is not an integer multiple of the reference step (nesting is required "
                "for coupling)");
        coarse.emplace_back(problem.horizon, n_steps[i]);
        ratios.push_back(n_ref / n_steps[i]);
    }
    return Ladder{GridSpec(problem.horizon, n_ref), std::move(coarse), std::move(ratios)};
}

// Per-delta matrix of per-path, per-node values, filled by workers that
// own disjoint rows and reduced afterwards in path order. The layout (and
// every reduction below) is fixed, so reports are byte-identical for any
// worker count.
struct PathMatrix {
    std::int64_t nodes = 0;  // columns: grid nodes (or midpoints)
    std::vector<double> data;

    void init(std::int64_t paths, std::int64_t nodes_) {
        nodes = nodes_;
        data.assign(static_cast<std::size_t>(paths * nodes), 0.0);
    }
    double* row(std::int64_t m) { return data.data() + m * nodes; }
    double at(std::int64_t m, std::int64_t j) const {
        return data[static_cast<std::size_t>(m * nodes + j)];
    }
};

struct ColumnStats {
    double mean_max;
    std::int64_t argmax;
    Summary at_argmax;
};

// Mean over included paths per column, then the max column.
ColumnStats reduce_max_mean(const PathMatrix& mat, const std::vector<char>& excluded) {
    std::int64_t argmax = 0;
    double best = -1.0;
    for (std::int64_t j = 0; j < mat.nodes; ++j) {
        double sum = 0.0;
        std::int64_t n = 0;
        for (std::size_t m = 0; m < excluded.size(); ++m) {
            if (excluded[m]) continue;
            sum += mat.at(static_cast<std::int64_t>(m), j);
            ++n;
        }
        const double mean = n > 0 ? sum / static_cast<double>(n) : 0.0;
        if (mean > best) {
            best = mean;
            argmax = j;
        }
    }
    std::vector<double> column;
    column.reserve(excluded.size());
    for (std::size_t m = 0; m < excluded.size(); ++m)
        if (!excluded[m]) column.push_back(mat.at(static_cast<std::int64_t>(m), argmax));
    return ColumnStats{best < 0.0 ? 0.0 : best, argmax, summarize(column)};
}

std::int64_t count_excluded(const std::vector<char>& excluded) {
    std::int64_t n = 0;
    for (char c : excluded) n += c ? 1 : 0;
    return n;
}

void enforce_exclusion_budget(std::int64_t excluded, std::int64_t paths, double budget) {
    if (static_cast<double>(excluded) > budget * static_cast<double>(paths))
        throw study_abort("excluded " + std::to_string(excluded) + " of " +
                          std::to_string(paths) + " paths (non-finite states); exceeds the " +
                          format_double(budget) + " abort threshold");
}

// Shared coupled-path engine: |Y_ref(t) - Y_delta(t)|^p at every node of
// each coarse grid, one row per path.
void run_coupled_errors(const SdeProblem& problem, const Ladder& ladder, std::int64_t paths,
                        double p, std::uint64_t master_seed, int threads,
                        std::vector<PathMatrix>& mats, std::vector<char>& excluded) {
    mats.resize(ladder.coarse.size());
    for (std::size_t d = 0; d < ladder.coarse.size(); ++d)
        mats[d].init(paths, ladder.coarse[d].steps() + 1);
    excluded.assign(static_cast<std::size_t>(paths), 0);

    parallel_for_index(paths, threads, [&](std::int64_t m) {
        RngStream stream(master_seed, static_cast<std::uint64_t>(m));
        const NoisePath fine = generate_increments(problem.alpha, ladder.ref_grid, stream);
        const EmPath ref = em_run(problem, fine);
        if (!ref.all_finite()) {
            excluded[static_cast<std::size_t>(m)] = 1;
            return;
        }
        std::vector<EmPath> runs;
        runs.reserve(ladder.coarse.size());
        for (std::size_t d = 0; d < ladder.coarse.size(); ++d) {
            runs.push_back(em_run(problem, coarsen(fine, ladder.ratios[d])));
            if (!runs.back().all_finite()) {
                excluded[static_cast<std::size_t>(m)] = 1;
                return;
            }
        }
        for (std::size_t d = 0; d < ladder.coarse.size(); ++d) {
            const std::int64_t ratio = ladder.ratios[d];
            double* row = mats[d].row(m);
            for (std::int64_t j = 0; j <= ladder.coarse[d].steps(); ++j) {
                const double diff = runs[d].values[static_cast<std::size_t>(j)] -
                                    ref.values[static_cast<std::size_t>(j * ratio)];
                row[j] = std::pow(std::abs(diff), p);
            }
        }
    });
}

}  // namespace

void validate_study_config(const StudyConfig& config) {
    build_ladder(config.problem, config.deltas, config.ref_ratio);
    if (config.paths < 2) throw validation_error("a study requires M >= 2 paths");
    if (!(config.p > 0.0) || !(config.p <= 2.0))
        throw validation_error("p must lie in (0, 2], got " + format_double(config.p));
    if (config.q && config.problem.drift.is_zero())
        throw validation_error("q override is meaningless for zero drift");
}

StudyReport run_study(const StudyConfig& config) {
    validate_study_config(config);
    const Ladder ladder = build_ladder(config.problem, config.deltas, config.ref_ratio);
    const bool degenerate = config.problem.drift.is_zero();
    const HolderMeta meta = holder_meta(config.problem.drift);

    StudyReport report;
    report.degenerate = degenerate;
    report.paths = config.paths;
    report.p = config.p;
    report.master_seed = config.master_seed;
    report.ref_delta = ladder.ref_grid.delta();
    report.ref_steps = ladder.ref_grid.steps();
    report.rate_margin = config.rate_margin;
    report.expected_rate = degenerate ? 0.0 : meta.beta / config.problem.alpha;
    report.rate_enforced = !degenerate && config.problem.theorem_applies();
    report.q = degenerate ? TheoryInputs::default_q(config.problem.alpha, meta.beta)
                          : config.q.value_or(TheoryInputs::default_q(config.problem.alpha, meta.beta));

    std::vector<PathMatrix> mats;
    std::vector<char> excluded;
    run_coupled_errors(config.problem, ladder, config.paths, config.p, config.master_seed,
                       config.threads, mats, excluded);
    report.paths_excluded = count_excluded(excluded);
    enforce_exclusion_budget(report.paths_excluded, config.paths, config.exclusion_abort);

    const bool have_bounds = report.rate_enforced;  // constants exist iff theorem applies
    for (std::size_t d = 0; d < config.deltas.size(); ++d) {
        const ColumnStats stats = reduce_max_mean(mats[d], excluded);
        DeltaStats row{};
        row.delta = config.deltas[d];
        row.n_steps = ladder.coarse[d].steps();
        row.ratio = ladder.ratios[d];
        row.error_p = stats.mean_max;
        row.error_root = std::pow(stats.mean_max, 1.0 / config.p);
        row.std_error = stats.at_argmax.std_error;
        row.excess_kurtosis = stats.at_argmax.excess_kurtosis;
        row.argmax_index = stats.argmax;
        if (degenerate) {
            row.bound = 0.0;  // the coupled error is identically zero for f == 0
            row.log10_bound = -std::numeric_limits<double>::infinity();
            row.c6 = 0.0;
        } else if (have_bounds) {
            const TheoryInputs inputs =
                TheoryInputs::from_problem(config.problem, config.p, config.deltas[d], report.q);
            const TheoryConstants constants = compute_constants(inputs);
            const TheoremBound bound = theorem_bound(constants, inputs);
            row.bound = bound.value;
            row.log10_bound = bound.log10_value;
            row.c6 = constants.c6;
            if (d == 0) report.constants = constants;
        } else {
            row.bound = std::numeric_limits<double>::quiet_NaN();
            row.log10_bound = std::numeric_limits<double>::quiet_NaN();
            row.c6 = std::numeric_limits<double>::quiet_NaN();
        }
        report.per_delta.push_back(row);
    }

    // Rate fit on error^{1/p}; skipped when errors vanish (zero drift).
    const bool all_positive =
        std::all_of(report.per_delta.begin(), report.per_delta.end(),
                    [](const DeltaStats& r) { return r.error_p > 0.0; });
    if (!degenerate && all_positive && report.per_delta.size() >= 3) {
        std::vector<double> ds, es;
        for (const auto& r : report.per_delta) {
            ds.push_back(r.delta);
            es.push_back(r.error_p);
        }
        report.fit = rate_fit(ds, es, config.p);
    }

    StudyFlags flags{};
    flags.exclusions_ok = true;  // an over-budget run aborts before this point
    if (degenerate) {
        // the rate degenerates to "coupling is exact"
        flags.slope_ok = std::all_of(report.per_delta.begin(), report.per_delta.end(),
                                     [](const DeltaStats& r) { return r.error_p == 0.0; });
    } else if (!report.rate_enforced || report.per_delta.size() < 3) {
        flags.slope_ok = true;  // nothing to enforce without a fit
    } else {
        // a missing fit here means some error came out zero, which a
        // non-degenerate study should never produce
        flags.slope_ok =
            report.fit && report.fit->slope >= report.expected_rate - config.rate_margin;
    }
    flags.dominance_ok = true;
    for (const auto& r : report.per_delta) {
        if (degenerate) {
            if (r.error_p > 0.0) flags.dominance_ok = false;
        } else if (have_bounds && !(r.error_p <= r.bound)) {
            flags.dominance_ok = false;
        }
    }
    flags.monotone_ok = true;
    for (std::size_t d = 0; d + 1 < report.per_delta.size(); ++d) {
        const auto& coarse = report.per_delta[d];      // larger delta
        const auto& fine = report.per_delta[d + 1];    // smaller delta
        const double slack = 3.0 * std::sqrt(coarse.std_error * coarse.std_error +
                                             fine.std_error * fine.std_error);
        if (fine.error_p > coarse.error_p + slack) flags.monotone_ok = false;
    }
    report.flags = flags;
    return report;
}

StrongErrorResult strong_error(const SdeProblem& problem, double delta, std::int64_t ref_ratio,
                               std::int64_t paths, double p, std::uint64_t master_seed,
                               int threads) {
    if (paths < 2) throw validation_error("strong_error requires M >= 2 paths");
    if (!(p > 0.0) || !(p <= 2.0))
        throw validation_error("p must lie in (0, 2], got " + format_double(p));
    const Ladder ladder = build_ladder(problem, {delta}, ref_ratio);
    std::vector<PathMatrix> mats;
    std::vector<char> excluded;
    run_coupled_errors(problem, ladder, paths, p, master_seed, threads, mats, excluded);
    const std::int64_t n_excl = count_excluded(excluded);
    enforce_exclusion_budget(n_excl, paths, 0.01);
    const ColumnStats stats = reduce_max_mean(mats[0], excluded);
    return StrongErrorResult{stats.mean_max, stats.at_argmax.std_error, paths - n_excl};
}

LineFit rate_fit(std::span<const double> deltas, std::span<const double> errors, double p) {
    if (deltas.size() != errors.size())
        throw validation_error("rate_fit requires matching deltas and errors");
    if (deltas.size() < 3) throw validation_error("rate_fit requires at least 3 points");
    if (!(p > 0.0)) throw validation_error("rate_fit requires p > 0");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        if (!(deltas[i] > 0.0)) throw validation_error("rate_fit requires positive deltas");
        if (!(errors[i] > 0.0))
            throw validation_error("rate_fit requires positive errors (zero-error studies have "
                                   "no rate to fit)");
        lx.push_back(std::log(deltas[i]));
        ly.push_back(std::log(errors[i]) / p);  // ln(error^{1/p})
    }
    return fit_line(lx, ly);
}

MomentCheckResult moment_check(const SdeProblem& problem, double q, double delta,
                               std::int64_t paths, std::uint64_t master_seed, int threads) {
    if (!(q >= 1.0) || !(q < problem.alpha))
        throw validation_error("moment_check requires q in [1, alpha), got " + format_double(q));
    if (paths < 1) throw validation_error("moment_check requires M >= 1");
    const GridSpec grid(problem.horizon, steps_for_delta(problem.horizon, delta));

    PathMatrix mat;
    mat.init(paths, grid.steps() + 1);
    std::vector<char> excluded(static_cast<std::size_t>(paths), 0);
    parallel_for_index(paths, threads, [&](std::int64_t m) {
        RngStream stream(master_seed, static_cast<std::uint64_t>(m));
        const NoisePath noise = generate_increments(problem.alpha, grid, stream);
        const EmPath path = em_run(problem, noise);
        if (!path.all_finite()) {
            excluded[static_cast<std::size_t>(m)] = 1;
            return;
        }
        double* row = mat.row(m);
        for (std::int64_t j = 0; j <= grid.steps(); ++j)
            row[j] = std::pow(std::abs(path.values[static_cast<std::size_t>(j)]), q);
    });
    const std::int64_t n_excl = count_excluded(excluded);
    enforce_exclusion_budget(n_excl, paths, 0.01);

    const ColumnStats stats = reduce_max_mean(mat, excluded);
    const HolderMeta meta = holder_meta(problem.drift);
    const TheoryInputs inputs{problem.alpha, meta.beta, meta.k, meta.k2, q,
                              problem.horizon, problem.x0, 2.0, delta};
    const double c3 = compute_lemma_constants(inputs).c3;
    return MomentCheckResult{stats.mean_max,
                             stats.at_argmax.std_error,
                             stats.argmax,
                             c3,
                             stats.mean_max <= c3,
                             paths - n_excl,
                             paths == 1};
}

GapReport gap_check(const SdeProblem& problem, std::vector<double> deltas, std::int64_t ref_ratio,
                    double q, std::int64_t paths, std::uint64_t master_seed, int threads) {
    if (!(q >= 1.0) || !(q < problem.alpha))
        throw validation_error("gap_check requires q in [1, alpha), got " + format_double(q));
    if (paths < 1) throw validation_error("gap_check requires M >= 1");
    const Ladder ladder = build_ladder(problem, deltas, ref_ratio);
    for (std::size_t d = 0; d < deltas.size(); ++d)
        if (ladder.ratios[d] % 2 != 0)
            throw validation_error("gap_check needs an even fine/coarse ratio so cell midpoints "
                                   "land on the fine grid; delta = " + format_double(deltas[d]) +
                                   " has ratio " + std::to_string(ladder.ratios[d]));

    std::vector<PathMatrix> mats(deltas.size());
    for (std::size_t d = 0; d < deltas.size(); ++d)
        mats[d].init(paths, ladder.coarse[d].steps());  // one midpoint per cell
    std::vector<char> excluded(static_cast<std::size_t>(paths), 0);

    parallel_for_index(paths, threads, [&](std::int64_t m) {
        RngStream stream(master_seed, static_cast<std::uint64_t>(m));
        const NoisePath fine = generate_increments(problem.alpha, ladder.ref_grid, stream);
        std::vector<EmPath> runs;
        runs.reserve(deltas.size());
        for (std::size_t d = 0; d < deltas.size(); ++d) {
            runs.push_back(em_run(problem, coarsen(fine, ladder.ratios[d])));
            if (!runs.back().all_finite()) {
                excluded[static_cast<std::size_t>(m)] = 1;
                return;
            }
        }
        for (std::size_t d = 0; d < deltas.size(); ++d) {
            const std::int64_t ratio = ladder.ratios[d];
            double* row = mats[d].row(m);
            for (std::int64_t cell = 0; cell < ladder.coarse[d].steps(); ++cell) {
                const std::int64_t mid = cell * ratio + ratio / 2;
                const double y_cont = interpolant_eval(problem, runs[d], fine, mid);
                const double y_bar = runs[d].values[static_cast<std::size_t>(cell)];
                row[cell] = std::pow(std::abs(y_cont - y_bar), q);
            }
        }
    });
    const std::int64_t n_excl = count_excluded(excluded);
    enforce_exclusion_budget(n_excl, paths, 0.01);

    GapReport report;
    report.q = q;
    report.expected_slope = q / problem.alpha;
    const double c1q = abs_moment(problem.alpha, q, 1.0);  // C1^q at unit scale
    for (std::size_t d = 0; d < deltas.size(); ++d) {
        const ColumnStats stats = reduce_max_mean(mats[d], excluded);
        std::vector<double> pooled;
        pooled.reserve(static_cast<std::size_t>((paths - n_excl) * mats[d].nodes));
        for (std::int64_t m = 0; m < paths; ++m) {
            if (excluded[static_cast<std::size_t>(m)]) continue;
            for (std::int64_t j = 0; j < mats[d].nodes; ++j) pooled.push_back(mats[d].at(m, j));
        }
        const Summary pooled_summary = summarize(pooled);
        GapDeltaStats row{};
        row.delta = deltas[d];
        row.ratio = ladder.ratios[d];
        row.gap_max = stats.mean_max;
        row.std_error = stats.at_argmax.std_error;
        row.argmax_index = stats.argmax;
        row.gap_pooled = pooled_summary.mean;
        row.pooled_std_error = pooled_summary.std_error;
        row.analytic_zero_drift = c1q * std::pow(deltas[d] / 2.0, q / problem.alpha);
        row.m_effective = paths - n_excl;
        report.per_delta.push_back(row);
    }
    if (deltas.size() >= 3) {
        // Fit on the pooled means: the per-cell moments are essentially
        // identical, and the max over hundreds of noisy cell means carries
        // an extreme-value bias that grows with the cell count and bends
        // the fitted slope.
        std::vector<double> ds, gs;
        bool positive = true;
        for (const auto& r : report.per_delta) {
            ds.push_back(r.delta);
            gs.push_back(r.gap_pooled);
            positive = positive && r.gap_pooled > 0.0;
        }
        if (positive) report.fit = rate_fit(ds, gs, 1.0);
    }
    return report;
}

}  // namespace stablesde
