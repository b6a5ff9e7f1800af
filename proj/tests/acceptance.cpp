// Acceptance gate: one check per release criterion, each printed as a
// single PASS/FAIL line with the measured quantities. Everything runs at
// fixed seeds, so the whole suite is deterministic.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "constants_oracle.hpp"
#include "stablesde/constants.hpp"
#include "stablesde/path.hpp"
#include "stablesde/report.hpp"
#include "stablesde/stable.hpp"
#include "stablesde/stats.hpp"
#include "stablesde/study.hpp"

using namespace stablesde;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
    std::printf("%s  %2d. %s\n", ok ? "PASS" : "FAIL", criterion, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<double> draw(double alpha, double sigma, int n, std::uint64_t seed) {
    const StableParams params(alpha, sigma);
    RngStream stream(seed, 0);
    std::vector<double> out(static_cast<std::size_t>(n));
    for (auto& x : out) x = sample_stable(params, stream);
    return out;
}

SdeProblem example_problem() {
    return SdeProblem(DriftSpec::odd_power(1.0, 4.0 / 9.0), 1.0, 1.8, 2.0);
}

StudyConfig example_study(int threads) {
    StudyConfig config = StudyConfig::default_study();
    config.threads = threads;
    return config;
}

// 1. sampler reduction laws at the boundary indices, KS at 0.01, < 5 s each
void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto gauss = draw(2.0, 1.0, 100000, 7);
    const auto ks_gauss = ks_test(gauss, [](double x) { return normal_cdf(x, 0.0, 2.0); });
    const double t_gauss = seconds_since(t0);

    const auto t1 = std::chrono::steady_clock::now();
    const auto cauchy = draw(1.0, 1.0, 100000, 13);
    const auto ks_cauchy = ks_test(cauchy, [](double x) { return cauchy_cdf(x, 1.0); });
    const double t_cauchy = seconds_since(t1);

    const bool ok = ks_gauss.p_value >= 0.01 && ks_cauchy.p_value >= 0.01 && t_gauss < 5.0 &&
                    t_cauchy < 5.0;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "sampler reductions: alpha=2 KS p=%.3f (%.2fs), alpha=1 KS p=%.3f (%.2fs)",
                  ks_gauss.p_value, t_gauss, ks_cauchy.p_value, t_cauchy);
    report(1, ok, buf);
}

// 2. closed-form fractional moments vs the sampler, 3 SE at 10^6 draws, < 30 s
void criterion_2() {
    const auto t0 = std::chrono::steady_clock::now();
    struct Case {
        double alpha, q;
        std::uint64_t seed;
    };
    bool ok = true;
    std::string detail = "fractional moments:";
    for (const auto& c : {Case{1.8, 1.0, 1}, Case{1.5, 1.0, 2}, Case{1.8, 1.3444444444444446, 6}}) {
        const auto xs = draw(c.alpha, 1.0, 1000000, c.seed);
        double mean = 0;
        for (double x : xs) mean += std::pow(std::abs(x), c.q);
        mean /= static_cast<double>(xs.size());
        double var = 0;
        for (double x : xs) {
            const double d = std::pow(std::abs(x), c.q) - mean;
            var += d * d;
        }
        var /= static_cast<double>(xs.size() - 1);
        const double se = std::sqrt(var / static_cast<double>(xs.size()));
        const double closed = abs_moment(c.alpha, c.q, 1.0);
        const double pull = (mean - closed) / se;
        ok = ok && std::abs(pull) <= 3.0;
        char buf[96];
        std::snprintf(buf, sizeof buf, " (%.1f,%.4f) pull %+.2f;", c.alpha, c.q, pull);
        detail += buf;
    }
    const double elapsed = seconds_since(t0);
    ok = ok && elapsed < 30.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, " %.1fs total", elapsed);
    report(2, ok, detail + buf);
}

// 3. self-similarity of increments: mean |dL| ratio 4^{-1/alpha} within 2%
void criterion_3() {
    const double alpha = 1.8;
    const GridSpec fine(2.0, 1000000);
    const GridSpec coarse(2.0, 250000);
    RngStream s1(101, 0), s2(101, 1);
    const NoisePath a = generate_increments(alpha, fine, s1);
    const NoisePath b = generate_increments(alpha, coarse, s2);
    double ma = 0, mb = 0;
    for (double x : a.increments()) ma += std::abs(x);
    for (double x : b.increments()) mb += std::abs(x);
    ma /= static_cast<double>(a.increments().size());
    mb /= static_cast<double>(b.increments().size());
    const double ratio = ma / mb;
    const double expected = std::pow(4.0, -1.0 / alpha);
    const bool ok = std::abs(ratio / expected - 1.0) < 0.02;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "self-similarity: mean|dL| ratio %.5f vs 4^{-1/alpha} = %.5f (%+.2f%%)", ratio,
                  expected, 100.0 * (ratio / expected - 1.0));
    report(3, ok, buf);
}

// 4. zero-drift coupled strong error is exactly zero, bitwise, at every delta
void criterion_4() {
    StudyConfig config = example_study(0);
    config.problem = SdeProblem(DriftSpec::zero(), 1.0, 1.8, 2.0);
    config.paths = 200;
    const StudyReport res = run_study(config);
    bool ok = res.degenerate && res.pass();
    double worst = 0.0;
    for (const auto& row : res.per_delta) {
        worst = std::max(worst, row.error_p);
        ok = ok && row.error_p == 0.0;
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "zero-drift exactness: max coupled error %.1e across %zu deltas",
                  worst, res.per_delta.size());
    report(4, ok, buf);
}

// 5. rate reproduction on the example scenario; returns the report for 8/9
StudyReport criterion_5() {
    const auto t0 = std::chrono::steady_clock::now();
    StudyConfig config = example_study(1);
    StudyReport res = run_study(config);
    bool ok = res.fit.has_value() && res.flags.monotone_ok && res.flags.exclusions_ok;
    const double slope = res.fit ? res.fit->slope : std::nan("");
    ok = ok && slope >= 0.1969;
    char buf[192];
    std::snprintf(buf, sizeof buf,
                  "rate reproduction: slope %.4f >= 0.1969 (beta/alpha = %.4f), monotone %s, "
                  "M_eff %lld, %.1fs",
                  slope, res.expected_rate, res.flags.monotone_ok ? "yes" : "no",
                  static_cast<long long>(res.paths - res.paths_excluded), seconds_since(t0));
    report(5, ok, buf);
    return res;
}

// 6. discretization-gap scaling q/alpha and the zero-drift analytic midpoint gap
void criterion_6() {
    const double q = 1.0;
    const GapReport drifted =
        gap_check(example_problem(), StudyConfig::default_study().deltas, 8, q, 1000, 42, 0);
    bool ok = drifted.fit.has_value();
    const double slope = drifted.fit ? drifted.fit->slope : std::nan("");
    ok = ok && std::abs(slope - drifted.expected_slope) <= 0.1;

    StudyConfig zero_cfg = example_study(0);
    const SdeProblem zero_problem(DriftSpec::zero(), 1.0, 1.8, 2.0);
    const GapReport zeroed = gap_check(zero_problem, zero_cfg.deltas, 8, q, 1000, 42, 0);
    double worst_pull = 0.0;
    for (const auto& row : zeroed.per_delta) {
        const double pull = (row.gap_pooled - row.analytic_zero_drift) / row.pooled_std_error;
        worst_pull = std::max(worst_pull, std::abs(pull));
    }
    ok = ok && worst_pull <= 3.0;
    char buf[192];
    std::snprintf(buf, sizeof buf,
                  "gap scaling: slope %.4f vs q/alpha = %.4f (tol 0.1); zero-drift analytic "
                  "worst pull %.2f SE",
                  slope, drifted.expected_slope, worst_pull);
    report(6, ok, buf);
}

// 7. empirical sup-moment of the Euler path at q = 1.3 stays below C3
void criterion_7() {
    const SdeProblem problem = example_problem();
    const double delta = 2.0 / 512.0;
    const MomentCheckResult res = moment_check(problem, 1.3, delta, 1000, 42, 0);
    char buf[160];
    std::snprintf(buf, sizeof buf, "moment dominance: sup_t E|Y|^1.3 = %.3f <= C3 = %.1f",
                  res.empirical_sup_moment, res.c3);
    report(7, res.pass, buf);
}

// 8. every empirical error from criterion 5 lies under the theorem bound
void criterion_8(const StudyReport& study) {
    bool ok = study.flags.dominance_ok;
    double worst = 0.0;
    for (const auto& row : study.per_delta) {
        ok = ok && row.error_p <= row.bound;
        worst = std::max(worst, row.error_p / row.bound);
    }
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "bound dominance: max error_p/bound = %.2e over %zu deltas", worst,
                  study.per_delta.size());
    report(8, ok, buf);
}

// 9. byte-identical reports for different worker counts
void criterion_9(const StudyReport& one_worker) {
    StudyConfig config = example_study(2);
    const StudyReport two_workers = run_study(config);
    const std::string j1 = study_report_json(one_worker, config.problem);
    const std::string j2 = study_report_json(two_workers, config.problem);
    const std::string c1 = study_report_csv(one_worker);
    const std::string c2 = study_report_csv(two_workers);
    const bool ok = j1 == j2 && c1 == c2;
    char buf[128];
    std::snprintf(buf, sizeof buf, "determinism: JSON %s, CSV %s across 1 vs 2 workers",
                  j1 == j2 ? "identical" : "DIFFERS", c1 == c2 ? "identical" : "DIFFERS");
    report(9, ok, buf);
}

// 10. constants agree with a 256-bit re-evaluation to 12 significant digits
void criterion_10() {
    const TheoryInputs in = TheoryInputs::from_problem(example_problem(), 2.0, 0.001);
    const TheoryConstants c = compute_constants(in);
    const TheoremBound bound = theorem_bound(c, in);
    const oracle::BigConstants o = oracle::constants_oracle(in);
    auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
    double worst = rel(c.c1, o.c1);
    worst = std::max(worst, rel(c.c2, o.c2));
    worst = std::max(worst, rel(c.c3, o.c3));
    worst = std::max(worst, rel(c.c4, o.c4));
    worst = std::max(worst, rel(c.c5, o.c5));
    worst = std::max(worst, rel(c.c6, o.c6));
    worst = std::max(worst, rel(bound.value, o.bound));
    const bool ok = worst <= 1e-12;
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "constants regression: worst relative gap %.2e vs 256-bit oracle (tol 1e-12)",
                  worst);
    report(10, ok, buf);
}

}  // namespace

int main() {
    std::printf("acceptance suite (fixed seeds, deterministic)\n");
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    const StudyReport study = criterion_5();
    criterion_6();
    criterion_7();
    criterion_8(study);
    criterion_9(study);
    criterion_10();
    std::printf("%d of 10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
