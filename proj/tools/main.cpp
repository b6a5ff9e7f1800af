// Command-line front end: reproducible experiments over the library, with
// machine-readable CSV/JSON output. Every subcommand is deterministic
// given its full flag set (including seeds); worker count never changes
// results. Exit codes: 0 success/pass, 1 invalid parameters, 2 run
// aborted (too many exploded paths), 3 I/O failure.

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stablesde/config.hpp"
#include "stablesde/constants.hpp"
#include "stablesde/num_format.hpp"
#include "stablesde/path.hpp"
#include "stablesde/report.hpp"
#include "stablesde/stable.hpp"
#include "stablesde/study.hpp"

namespace {

using namespace stablesde;
using ordered_json = nlohmann::ordered_json;

void emit(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    write_file(path, content);
}

std::vector<double> parse_deltas_flag(const std::string& text) {
    std::vector<double> out;
    std::string item;
    std::stringstream ss(text);
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(parse_double(item));
    }
    if (out.empty()) throw validation_error("empty delta list");
    return out;
}

// Flag list > config list > dyadic default T*2^-4 .. T*2^-9 at the
// horizon actually in effect.
std::vector<double> resolve_deltas(const std::string& flag_deltas, const RunConfig& cfg,
                                   double horizon) {
    if (!flag_deltas.empty()) return parse_deltas_flag(flag_deltas);
    if (!cfg.deltas.empty()) return cfg.deltas;
    std::vector<double> out;
    for (int k = 4; k <= 9; ++k) out.push_back(horizon / static_cast<double>(1 << k));
    return out;
}

// Shared --drift/--x0/--alpha/--T group used by every SDE subcommand.
struct ProblemFlags {
    std::string drift;
    double x0;
    double alpha;
    double horizon;

    SdeProblem build() const { return SdeProblem(DriftSpec::parse(drift), x0, alpha, horizon); }

    void add_to(CLI::App* cmd, const RunConfig& cfg) {
        drift = cfg.drift;
        x0 = cfg.x0;
        alpha = cfg.alpha;
        horizon = cfg.horizon;
        cmd->add_option("--drift", drift,
                        "drift f(x): 'zero' or 'odd_power:c=<c>,beta=<b>' for c*sign(x)*|x|^b")
            ->capture_default_str();
        cmd->add_option("--x0", x0, "initial state x(0)")->capture_default_str();
        cmd->add_option("--alpha", alpha, "stability index of the driving noise, in (1,2)")
            ->capture_default_str();
        cmd->add_option("--T", horizon, "time horizon")->capture_default_str();
    }
};

struct SampleArgs {
    double alpha, sigma, delta = 0.0;
    std::int64_t n;
    std::uint64_t seed;
    std::string out = "-";
    bool use_delta = false;
};

int run_sample(const SampleArgs& args) {
    double sigma = args.sigma;
    if (args.use_delta) sigma = increment_scale(args.alpha, args.delta);
    const StableParams params(args.alpha, sigma);
    RngStream stream(args.seed, 0);
    std::string csv = "value\n";
    for (std::int64_t i = 0; i < args.n; ++i)
        csv += format_double(sample_stable(params, stream)) + "\n";
    emit(args.out, csv);
    return 0;
}

struct SimulateArgs {
    ProblemFlags problem;
    std::int64_t steps = 2000;
    double delta = 0.0;
    bool use_delta = false;
    std::int64_t paths = 1;
    std::uint64_t seed = 42;
    std::string out = "-";
    std::string noise_out;
};

int run_simulate(const SimulateArgs& args) {
    const SdeProblem problem = args.problem.build();
    std::int64_t steps = args.steps;
    if (args.use_delta) {
        steps = static_cast<std::int64_t>(std::llround(problem.horizon / args.delta));
        if (steps < 1 ||
            std::abs(problem.horizon / static_cast<double>(steps) - args.delta) > 1e-9 * args.delta)
            throw validation_error("--delta must divide T (delta = T/N for integer N)");
    }
    const GridSpec grid(problem.horizon, steps);
    if (args.paths < 1) throw validation_error("--paths must be >= 1");
    if (!args.noise_out.empty() && args.paths != 1)
        throw validation_error("--save-noise requires --paths 1");

    const bool long_format = args.paths > 1;
    std::string csv = long_format ? "path_id,t,value\n" : "t,value\n";
    ordered_json nonfinite = ordered_json::array();
    for (std::int64_t k = 0; k < args.paths; ++k) {
        RngStream stream(args.seed, static_cast<std::uint64_t>(k));
        const NoisePath noise = generate_increments(problem.alpha, grid, stream);
        const EmPath path = em_run(problem, noise);
        for (std::int64_t i = 0; i <= grid.steps(); ++i) {
            if (long_format) csv += std::to_string(k) + ",";
            csv += format_double(grid.time(i)) + "," +
                   format_double(path.values[static_cast<std::size_t>(i)]) + "\n";
        }
        if (path.first_nonfinite)
            nonfinite.push_back(
                ordered_json{{"path_id", k}, {"first_index", *path.first_nonfinite}});
        if (!args.noise_out.empty()) {
            std::string noise_csv = "i,dL\n";
            for (std::int64_t i = 0; i < grid.steps(); ++i)
                noise_csv += std::to_string(i) + "," +
                             format_double(noise.increments()[static_cast<std::size_t>(i)]) + "\n";
            emit(args.noise_out, noise_csv);
        }
    }
    emit(args.out, csv);
    if (!nonfinite.empty()) {
        const std::string report = ordered_json{{"nonfinite_paths", nonfinite}}.dump(2) + "\n";
        std::cerr << "warning: " << nonfinite.size()
                  << " path(s) reached non-finite states (values kept, not clamped)\n";
        if (args.out != "-") emit(args.out + ".nonfinite.json", report);
    }
    return 0;
}

struct ConvergeArgs {
    ProblemFlags problem;
    std::string deltas;  // comma list; empty = dyadic default
    std::int64_t ref_ratio;
    std::int64_t paths;
    double p;
    std::uint64_t seed;
    int threads;
    double rate_margin;
    double q = 0.0;
    std::string json_out = "study.json";
    std::string csv_out = "study.csv";
};

int run_converge(const ConvergeArgs& args, const RunConfig& cfg) {
    SdeProblem problem = args.problem.build();
    StudyConfig study(problem, resolve_deltas(args.deltas, cfg, problem.horizon));
    study.ref_ratio = args.ref_ratio;
    study.paths = args.paths;
    study.p = args.p;
    study.master_seed = args.seed;
    study.threads = args.threads;
    study.rate_margin = args.rate_margin;
    if (args.q > 0.0 && !study.problem.drift.is_zero()) study.q = args.q;

    const StudyReport report = run_study(study);
    emit(args.json_out, study_report_json(report, study.problem));
    emit(args.csv_out, study_report_csv(report));

    if (report.degenerate) {
        std::cerr << "degenerate study (zero drift): errors identically zero, fit skipped\n";
    } else if (report.fit) {
        std::cerr << "fitted order " << format_double(report.fit->slope) << " (guaranteed >= "
                  << format_double(report.expected_rate) << "), r^2 "
                  << format_double(report.fit->r_squared) << "\n";
    }
    std::cerr << (report.pass() ? "PASS" : "FAIL") << "\n";
    return report.pass() ? 0 : 1;
}

struct ConstantsArgs {
    ProblemFlags problem;
    double q = 0.0;      // 0 = midpoint of (2 beta, alpha)
    double p;
    double delta;
    double k_override = 0.0;
    double beta_override = 0.0;
    double k2_override = -1.0;
    std::string out = "-";
};

int run_constants(const ConstantsArgs& args) {
    const SdeProblem problem = args.problem.build();
    TheoryInputs inputs = [&] {
        if (args.k_override > 0.0 || args.beta_override > 0.0) {
            if (!(args.k_override > 0.0) || !(args.beta_override > 0.0))
                throw validation_error("--k and --beta must be given together");
            const double k2 = args.k2_override >= 0.0 ? args.k2_override : args.k_override;
            const double q = args.q > 0.0
                                 ? args.q
                                 : TheoryInputs::default_q(problem.alpha, args.beta_override);
            return TheoryInputs{problem.alpha, args.beta_override, args.k_override, k2, q,
                                problem.horizon, problem.x0, args.p, args.delta};
        }
        return TheoryInputs::from_problem(problem, args.p, args.delta,
                                          args.q > 0.0 ? std::optional<double>(args.q)
                                                       : std::nullopt);
    }();

    const TheoryConstants constants = compute_constants(inputs);
    const TheoremBound bound = theorem_bound(constants, inputs);
    const AssumptionChecks checks = check_assumptions(inputs);
    ordered_json j{{"c1", constants.c1},
                   {"c2", constants.c2},
                   {"c3", constants.c3},
                   {"c4", constants.c4},
                   {"c5", constants.c5},
                   {"c6", constants.c6},
                   {"bound", bound.overflowed ? ordered_json(nullptr) : ordered_json(bound.value)},
                   {"log10_bound", bound.log10_value},
                   {"q", inputs.q},
                   {"assumption_checks",
                    ordered_json{{"alpha_in_range", checks.alpha_in_range},
                                 {"beta_in_range", checks.beta_in_range},
                                 {"two_beta_lt_alpha", checks.two_beta_lt_alpha},
                                 {"q_in_range", checks.q_in_range},
                                 {"q_at_least_one", checks.q_at_least_one},
                                 {"p_in_range", checks.p_in_range},
                                 {"delta_in_range", checks.delta_in_range}}}};
    emit(args.out, j.dump(2) + "\n");
    return 0;
}

struct MomentsArgs {
    ProblemFlags problem;
    double q;
    double delta;
    std::int64_t paths;
    std::uint64_t seed;
    int threads = 0;
    std::string out = "-";
};

int run_moments(const MomentsArgs& args) {
    const SdeProblem problem = args.problem.build();
    const MomentCheckResult result =
        moment_check(problem, args.q, args.delta, args.paths, args.seed, args.threads);
    emit(args.out, moment_report_json(result, problem, args.q, args.delta, args.seed, args.paths));
    return result.pass ? 0 : 1;
}

struct GapArgs {
    ProblemFlags problem;
    double q;
    std::string deltas;
    std::int64_t ref_ratio;
    std::int64_t paths;
    std::uint64_t seed;
    int threads = 0;
    std::string json_out = "-";
    std::string csv_out;
};

int run_gap(const GapArgs& args, const RunConfig& cfg) {
    const SdeProblem problem = args.problem.build();
    const std::vector<double> deltas = resolve_deltas(args.deltas, cfg, problem.horizon);
    const GapReport report =
        gap_check(problem, deltas, args.ref_ratio, args.q, args.paths, args.seed, args.threads);
    emit(args.json_out, gap_report_json(report, problem, args.seed, args.paths));
    if (!args.csv_out.empty()) emit(args.csv_out, gap_report_csv(report));
    return 0;
}

int run_cli(int argc, char** argv) {
    // --config seeds the defaults of every flag; explicit flags then win.
    RunConfig cfg;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) cfg = RunConfig::load(argv[i + 1]);
        else if (arg.rfind("--config=", 0) == 0) cfg = RunConfig::load(arg.substr(9));
    }

    CLI::App app{"Euler-Maruyama simulation and strong-error analysis for scalar SDEs driven "
                 "by symmetric alpha-stable noise"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "config file (key = value lines, [section] headers)");

    SampleArgs sample{cfg.sample_alpha, cfg.sample_sigma, 0.0, cfg.sample_n, cfg.sample_seed};
    auto* sample_cmd = app.add_subcommand(
        "sample", "draw i.i.d. variates from the symmetric stable law S_alpha(sigma,0,0)");
    sample_cmd->add_option("--alpha", sample.alpha, "stability index, in (0,2]")
        ->capture_default_str();
    auto* sigma_opt = sample_cmd->add_option("--sigma", sample.sigma, "scale parameter, > 0")
                          ->capture_default_str();
    auto* delta_opt = sample_cmd->add_option(
        "--delta", sample.delta, "set the scale to delta^{1/alpha}, one noise increment per step");
    delta_opt->excludes(sigma_opt);
    sample_cmd->add_option("--n", sample.n, "number of variates")->capture_default_str();
    sample_cmd->add_option("--seed", sample.seed, "random stream seed")->capture_default_str();
    sample_cmd->add_option("--out", sample.out, "output CSV path, '-' for stdout")
        ->capture_default_str();

    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "run Euler-Maruyama paths of the SDE");
    sim.problem.add_to(sim_cmd, cfg);
    auto* steps_opt =
        sim_cmd->add_option("--steps", sim.steps, "number of time steps N (step = T/N)")
            ->capture_default_str();
    sim_cmd->add_option("--delta", sim.delta, "time step (must divide T); overrides --steps")
        ->excludes(steps_opt);
    sim_cmd->add_option("--paths", sim.paths, "number of independent paths")
        ->capture_default_str();
    sim_cmd->add_option("--seed", sim.seed, "master seed; path k uses stream (seed, k)")
        ->capture_default_str();
    sim_cmd->add_option("--out", sim.out, "output CSV ('t,value', or 'path_id,t,value' for "
                                          "several paths); '-' for stdout")
        ->capture_default_str();
    sim_cmd->add_option("--save-noise", sim.noise_out,
                        "also write the driving increments as CSV 'i,dL' (single path only)");

    ConvergeArgs conv;
    conv.ref_ratio = cfg.ref_ratio;
    conv.paths = cfg.paths;
    conv.p = cfg.p;
    conv.seed = cfg.seed;
    conv.threads = cfg.threads;
    conv.rate_margin = cfg.rate_margin;
    auto* conv_cmd = app.add_subcommand(
        "converge", "coupled-path Monte Carlo estimate of the strong convergence order");
    conv.problem.add_to(conv_cmd, cfg);
    conv_cmd->add_option("--deltas", conv.deltas,
                         "comma list of step sizes, descending, each T/N and nested over the "
                         "reference step (default: T*2^-4 .. T*2^-9)");
    conv_cmd->add_option("--ref-ratio", conv.ref_ratio,
                         "reference step = smallest delta / ref-ratio")
        ->capture_default_str();
    conv_cmd->add_option("--paths", conv.paths, "Monte Carlo paths M")->capture_default_str();
    conv_cmd->add_option("--p", conv.p, "error moment order, in (0,2]")->capture_default_str();
    conv_cmd->add_option("--seed", conv.seed, "master seed")->capture_default_str();
    conv_cmd->add_option("--threads", conv.threads, "worker threads (0 = hardware); results "
                                                    "do not depend on this")
        ->capture_default_str();
    conv_cmd->add_option("--rate-margin", conv.rate_margin,
                         "slope must reach (beta/alpha - margin) to pass")
        ->capture_default_str();
    conv_cmd->add_option("--q", conv.q, "auxiliary moment order in (2 beta, alpha); 0 = midpoint");
    conv_cmd->add_option("--json", conv.json_out, "JSON report path")->capture_default_str();
    conv_cmd->add_option("--csv", conv.csv_out, "CSV report path")->capture_default_str();

    ConstantsArgs cons;
    cons.p = cfg.constants_p;
    cons.delta = cfg.constants_delta;
    cons.q = cfg.constants_q;
    auto* cons_cmd = app.add_subcommand(
        "constants", "evaluate the explicit error constants C1..C6 and the strong-error bound");
    cons.problem.add_to(cons_cmd, cfg);
    cons_cmd->add_option("--q", cons.q,
                         "auxiliary moment order in (2 beta, alpha); 0 = midpoint default");
    cons_cmd->add_option("--p", cons.p, "error moment order, in (0,2]")->capture_default_str();
    cons_cmd->add_option("--delta", cons.delta, "step size, in (0,1)")->capture_default_str();
    cons_cmd->add_option("--k", cons.k_override, "Hoelder constant override (with --beta)");
    cons_cmd->add_option("--beta", cons.beta_override, "Hoelder exponent override (with --k)");
    cons_cmd->add_option("--k2", cons.k2_override, "growth constant override (default max(K,|f(0)|))");
    cons_cmd->add_option("--out", cons.out, "output JSON path, '-' for stdout")
        ->capture_default_str();

    MomentsArgs mom;
    mom.q = cfg.moments_q;
    mom.delta = cfg.moments_delta;
    mom.paths = cfg.moments_paths;
    mom.seed = cfg.moments_seed;
    mom.threads = cfg.threads;
    auto* mom_cmd = app.add_subcommand(
        "moments", "check the empirical sup-moment of the Euler path against its bound C3");
    mom.problem.add_to(mom_cmd, cfg);
    mom_cmd->add_option("--q", mom.q, "moment order, in [1, alpha)")->capture_default_str();
    mom_cmd->add_option("--delta", mom.delta, "time step (must divide T)")->capture_default_str();
    mom_cmd->add_option("--paths", mom.paths, "Monte Carlo paths")->capture_default_str();
    mom_cmd->add_option("--seed", mom.seed, "master seed")->capture_default_str();
    mom_cmd->add_option("--threads", mom.threads, "worker threads (0 = hardware)")
        ->capture_default_str();
    mom_cmd->add_option("--out", mom.out, "output JSON path, '-' for stdout")
        ->capture_default_str();

    GapArgs gap;
    gap.q = cfg.gap_q;
    gap.ref_ratio = cfg.gap_ref_ratio;
    gap.paths = cfg.gap_paths;
    gap.seed = cfg.gap_seed;
    gap.threads = cfg.threads;
    auto* gap_cmd = app.add_subcommand(
        "gap", "measure the continuous/discrete scheme gap at cell midpoints across step sizes");
    gap.problem.add_to(gap_cmd, cfg);
    gap_cmd->add_option("--q", gap.q, "moment order, in [1, alpha)")->capture_default_str();
    gap_cmd->add_option("--deltas", gap.deltas,
                        "comma list of step sizes, descending (default: T*2^-4 .. T*2^-9)");
    gap_cmd->add_option("--ref-ratio", gap.ref_ratio,
                        "fine step = smallest delta / ref-ratio; every ratio must come out even")
        ->capture_default_str();
    gap_cmd->add_option("--paths", gap.paths, "Monte Carlo paths")->capture_default_str();
    gap_cmd->add_option("--seed", gap.seed, "master seed")->capture_default_str();
    gap_cmd->add_option("--threads", gap.threads, "worker threads (0 = hardware)")
        ->capture_default_str();
    gap_cmd->add_option("--json", gap.json_out, "output JSON path, '-' for stdout")
        ->capture_default_str();
    gap_cmd->add_option("--csv", gap.csv_out, "optional CSV path (delta,gap_max,gap_pooled,stderr)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (sample_cmd->parsed()) {
        sample.use_delta = delta_opt->count() > 0;
        return run_sample(sample);
    }
    if (sim_cmd->parsed()) {
        sim.use_delta = sim_cmd->get_option("--delta")->count() > 0;
        return run_simulate(sim);
    }
    if (conv_cmd->parsed()) return run_converge(conv, cfg);
    if (cons_cmd->parsed()) return run_constants(cons);
    if (mom_cmd->parsed()) return run_moments(mom);
    if (gap_cmd->parsed()) return run_gap(gap, cfg);
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const study_abort& e) {
        std::cerr << "aborted: " << e.what() << "\n";
        return 2;
    } catch (const io_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
