#include "stablesde/report.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "stablesde/num_format.hpp"

namespace stablesde {

namespace {

using ordered_json = nlohmann::ordered_json;

// NaN/inf are not representable in JSON; emit null for them.
ordered_json num(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

ordered_json problem_json(const SdeProblem& problem) {
    return ordered_json{{"drift", problem.drift.render()},
                        {"x0", problem.x0},
                        {"alpha", problem.alpha},
                        {"T", problem.horizon}};
}

}  // namespace

std::string study_report_json(const StudyReport& report, const SdeProblem& problem) {
    ordered_json j;
    j["problem"] = problem_json(problem);
    j["p"] = report.p;
    j["q"] = report.q;
    j["master_seed"] = report.master_seed;
    j["paths"] = report.paths;
    j["paths_excluded"] = report.paths_excluded;
    j["ref_delta"] = report.ref_delta;
    j["ref_steps"] = report.ref_steps;
    j["degenerate"] = report.degenerate;
    j["expected_rate"] = report.expected_rate;
    j["rate_margin"] = report.rate_margin;
    j["rate_enforced"] = report.rate_enforced;
    if (report.constants) {
        j["constants"] = ordered_json{{"c1", report.constants->c1}, {"c2", report.constants->c2},
                                      {"c3", report.constants->c3}, {"c4", report.constants->c4},
                                      {"c5", report.constants->c5}};
    } else {
        j["constants"] = nullptr;
    }
    j["per_delta"] = ordered_json::array();
    for (const auto& row : report.per_delta) {
        j["per_delta"].push_back(ordered_json{{"delta", row.delta},
                                              {"n_steps", row.n_steps},
                                              {"ratio", row.ratio},
                                              {"error_p", row.error_p},
                                              {"error_root", row.error_root},
                                              {"std_error", row.std_error},
                                              {"excess_kurtosis", row.excess_kurtosis},
                                              {"argmax_index", row.argmax_index},
                                              {"bound", num(row.bound)},
                                              {"log10_bound", num(row.log10_bound)},
                                              {"c6", num(row.c6)}});
    }
    if (report.fit) {
        j["fit"] = ordered_json{{"slope", report.fit->slope},
                                {"intercept", report.fit->intercept},
                                {"r_squared", report.fit->r_squared}};
    } else {
        j["fit"] = nullptr;
    }
    j["flags"] = ordered_json{{"slope_ok", report.flags.slope_ok},
                              {"dominance_ok", report.flags.dominance_ok},
                              {"monotone_ok", report.flags.monotone_ok},
                              {"exclusions_ok", report.flags.exclusions_ok}};
    j["pass"] = report.pass();
    return j.dump(2) + "\n";
}

std::string study_report_csv(const StudyReport& report) {
    std::string out = "delta,error_p,error_root,stderr\n";
    for (const auto& row : report.per_delta) {
        out += format_double(row.delta) + "," + format_double(row.error_p) + "," +
               format_double(row.error_root) + "," + format_double(row.std_error) + "\n";
    }
    return out;
}

std::string gap_report_json(const GapReport& report, const SdeProblem& problem,
                            std::uint64_t master_seed, std::int64_t paths) {
    ordered_json j;
    j["problem"] = problem_json(problem);
    j["q"] = report.q;
    j["master_seed"] = master_seed;
    j["paths"] = paths;
    j["expected_slope"] = report.expected_slope;
    j["per_delta"] = ordered_json::array();
    for (const auto& row : report.per_delta) {
        j["per_delta"].push_back(ordered_json{{"delta", row.delta},
                                              {"ratio", row.ratio},
                                              {"gap_max", row.gap_max},
                                              {"std_error", row.std_error},
                                              {"argmax_index", row.argmax_index},
                                              {"gap_pooled", row.gap_pooled},
                                              {"pooled_std_error", row.pooled_std_error},
                                              {"analytic_zero_drift", row.analytic_zero_drift},
                                              {"m_effective", row.m_effective}});
    }
    if (report.fit) {
        j["fit"] = ordered_json{{"slope", report.fit->slope},
                                {"intercept", report.fit->intercept},
                                {"r_squared", report.fit->r_squared}};
    } else {
        j["fit"] = nullptr;
    }
    return j.dump(2) + "\n";
}

std::string gap_report_csv(const GapReport& report) {
    std::string out = "delta,gap_max,gap_pooled,stderr\n";
    for (const auto& row : report.per_delta) {
        out += format_double(row.delta) + "," + format_double(row.gap_max) + "," +
               format_double(row.gap_pooled) + "," + format_double(row.std_error) + "\n";
    }
    return out;
}

std::string moment_report_json(const MomentCheckResult& result, const SdeProblem& problem,
                               double q, double delta, std::uint64_t master_seed,
                               std::int64_t paths) {
    ordered_json j;
    j["problem"] = problem_json(problem);
    j["q"] = q;
    j["delta"] = delta;
    j["master_seed"] = master_seed;
    j["paths"] = paths;
    j["m_effective"] = result.m_effective;
    j["empirical_sup_moment"] = result.empirical_sup_moment;
    j["std_error"] = result.std_error;
    j["argmax_index"] = result.argmax_index;
    j["c3"] = result.c3;
    j["pass"] = result.pass;
    j["low_confidence"] = result.low_confidence;
    return j.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw io_error("write to '" + path + "' failed");
}

}  // namespace stablesde
