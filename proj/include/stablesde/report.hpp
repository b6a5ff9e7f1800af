#pragma once

#include <string>

#include "stablesde/config.hpp"
#include "stablesde/study.hpp"

namespace stablesde {

/// JSON form of a convergence study. Contains everything needed to
/// reproduce the run (problem, seeds, grid layout) and nothing
/// scheduling-dependent: identical configs give identical bytes for any
/// worker count.
std::string study_report_json(const StudyReport& report, const SdeProblem& problem);

/// CSV form: header "delta,error_p,error_root,stderr", one row per delta.
std::string study_report_csv(const StudyReport& report);

std::string gap_report_json(const GapReport& report, const SdeProblem& problem,
                            std::uint64_t master_seed, std::int64_t paths);
std::string gap_report_csv(const GapReport& report);

std::string moment_report_json(const MomentCheckResult& result, const SdeProblem& problem,
                               double q, double delta, std::uint64_t master_seed,
                               std::int64_t paths);

/// Write a whole file, throwing io_error on failure.
void write_file(const std::string& path, const std::string& content);

}  // namespace stablesde
