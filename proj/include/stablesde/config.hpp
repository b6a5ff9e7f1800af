#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace stablesde {

/// Flat experiment configuration: one [section] per subsystem, key = value
/// lines, '#' comments. parse(render(c)) == c for every valid c; flags on
/// the command line override whatever a file supplies.
struct RunConfig {
    // [problem]
    std::string drift = "odd_power:c=1,beta=4/9";
    double x0 = 1.0;
    double alpha = 1.8;
    double horizon = 2.0;

    // [study]
    std::vector<double> deltas;  // empty = dyadic default 2^{-4}..2^{-9} of T
    std::int64_t ref_ratio = 8;
    std::int64_t paths = 1000;
    double p = 2.0;
    std::uint64_t seed = 42;
    int threads = 0;
    double rate_margin = 0.05;

    // [sample]
    double sample_alpha = 1.8;
    double sample_sigma = 1.0;
    std::int64_t sample_n = 1000;
    std::uint64_t sample_seed = 42;

    // [constants]
    double constants_q = 0.0;  // 0 = midpoint default
    double constants_p = 2.0;
    double constants_delta = 0.001;

    // [moments]
    double moments_q = 1.3;
    double moments_delta = 0.001;
    std::int64_t moments_paths = 1000;
    std::uint64_t moments_seed = 42;

    // [gap]
    double gap_q = 1.0;
    std::int64_t gap_ref_ratio = 8;
    std::int64_t gap_paths = 1000;
    std::uint64_t gap_seed = 42;

    bool operator==(const RunConfig&) const = default;

    /// Deltas to use for studies: the explicit list, or the dyadic
    /// default scaled by the configured horizon.
    std::vector<double> study_deltas() const;

    static RunConfig parse(const std::string& text);
    static RunConfig load(const std::string& path);
    std::string render() const;
};

}  // namespace stablesde
