#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace stablesde {

double normal_cdf(double x, double mean, double variance);
double cauchy_cdf(double x, double scale);

struct KsResult {
    double statistic;  // sup-norm distance D
    double p_value;    // asymptotic (Kolmogorov distribution)
};

/// One-sample Kolmogorov-Smirnov against a continuous CDF.
KsResult ks_test(std::span<const double> sample, const std::function<double(double)>& cdf);

/// Two-sample Kolmogorov-Smirnov.
KsResult ks_test_two_sample(std::span<const double> a, std::span<const double> b);

struct LineFit {
    double slope;
    double intercept;
    double r_squared;
};

/// Ordinary least squares y = slope * x + intercept.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Running scalar summary: mean, standard error of the mean, variance,
/// excess kurtosis. Accumulated in a fixed order by the callers, so
/// results are independent of scheduling.
struct Summary {
    std::int64_t n = 0;
    double mean = 0.0;
    double variance = 0.0;        // sample variance (n-1 denominator)
    double std_error = 0.0;       // of the mean
    double excess_kurtosis = 0.0; // m4/m2^2 - 3; 0 for n < 2 or degenerate
};

Summary summarize(std::span<const double> values);

/// Empirical quantile by linear interpolation (sorts a copy).
double quantile(std::vector<double> sample, double u);

}  // namespace stablesde
