#include "stablesde/stats.hpp"

#include <algorithm>
#include <cmath>

#include "stablesde/errors.hpp"

namespace stablesde {

double normal_cdf(double x, double mean, double variance) {
    return 0.5 * std::erfc(-(x - mean) / std::sqrt(2.0 * variance));
}

double cauchy_cdf(double x, double scale) {
    return 0.5 + std::atan(x / scale) / M_PI;
}

namespace {

// Tail of the Kolmogorov distribution, Q(lambda) = 2 sum (-1)^{k-1} exp(-2 k^2 lambda^2),
// with the small-sample correction folded into lambda by the callers.
double kolmogorov_q(double lambda) {
    if (lambda < 1e-3) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 101; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += sign * term;
        sign = -sign;
        if (term < 1e-16 * std::abs(sum) || term < 1e-300) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

double ks_p_value(double d, double effective_n) {
    const double sq = std::sqrt(effective_n);
    return kolmogorov_q(d * (sq + 0.12 + 0.11 / sq));
}

}  // namespace

KsResult ks_test(std::span<const double> sample, const std::function<double(double)>& cdf) {
    if (sample.empty()) throw validation_error("ks_test requires a nonempty sample");
    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        d = std::max(d, std::max((static_cast<double>(i) + 1.0) / n - f,
                                 f - static_cast<double>(i) / n));
    }
    return KsResult{d, ks_p_value(d, n)};
}

KsResult ks_test_two_sample(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw validation_error("ks_test requires nonempty samples");
    std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < sa.size() && j < sb.size()) {
        const double x = std::min(sa[i], sb[j]);
        while (i < sa.size() && sa[i] <= x) ++i;
        while (j < sb.size() && sb[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / static_cast<double>(sa.size()) -
                                 static_cast<double>(j) / static_cast<double>(sb.size())));
    }
    const double ne = static_cast<double>(sa.size()) * static_cast<double>(sb.size()) /
                      static_cast<double>(sa.size() + sb.size());
    return KsResult{d, ks_p_value(d, ne)};
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw validation_error("fit_line requires two same-length samples of size >= 2");
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw validation_error("fit_line requires non-constant x");
    const double slope = sxy / sxx;
    double r2 = 1.0;
    if (syy > 0.0) {
        double ss_res = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double resid = y[i] - (my + slope * (x[i] - mx));
            ss_res += resid * resid;
        }
        r2 = 1.0 - ss_res / syy;
    }
    return LineFit{slope, my - slope * mx, r2};
}

Summary summarize(std::span<const double> values) {
    Summary s;
    s.n = static_cast<std::int64_t>(values.size());
    if (s.n == 0) return s;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(s.n);
    if (s.n < 2) return s;
    double m2 = 0.0, m4 = 0.0;
    for (double v : values) {
        const double d = v - s.mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    s.variance = m2 / static_cast<double>(s.n - 1);
    s.std_error = std::sqrt(s.variance / static_cast<double>(s.n));
    const double m2n = m2 / static_cast<double>(s.n);
    if (m2n > 0.0) s.excess_kurtosis = (m4 / static_cast<double>(s.n)) / (m2n * m2n) - 3.0;
    return s;
}

double quantile(std::vector<double> sorted, double u) {
    if (sorted.empty()) throw validation_error("quantile of empty sample");
    std::sort(sorted.begin(), sorted.end());
    if (u <= 0.0) return sorted.front();
    if (u >= 1.0) return sorted.back();
    const double pos = u * (static_cast<double>(sorted.size()) - 1.0);
    const auto lo = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(lo);
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
}

}  // namespace stablesde
