#include "stablesde/drift.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "stablesde/errors.hpp"
#include "stablesde/num_format.hpp"

namespace stablesde {

DriftSpec::DriftSpec(OddPowerDrift d) : v_(d) {
    if (d.coeff == 0.0)
        throw validation_error("odd_power drift requires c != 0 (use zero drift instead)");
    if (!(d.beta > 0.0) || !(d.beta < 1.0))
        throw validation_error("odd_power drift requires beta in (0, 1), got " +
                               format_double(d.beta));
}

DriftSpec::DriftSpec(CustomDrift d) : v_(std::move(d)) {
    const auto& c = std::get<CustomDrift>(v_);
    if (!c.f) throw validation_error("custom drift requires a callable");
    if (!(c.declared_k > 0.0))
        throw validation_error("custom drift requires declared K > 0");
    if (!(c.declared_beta > 0.0) || !(c.declared_beta < 1.0))
        throw validation_error("custom drift requires declared beta in (0, 1)");
}

double eval_drift(const DriftSpec& spec, double x) {
    if (!std::isfinite(x))
        throw validation_error("eval_drift requires finite x");
    return std::visit(
        [x](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, ZeroDrift>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, OddPowerDrift>) {
                // copysign keeps f exactly odd for every representable x.
                return d.coeff * std::copysign(std::pow(std::abs(x), d.beta), x);
            } else {
                return d.f(x);
            }
        },
        spec.value());
}

HolderMeta holder_meta(const DriftSpec& spec) {
    return std::visit(
        [&spec](const auto& d) -> HolderMeta {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, ZeroDrift>) {
                return {0.0, 0.5, 0.0};  // degenerate convention, beta is a placeholder
            } else if constexpr (std::is_same_v<T, OddPowerDrift>) {
                // f(0) = 0, so K2 = K. The constant is attained at y = -x.
                const double k = std::abs(d.coeff) * std::pow(2.0, 1.0 - d.beta);
                return {k, d.beta, k};
            } else {
                const double f0 = std::abs(eval_drift(spec, 0.0));
                return {d.declared_k, d.declared_beta, std::max(d.declared_k, f0)};
            }
        },
        spec.value());
}

DriftSpec DriftSpec::parse(const std::string& text) {
    if (text == "zero") return zero();
    const std::string prefix = "odd_power:";
    if (text.rfind(prefix, 0) == 0) {
        double coeff = 1.0, beta = 0.0;
        bool saw_c = false, saw_beta = false;
        std::string body = text.substr(prefix.size());
        std::size_t pos = 0;
        while (pos <= body.size()) {
            std::size_t comma = body.find(',', pos);
            if (comma == std::string::npos) comma = body.size();
            const std::string item = body.substr(pos, comma - pos);
            const std::size_t eq = item.find('=');
            if (eq == std::string::npos)
                throw validation_error("drift spec item '" + item + "' is not key=value");
            const std::string key = item.substr(0, eq);
            const std::string val = item.substr(eq + 1);
            if (key == "c") {
                coeff = parse_double(val);
                saw_c = true;
            } else if (key == "beta") {
                beta = parse_double(val);
                saw_beta = true;
            } else {
                throw validation_error("unknown drift spec key '" + key + "'");
            }
            pos = comma + 1;
        }
        if (!saw_c || !saw_beta)
            throw validation_error("odd_power drift requires both c and beta, e.g. "
                                   "odd_power:c=1,beta=4/9");
        return odd_power(coeff, beta);
    }
    throw validation_error("unknown drift spec '" + text +
                           "' (expected zero or odd_power:c=<c>,beta=<beta>)");
}

std::string DriftSpec::render() const {
    if (is_zero()) return "zero";
    if (const auto* op = as_odd_power())
        return "odd_power:c=" + format_double(op->coeff) + ",beta=" + format_double(op->beta);
    throw validation_error("custom drift has no text form");
}

HolderReport check_holder(const DriftSpec& spec, double k, double beta, std::int64_t n_pairs,
                          double domain_radius, RngStream& stream) {
    if (n_pairs < 1) throw validation_error("check_holder requires n_pairs >= 1");
    if (!(domain_radius > 0.0)) throw validation_error("check_holder requires domain_radius > 0");

    HolderReport report{0.0, 0.0, 0.0, true};
    auto consider = [&](double x, double y) {
        if (x == y) return;  // ratio undefined, never divide by zero
        const double ratio =
            std::abs(eval_drift(spec, x) - eval_drift(spec, y)) / std::pow(std::abs(x - y), beta);
        if (ratio > report.max_ratio) {
            report.max_ratio = ratio;
            report.arg_x = x;
            report.arg_y = y;
        }
    };

    const double r = domain_radius;
    // Adversarial pairs: antisymmetric across twelve decades, near zero,
    // near the boundary, and one-sided small gaps.
    for (double t = r; t > r * 1e-12; t /= 10.0) {
        consider(t, -t);
        consider(t, 0.0);
        consider(t, t / 2.0);
        consider(-t, 0.0);
    }
    consider(r, r * (1.0 - 1e-9));
    consider(-r, -r * (1.0 - 1e-9));
    consider(r, -r);

    for (std::int64_t i = 0; i < n_pairs; ++i) {
        const double x = r * (2.0 * stream.uniform_open01() - 1.0);
        const double y = r * (2.0 * stream.uniform_open01() - 1.0);
        consider(x, y);
    }

    report.pass = report.max_ratio <= k * (1.0 + 1e-9);
    return report;
}

}  // namespace stablesde
