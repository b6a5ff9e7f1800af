#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <variant>

#include "stablesde/rng.hpp"

namespace stablesde {

/// f(x) = 0.
struct ZeroDrift {};

/// f(x) = coeff * sign(x) * |x|^beta, the odd extension of x^beta to the
/// whole line. Globally beta-Hoelder with constant |coeff| * 2^{1-beta};
/// the worst ratio |f(x)-f(y)| / |x-y|^beta is attained at antisymmetric
/// pairs y = -x.
struct OddPowerDrift {
    double coeff;
    double beta;  // in (0,1)
};

/// User-supplied drift with declared Hoelder constants. The declaration is
/// trusted by construction; check_holder can falsify it empirically.
struct CustomDrift {
    std::function<double(double)> f;
    double declared_k;
    double declared_beta;
};

class DriftSpec {
  public:
    DriftSpec() : v_(ZeroDrift{}) {}
    DriftSpec(ZeroDrift d) : v_(d) {}
    DriftSpec(OddPowerDrift d);
    DriftSpec(CustomDrift d);

    static DriftSpec zero() { return DriftSpec(ZeroDrift{}); }
    static DriftSpec odd_power(double coeff, double beta) {
        return DriftSpec(OddPowerDrift{coeff, beta});
    }
    static DriftSpec custom(std::function<double(double)> f, double k, double beta) {
        return DriftSpec(CustomDrift{std::move(f), k, beta});
    }

    bool is_zero() const { return std::holds_alternative<ZeroDrift>(v_); }
    bool is_odd_power() const { return std::holds_alternative<OddPowerDrift>(v_); }
    const OddPowerDrift* as_odd_power() const { return std::get_if<OddPowerDrift>(&v_); }

    const std::variant<ZeroDrift, OddPowerDrift, CustomDrift>& value() const { return v_; }

    /// Config-file form: "zero" or "odd_power:c=<coeff>,beta=<beta>".
    /// Numbers accept plain decimals and fractions such as 4/9.
    static DriftSpec parse(const std::string& text);
    std::string render() const;  // rejects Custom (not expressible as text)

  private:
    std::variant<ZeroDrift, OddPowerDrift, CustomDrift> v_;
};

/// Hoelder data attached to a drift: |f(x)-f(y)| <= K |x-y|^beta and the
/// induced growth bound |f(x)| <= K2 (1 + |x|^beta) with K2 = max(K, |f(0)|).
/// K = K2 = 0 is the zero-drift convention (the drift contributes nothing
/// and the error-bound machinery short-circuits to zero).
struct HolderMeta {
    double k;
    double beta;
    double k2;
};

double eval_drift(const DriftSpec& spec, double x);

HolderMeta holder_meta(const DriftSpec& spec);

struct HolderReport {
    double max_ratio;
    double arg_x;
    double arg_y;
    bool pass;
};

/// Empirical falsifier for a claimed Hoelder bound: samples n_pairs random
/// pairs in [-R, R]^2 plus deterministic adversarial pairs (antisymmetric
/// y = -x across log-spaced magnitudes, near-zero and near-boundary pairs)
/// and reports the worst ratio |f(x)-f(y)| / |x-y|^beta. Passes iff
/// max_ratio <= K * (1 + 1e-9); the slack absorbs pow rounding at pairs
/// where the supremum is attained exactly.
HolderReport check_holder(const DriftSpec& spec, double k, double beta, std::int64_t n_pairs,
                          double domain_radius, RngStream& stream);

}  // namespace stablesde
