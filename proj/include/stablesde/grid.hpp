#pragma once

#include <cstdint>
#include <string>

#include "stablesde/errors.hpp"

namespace stablesde {

/// Uniform time grid on [0, T] built from an integer step count, so that
/// N * delta == T holds by construction instead of by assumption.
class GridSpec {
  public:
    GridSpec(double horizon, std::int64_t steps) : t_(horizon), n_(steps) {
        if (!(t_ > 0.0)) throw validation_error("grid requires T > 0");
        if (n_ < 1) throw validation_error("grid requires N >= 1");
        if (!(delta() < 1.0))
            throw validation_error("grid requires delta = T/N in (0, 1); increase N above T");
    }

    double horizon() const { return t_; }
    std::int64_t steps() const { return n_; }
    double delta() const { return t_ / static_cast<double>(n_); }

    /// t_i = T * (i/N); lands exactly on T at i = N.
    double time(std::int64_t i) const {
        return t_ * (static_cast<double>(i) / static_cast<double>(n_));
    }

    bool operator==(const GridSpec& other) const { return t_ == other.t_ && n_ == other.n_; }

  private:
    double t_;
    std::int64_t n_;
};

}  // namespace stablesde
