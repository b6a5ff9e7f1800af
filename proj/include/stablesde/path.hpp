#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stablesde/grid.hpp"
#include "stablesde/problem.hpp"
#include "stablesde/rng.hpp"
#include "stablesde/stable.hpp"

namespace stablesde {

/// Realized driving noise on a grid: N i.i.d. increments distributed
/// S_alpha(delta^{1/alpha}, 0, 0) together with their running sums
/// level[i] = L(t_i), level[0] = 0.
///
/// The levels are the authoritative view for coupling: coarsen() copies
/// them verbatim at shared nodes, so every resolution of one realization
/// sees bit-identical noise sums there. The increments are the per-step
/// view (for a coarsened path, ascending-order sums of the fine
/// increments in each chunk); the two views agree up to roundoff.
class NoisePath {
  public:
    static NoisePath from_increments(double alpha, const GridSpec& grid,
                                     std::vector<double> increments);

    double alpha() const { return alpha_; }
    const GridSpec& grid() const { return grid_; }
    const std::vector<double>& increments() const { return increments_; }

    /// L(t_i) as a partial sum of increments; size N+1.
    double level(std::int64_t i) const { return levels_[static_cast<std::size_t>(i)]; }
    const std::vector<double>& levels() const { return levels_; }

  private:
    friend NoisePath generate_increments(double, const GridSpec&, RngStream&);
    friend NoisePath coarsen(const NoisePath&, std::int64_t);
    NoisePath(double alpha, const GridSpec& grid) : alpha_(alpha), grid_(grid) {}

    double alpha_;
    GridSpec grid_;
    std::vector<double> increments_;
    std::vector<double> levels_;
};

/// Draw the N increments for a grid from one stream, each with scale
/// delta^{1/alpha}. Deterministic per (stream, grid).
NoisePath generate_increments(double alpha, const GridSpec& grid, RngStream& stream);

/// Aggregate fine increments into chunks of `ratio`, producing the same
/// realization viewed on the coarser grid. Coarse increment j is the
/// ascending-order sum of fine increments [j*ratio, (j+1)*ratio); coarse
/// levels are copied from the fine ones, which keeps the shared nodes
/// bit-identical.
NoisePath coarsen(const NoisePath& noise, std::int64_t ratio);

/// One Euler path Y_0..Y_N on a grid. If a state ever became non-finite,
/// first_nonfinite holds the earliest such index; values are propagated
/// in full double precision either way, never clamped, because extreme
/// excursions are a legitimate feature of heavy-tailed noise.
struct EmPath {
    GridSpec grid;
    std::vector<double> values;
    std::optional<std::int64_t> first_nonfinite;

    bool all_finite() const { return !first_nonfinite.has_value(); }
};

/// Explicit Euler recursion Y_{i+1} = Y_i + f(Y_i) delta + dL_i.
///
/// The state is carried as (x0 + drift accumulator) + L(t_i) with that
/// fixed evaluation order. Mathematically this is the same recursion; in
/// floating point it pins the noise summation to the NoisePath levels, so
/// runs on coupled resolutions agree bit-for-bit in their noise term at
/// shared nodes (and exactly, for zero drift, in the whole state).
EmPath em_run(const SdeProblem& problem, const NoisePath& noise);

/// Continuous-time extension of a coarse Euler path between its nodes:
///
///   Y(t) = Y_i + f(Y_i) (t - t_i) + (L(t) - L(t_i)),  t in [t_i, t_{i+1}),
///
/// where the noise difference is the exact partial sum of fine increments
/// over (t_i, t]. t must be a node of the fine grid (index `fine_index`);
/// the driving process is never sampled off the fine grid. At coarse
/// nodes this returns the discrete value exactly.
double interpolant_eval(const SdeProblem& problem, const EmPath& coarse_path,
                        const NoisePath& fine_noise, std::int64_t fine_index);

/// Same, addressed by time; rejects t that is not a fine-grid node.
double interpolant_eval_at_time(const SdeProblem& problem, const EmPath& coarse_path,
                                const NoisePath& fine_noise, double t);

}  // namespace stablesde
