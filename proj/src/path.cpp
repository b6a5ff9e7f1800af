#include "stablesde/path.hpp"

#include <cmath>
#include <limits>

#include "stablesde/num_format.hpp"

namespace stablesde {

NoisePath NoisePath::from_increments(double alpha, const GridSpec& grid,
                                     std::vector<double> increments) {
    if (static_cast<std::int64_t>(increments.size()) != grid.steps())
        throw validation_error("noise path needs exactly N increments");
    NoisePath path(alpha, grid);
    path.increments_ = std::move(increments);
    path.levels_.resize(path.increments_.size() + 1);
    path.levels_[0] = 0.0;
    for (std::size_t i = 0; i < path.increments_.size(); ++i)
        path.levels_[i + 1] = path.levels_[i] + path.increments_[i];
    return path;
}

NoisePath generate_increments(double alpha, const GridSpec& grid, RngStream& stream) {
    const StableParams params(alpha, increment_scale(alpha, grid.delta()));
    std::vector<double> increments(static_cast<std::size_t>(grid.steps()));
    for (auto& dl : increments) dl = sample_stable(params, stream);
    return NoisePath::from_increments(alpha, grid, std::move(increments));
}

NoisePath coarsen(const NoisePath& noise, std::int64_t ratio) {
    if (ratio < 2) throw validation_error("coarsen requires ratio >= 2");
    const std::int64_t n_fine = noise.grid().steps();
    if (n_fine % ratio != 0)
        throw validation_error("coarsen requires ratio to divide N: " + std::to_string(ratio) +
                               " does not divide " + std::to_string(n_fine));

    const std::int64_t n_coarse = n_fine / ratio;
    NoisePath coarse(noise.alpha(), GridSpec(noise.grid().horizon(), n_coarse));
    coarse.increments_.resize(static_cast<std::size_t>(n_coarse));
    coarse.levels_.resize(static_cast<std::size_t>(n_coarse) + 1);
    for (std::int64_t j = 0; j < n_coarse; ++j) {
        double sum = 0.0;  // ascending index order, fixed for reproducibility
        for (std::int64_t i = j * ratio; i < (j + 1) * ratio; ++i)
            sum += noise.increments()[static_cast<std::size_t>(i)];
        coarse.increments_[static_cast<std::size_t>(j)] = sum;
        coarse.levels_[static_cast<std::size_t>(j)] = noise.level(j * ratio);
    }
    coarse.levels_[static_cast<std::size_t>(n_coarse)] = noise.level(n_fine);
    return coarse;
}

EmPath em_run(const SdeProblem& problem, const NoisePath& noise) {
    if (noise.alpha() != problem.alpha)
        throw validation_error("noise alpha does not match the problem");
    if (noise.grid().horizon() != problem.horizon)
        throw validation_error("noise horizon does not match the problem");

    const GridSpec& grid = noise.grid();
    const double delta = grid.delta();
    const std::int64_t n = grid.steps();

    EmPath path{grid, std::vector<double>(static_cast<std::size_t>(n) + 1), std::nullopt};
    double drift_acc = 0.0;
    for (std::int64_t i = 0; i <= n; ++i) {
        const double y = (problem.x0 + drift_acc) + noise.level(i);
        path.values[static_cast<std::size_t>(i)] = y;
        if (!std::isfinite(y) && !path.first_nonfinite) path.first_nonfinite = i;
        if (i < n) {
            // NaN/inf propagate through the drift on purpose.
            const double f = std::isfinite(y) ? eval_drift(problem.drift, y)
                                              : std::numeric_limits<double>::quiet_NaN();
            drift_acc += f * delta;
        }
    }
    return path;
}

double interpolant_eval(const SdeProblem& problem, const EmPath& coarse_path,
                        const NoisePath& fine_noise, std::int64_t fine_index) {
    const std::int64_t n_coarse = coarse_path.grid.steps();
    const std::int64_t n_fine = fine_noise.grid().steps();
    if (coarse_path.grid.horizon() != fine_noise.grid().horizon())
        throw validation_error("coarse path and fine noise must share the horizon");
    if (n_fine % n_coarse != 0)
        throw validation_error("fine grid must refine the coarse grid by an integer ratio");
    const std::int64_t ratio = n_fine / n_coarse;
    if (fine_index < 0 || fine_index > n_fine)
        throw validation_error("fine_index outside [0, N]");

    const std::int64_t cell = fine_index / ratio;
    const std::int64_t rem = fine_index % ratio;
    const double y_i = coarse_path.values[static_cast<std::size_t>(cell)];
    if (rem == 0) return y_i;

    double noise_sum = 0.0;  // exact partial sum of fine increments, ascending
    for (std::int64_t k = cell * ratio; k < fine_index; ++k)
        noise_sum += fine_noise.increments()[static_cast<std::size_t>(k)];
    const double tau = static_cast<double>(rem) * fine_noise.grid().delta();
    return y_i + eval_drift(problem.drift, y_i) * tau + noise_sum;
}

double interpolant_eval_at_time(const SdeProblem& problem, const EmPath& coarse_path,
                                const NoisePath& fine_noise, double t) {
    const GridSpec& fine = fine_noise.grid();
    const double rel = t / fine.delta();
    const auto idx = static_cast<std::int64_t>(std::llround(rel));
    if (idx < 0 || idx > fine.steps() || std::abs(t - fine.time(idx)) > 1e-9 * fine.horizon())
        throw validation_error("t = " + format_double(t) +
                               " is not a fine-grid node; sampling the noise between grid "
                               "points is unsupported");
    return interpolant_eval(problem, coarse_path, fine_noise, idx);
}

}  // namespace stablesde
