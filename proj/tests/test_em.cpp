#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "stablesde/errors.hpp"
#include "stablesde/path.hpp"

using namespace stablesde;

namespace {

SdeProblem example_problem() {
    return SdeProblem(DriftSpec::odd_power(1.0, 4.0 / 9.0), 1.0, 1.8, 2.0);
}

SdeProblem zero_problem(double x0 = 1.0) {
    return SdeProblem(DriftSpec::zero(), x0, 1.8, 2.0);
}

}  // namespace

TEST_CASE("grid construction and validation") {
    const GridSpec g(2.0, 2000);
    CHECK(g.delta() == 0.001);
    CHECK(g.time(0) == 0.0);
    CHECK(g.time(2000) == 2.0);  // lands exactly on T
    CHECK(g.time(1000) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(GridSpec(0.0, 10), validation_error);
    CHECK_THROWS_AS(GridSpec(-1.0, 10), validation_error);
    CHECK_THROWS_AS(GridSpec(2.0, 0), validation_error);
    CHECK_THROWS_AS(GridSpec(2.0, 2), validation_error);  // delta = 1 not in (0,1)
    CHECK_NOTHROW(GridSpec(2.0, 3));
}

TEST_CASE("generate_increments is deterministic and has the right shape") {
    const GridSpec grid(2.0, 2000);
    RngStream s1(42, 0), s2(42, 0);
    const NoisePath a = generate_increments(1.8, grid, s1);
    const NoisePath b = generate_increments(1.8, grid, s2);
    REQUIRE(a.increments().size() == 2000);
    CHECK(a.level(0) == 0.0);
    for (std::size_t i = 0; i < a.increments().size(); ++i)
        REQUIRE(a.increments()[i] == b.increments()[i]);
    for (std::int64_t i = 0; i <= 2000; ++i) REQUIRE(a.level(i) == b.level(i));
}

TEST_CASE("mean |increment| scales like 4^{1/alpha} between step sizes") {
    // Self-similarity oracle: E|dL| at delta vs 4*delta has exact ratio
    // 4^{1/alpha} by the scaling of the stable family.
    const double alpha = 1.8;
    const GridSpec fine(2.0, 100000);
    const GridSpec coarse4(2.0, 25000);
    RngStream s1(10, 0), s2(10, 1);
    const NoisePath a = generate_increments(alpha, fine, s1);
    const NoisePath b = generate_increments(alpha, coarse4, s2);
    double ma = 0, mb = 0;
    for (double x : a.increments()) ma += std::abs(x);
    for (double x : b.increments()) mb += std::abs(x);
    ma /= static_cast<double>(a.increments().size());
    mb /= static_cast<double>(b.increments().size());
    const double expected = std::pow(4.0, 1.0 / alpha);
    CHECK(mb / ma == doctest::Approx(expected).epsilon(0.03));
}

TEST_CASE("coarsen: chunk sums, telescoping, and level copies") {
    // T < 1 so even the one-step coarsening keeps delta inside (0,1)
    const GridSpec grid(0.5, 8);
    const std::vector<double> incr{1.0, -1.0, 2.0, 0.0, 3.0, 1.0, -2.0, 1.0};
    const NoisePath fine = NoisePath::from_increments(1.5, grid, incr);

    const NoisePath by4 = coarsen(fine, 4);
    REQUIRE(by4.increments().size() == 2);
    CHECK(by4.increments()[0] == 2.0);
    CHECK(by4.increments()[1] == 3.0);
    CHECK(by4.grid().delta() == 0.25);

    // ratio = N collapses to a single increment equal to the full sum
    const NoisePath whole = coarsen(fine, 8);
    REQUIRE(whole.increments().size() == 1);
    CHECK(whole.increments()[0] == 5.0);
    CHECK(whole.level(1) == fine.level(8));

    // levels at shared nodes are bitwise copies of the fine levels
    const NoisePath by2 = coarsen(fine, 2);
    for (std::int64_t j = 0; j <= 4; ++j) REQUIRE(by2.level(j) == fine.level(2 * j));

    CHECK_THROWS_AS(coarsen(fine, 3), validation_error);
    CHECK_THROWS_AS(coarsen(fine, 1), validation_error);
}

TEST_CASE("coarsen of all-zero increments stays zero") {
    const GridSpec grid(1.0, 16);
    const NoisePath fine = NoisePath::from_increments(1.8, grid, std::vector<double>(16, 0.0));
    const NoisePath coarse = coarsen(fine, 4);
    for (double x : coarse.increments()) CHECK(x == 0.0);
}

TEST_CASE("coupling invariant survives random noise at random ratios") {
    RngStream stream(2718, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const std::int64_t n_coarse = 2 + (stream.next_u64() % 17);
        const std::int64_t ratio = 2 + (stream.next_u64() % 9);
        const GridSpec grid(1.5, n_coarse * ratio);
        const NoisePath fine = generate_increments(1.6, grid, stream);
        const NoisePath coarse = coarsen(fine, ratio);
        for (std::int64_t j = 0; j <= n_coarse; ++j)
            REQUIRE(coarse.level(j) == fine.level(j * ratio));
    }
}

TEST_CASE("zero drift collapses the recursion to x0 plus the noise levels") {
    const SdeProblem problem = zero_problem(1.0);
    const GridSpec grid(2.0, 512);
    RngStream stream(99, 0);
    const NoisePath noise = generate_increments(problem.alpha, grid, stream);
    const EmPath path = em_run(problem, noise);
    REQUIRE(path.values.size() == 513);
    CHECK(path.values[0] == 1.0);
    for (std::int64_t i = 0; i <= 512; ++i)
        REQUIRE(path.values[static_cast<std::size_t>(i)] == 1.0 + noise.level(i));
}

TEST_CASE("zero-drift strong error between coupled resolutions is exactly zero") {
    const SdeProblem problem = zero_problem(0.375);
    const GridSpec fine_grid(2.0, 4096);
    RngStream stream(123456, 3);
    const NoisePath fine = generate_increments(problem.alpha, fine_grid, stream);
    const EmPath ref = em_run(problem, fine);
    for (std::int64_t ratio : {2, 8, 64, 1024}) {
        const NoisePath coarse = coarsen(fine, ratio);
        const EmPath run = em_run(problem, coarse);
        for (std::int64_t j = 0; j <= coarse.grid().steps(); ++j)
            REQUIRE(run.values[static_cast<std::size_t>(j)] ==
                    ref.values[static_cast<std::size_t>(j * ratio)]);
    }
}

TEST_CASE("two deterministic steps of the recursion") {
    // delta = 0.5, zero noise: Y_1 = 1 + 0.5 * f(1) = 1.5,
    // Y_2 = 1.5 + 0.5 * 1.5^{4/9}
    const SdeProblem problem(DriftSpec::odd_power(1.0, 4.0 / 9.0), 1.0, 1.8, 1.0);
    const GridSpec grid(1.0, 2);
    const NoisePath noise = NoisePath::from_increments(1.8, grid, {0.0, 0.0});
    const EmPath path = em_run(problem, noise);
    CHECK(path.values[0] == 1.0);
    CHECK(path.values[1] == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(path.values[2] ==
          doctest::Approx(1.5 + 0.5 * std::pow(1.5, 4.0 / 9.0)).epsilon(1e-14));
}

TEST_CASE("the 2001-node default scenario path") {
    const SdeProblem problem = example_problem();
    const GridSpec grid(2.0, 2000);
    RngStream stream(42, 0);
    const NoisePath noise = generate_increments(problem.alpha, grid, stream);
    const EmPath path = em_run(problem, noise);
    REQUIRE(path.values.size() == 2001);
    CHECK(path.values[0] == 1.0);
    CHECK(path.all_finite());
    // spot-check the recursion against a literal reimplementation
    double y = 1.0;
    for (std::int64_t i = 0; i < 2000; ++i)
        y = y + eval_drift(problem.drift, y) * grid.delta() +
            noise.increments()[static_cast<std::size_t>(i)];
    CHECK(path.values[2000] == doctest::Approx(y).epsilon(1e-12));
}

TEST_CASE("em_run flags the first non-finite state and keeps going") {
    // a drift that explodes once the state leaves [-8, 8]
    const DriftSpec bomb = DriftSpec::custom(
        [](double x) { return std::abs(x) > 8.0 ? std::numeric_limits<double>::infinity() : 0.0; },
        1.0, 0.5);
    const SdeProblem problem(bomb, 0.0, 1.5, 1.0);
    const GridSpec grid(1.0, 4);
    const NoisePath noise = NoisePath::from_increments(1.5, grid, {10.0, 0.0, 0.0, 0.0});
    const EmPath path = em_run(problem, noise);
    REQUIRE(path.first_nonfinite.has_value());
    CHECK(*path.first_nonfinite == 2);  // state 10 at node 1, drift blows up entering node 2
    CHECK_FALSE(path.all_finite());
    CHECK(path.values[1] == 10.0);
    CHECK(std::isinf(path.values[2]));
}

TEST_CASE("em_run validates noise/problem agreement") {
    const SdeProblem problem = example_problem();
    const GridSpec grid(2.0, 10);
    RngStream stream(1, 0);
    const NoisePath wrong_alpha = generate_increments(1.5, grid, stream);
    CHECK_THROWS_AS(em_run(problem, wrong_alpha), validation_error);
    const GridSpec wrong_t(1.0, 10);
    const NoisePath wrong_horizon = generate_increments(1.8, wrong_t, stream);
    CHECK_THROWS_AS(em_run(problem, wrong_horizon), validation_error);
}

TEST_CASE("interpolant equals the discrete path at coarse nodes") {
    const SdeProblem problem = example_problem();
    const GridSpec fine_grid(2.0, 256);
    RngStream stream(3141, 0);
    const NoisePath fine = generate_increments(problem.alpha, fine_grid, stream);
    const NoisePath coarse = coarsen(fine, 8);
    const EmPath path = em_run(problem, coarse);
    for (std::int64_t j = 0; j <= 32; ++j)
        REQUIRE(interpolant_eval(problem, path, fine, j * 8) ==
                path.values[static_cast<std::size_t>(j)]);
}

TEST_CASE("interpolant with zero drift reconstructs x0 + L(t) between nodes") {
    const SdeProblem problem = zero_problem(2.0);
    const GridSpec fine_grid(2.0, 256);
    RngStream stream(14, 0);
    const NoisePath fine = generate_increments(problem.alpha, fine_grid, stream);
    const NoisePath coarse = coarsen(fine, 16);
    const EmPath path = em_run(problem, coarse);
    for (std::int64_t m : {1, 7, 17, 100, 255}) {
        const double expected = 2.0 + fine.level(m / 16 * 16) +
                                [&] {
                                    double s = 0;
                                    for (std::int64_t k = m / 16 * 16; k < m; ++k)
                                        s += fine.increments()[static_cast<std::size_t>(k)];
                                    return s;
                                }();
        REQUIRE(interpolant_eval(problem, path, fine, m) == doctest::Approx(expected).epsilon(1e-15));
    }
}

TEST_CASE("interpolant adds the linear drift term over a half cell") {
    const SdeProblem problem(DriftSpec::odd_power(1.0, 4.0 / 9.0), 1.0, 1.8, 1.0);
    const GridSpec fine_grid(1.0, 64);
    const NoisePath fine = NoisePath::from_increments(1.8, fine_grid, std::vector<double>(64, 0.0));
    const NoisePath coarse = coarsen(fine, 8);
    const EmPath path = em_run(problem, coarse);
    const double delta_c = coarse.grid().delta();
    for (std::int64_t cell : {0, 3, 7}) {
        const double y = path.values[static_cast<std::size_t>(cell)];
        const double expected = y + eval_drift(problem.drift, y) * (delta_c / 2.0);
        CHECK(interpolant_eval(problem, path, fine, cell * 8 + 4) ==
              doctest::Approx(expected).epsilon(1e-14));
    }
}

TEST_CASE("interpolant by time accepts fine nodes and rejects everything else") {
    const SdeProblem problem = zero_problem();
    const GridSpec fine_grid(2.0, 64);
    RngStream stream(5, 0);
    const NoisePath fine = generate_increments(problem.alpha, fine_grid, stream);
    const NoisePath coarse = coarsen(fine, 8);
    const EmPath path = em_run(problem, coarse);
    const double t3 = fine_grid.time(3);
    CHECK(interpolant_eval_at_time(problem, path, fine, t3) ==
          interpolant_eval(problem, path, fine, 3));
    CHECK_THROWS_AS(interpolant_eval_at_time(problem, path, fine, t3 + 0.4 * fine_grid.delta()),
                    validation_error);
    CHECK_THROWS_AS(interpolant_eval_at_time(problem, path, fine, 2.5), validation_error);
    CHECK_THROWS_AS(interpolant_eval(problem, path, fine, 65), validation_error);
    CHECK_THROWS_AS(interpolant_eval(problem, path, fine, -1), validation_error);

    RngStream other(5, 1);
    const GridSpec other_grid(1.0, 64);
    const SdeProblem other_problem(DriftSpec::zero(), 1.0, 1.8, 1.0);
    const NoisePath mismatched = generate_increments(1.8, other_grid, other);
    CHECK_THROWS_AS(interpolant_eval(other_problem, path, mismatched, 8), validation_error);
}

TEST_CASE("problem validation") {
    CHECK_THROWS_AS(SdeProblem(DriftSpec::zero(), 1.0, 1.0, 2.0), validation_error);
    CHECK_THROWS_AS(SdeProblem(DriftSpec::zero(), 1.0, 2.0, 2.0), validation_error);
    CHECK_THROWS_AS(SdeProblem(DriftSpec::zero(), 1.0, 1.8, 0.0), validation_error);
    CHECK_THROWS_AS(
        SdeProblem(DriftSpec::zero(), std::numeric_limits<double>::infinity(), 1.8, 1.0),
        validation_error);
    // 2*beta < alpha gates the theorem
    CHECK(example_problem().theorem_applies());
    CHECK(SdeProblem(DriftSpec::odd_power(1.0, 0.95), 1.0, 1.8, 2.0).theorem_applies() == false);
    CHECK(zero_problem().theorem_applies());
}
