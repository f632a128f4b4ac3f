#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "stabsel/error.hpp"
#include "stabsel/lasso.hpp"
#include "stabsel/stability.hpp"
#include "support.hpp"

using namespace stabsel;
using stability::Measure;

namespace {

stabsel::RegressionData indexed_design(std::size_t T, std::size_t p, std::uint64_t seed)
{
    Rng rng(seed);
    const auto n = static_cast<Eigen::Index>(T - 1);
    auto d = testing::make_data(testing::gaussian_matrix(n, static_cast<Eigen::Index>(p), rng),
                                testing::gaussian_matrix(n, 1, rng).col(0));
    return d;
}

// Hand evaluation of the printed piecewise constant, used as an oracle.
double c_oracle(double phi, double B) { return phi > 0.75 ? 4 * (1 - phi + 1 / (2 * B)) / (1 + 1 / B) : 1 / (2 * (2 * phi - 1 - 1 / (2 * B))); }

}  // namespace

TEST_CASE("constant selector scores one everywhere it selects")
{
    const auto data = indexed_design(100, 5, 1);
    const auto part = blocks::partition(100, 5);
    const auto scores = stability::bpa_scores(
        data, part, 20, [](const RegressionData&, Rng&) { return std::vector<std::size_t>{3}; }, 7);
    for (std::size_t k = 0; k < 5; ++k) {
        CHECK(scores.pi_av[k] == (k == 3 ? 1.0 : 0.0));
        CHECK(scores.pi_sim[k] == (k == 3 ? 1.0 : 0.0));
    }
    CHECK(scores.selections.size() == 20);
    CHECK(scores.pairs.size() == 20);
}

TEST_CASE("selector firing on exactly one half of every pair")
{
    const auto data = indexed_design(100, 4, 2);
    const auto part = blocks::partition(100, 5);
    const auto first_block = part.odd_blocks.front();
    stability::BaseSelector selector = [first_block](const RegressionData& half, Rng&) {
        const bool has = std::any_of(half.response_time.begin(), half.response_time.end(),
                                     [&](std::size_t t) { return first_block.contains(t); });
        return has ? std::vector<std::size_t>{2} : std::vector<std::size_t>{};
    };
    const auto scores = stability::bpa_scores(data, part, 30, selector, 8);
    CHECK(scores.pi_av[2] == 0.5);
    CHECK(scores.pi_sim[2] == 0.0);
}

TEST_CASE("score identities hold for arbitrary selectors")
{
    Rng meta(3);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t p = 1 + meta.uniform_index(12);
        const std::size_t B = 1 + meta.uniform_index(30);
        const double rate = meta.uniform();
        const auto data = indexed_design(80, p, meta.next_u64());
        const auto part = blocks::partition(80, 1 + meta.uniform_index(10));
        stability::BaseSelector selector = [p, rate](const RegressionData&, Rng& rng) {
            std::vector<std::size_t> s;
            for (std::size_t k = 0; k < p; ++k) {
                if (rng.uniform() < rate) s.push_back(k);
            }
            return s;
        };
        const auto scores = stability::bpa_scores(data, part, B, selector, meta.next_u64());
        CHECK(stability::identity_violations(scores) == 0);
        for (std::size_t k = 0; k < p; ++k) {
            CHECK(scores.pi_sim[k] <= scores.pi_av[k]);
            CHECK(1.0 - 2.0 * scores.pi_av[k] + scores.pi_sim[k] >= -1e-15);
            CHECK(scores.pi_av[k] * 2.0 * B == doctest::Approx(std::round(scores.pi_av[k] * 2.0 * B)));
            CHECK(scores.pi_sim[k] * B == doctest::Approx(std::round(scores.pi_sim[k] * B)));
        }
    }
}

TEST_CASE("accumulate normalizes duplicates within a run")
{
    const auto scores = stability::accumulate(3, {{{1, 1, 0}, {1}}, {{2}, {2, 2}}});
    CHECK(scores.count_av == std::vector<std::size_t>{1, 2, 2});
    CHECK(scores.count_sim == std::vector<std::size_t>{0, 1, 1});
    CHECK_THROWS_AS(stability::accumulate(2, {{{5}, {}}}), std::invalid_argument);
}

TEST_CASE("lasso scores are identical for any worker count")
{
    Rng rng(4);
    Eigen::MatrixXd z = testing::gaussian_matrix(399, 12, rng);
    Eigen::VectorXd y = z.col(0) - 0.5 * z.col(3) + testing::gaussian_matrix(399, 1, rng).col(0);
    const auto data = standardize(testing::make_data(z, y));
    const auto part = blocks::partition(400, 20);
    const double lambda = 0.1 * lasso::lambda_max(data);
    const auto one = stability::bpa_scores(data, part, 25, lambda, 99, 1);
    const auto many = stability::bpa_scores(data, part, 25, lambda, 99, 4);
    CHECK(one.count_av == many.count_av);
    CHECK(one.count_sim == many.count_sim);
    CHECK(one.selections == many.selections);
    CHECK(one.lambda_q == lambda);
    CHECK(one.pi_av[0] == 1.0);
    const auto other_seed = stability::bpa_scores(data, part, 25, lambda, 100, 1);
    CHECK(other_seed.pairs.front().first != one.pairs.front().first);
}

TEST_CASE("failures name the iteration and keep their type")
{
    const auto data = indexed_design(100, 3, 5);
    const auto part = blocks::partition(100, 5);
    stability::BaseSelector failing = [](const RegressionData&, Rng&) -> std::vector<std::size_t> {
        throw NumericalError("solver diverged");
    };
    try {
        stability::bpa_scores(data, part, 5, failing, 1, 2);
        FAIL("expected NumericalError");
    } catch (const NumericalError& e) {
        CHECK(std::string(e.what()) == "BPA iteration 1: solver diverged");
    }
    CHECK_THROWS_AS(stability::bpa_scores(data, blocks::partition(100, 50), 5, failing, 1), std::invalid_argument);
    CHECK_THROWS_AS(stability::bpa_scores(data, part, 0, failing, 1), std::invalid_argument);
}

TEST_CASE("thresholding")
{
    stability::StabilityScores s = stability::accumulate(3, {{{0, 1}, {0}}, {{0}, {0, 2}}, {{0, 1}, {0, 1}}});
    // counts_av = {6, 3, 1} over 6; counts_sim = {3, 1, 0} over 3
    CHECK(stability::threshold(s, 1.0) == std::vector<std::size_t>{0});
    CHECK(stability::threshold(s, 1e-9) == std::vector<std::size_t>{0, 1, 2});
    CHECK(stability::threshold(s, 0.5) == std::vector<std::size_t>{0, 1});
    CHECK(stability::threshold(s, 1.0 / 3.0, Measure::simultaneous) == std::vector<std::size_t>{0, 1});
    CHECK_THROWS_AS(stability::threshold(s, 0.0), std::invalid_argument);

    stability::StabilityScores manual;
    manual.B = 10;
    manual.count_av = {18, 12, 6};
    manual.count_sim = {9, 5, 1};
    manual.pi_av = {0.9, 0.6, 0.3};
    manual.pi_sim = {0.9, 0.5, 0.1};
    CHECK(stability::threshold(manual, 0.8) == std::vector<std::size_t>{0});

    Rng rng(6);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> runs(20);
        for (auto& [a, b] : runs) {
            for (std::size_t k = 0; k < 8; ++k) {
                if (rng.uniform() < 0.6) a.push_back(k);
                if (rng.uniform() < 0.6) b.push_back(k);
            }
        }
        const auto scores = stability::accumulate(8, runs);
        for (double phi = 0.05; phi <= 1.0; phi += 0.05) {
            const auto lo = stability::threshold(scores, phi);
            const auto hi = stability::threshold(scores, std::min(1.0, phi + 0.05));
            CHECK(std::includes(lo.begin(), lo.end(), hi.begin(), hi.end()));
        }
    }
}

TEST_CASE("grid phi values survive rounding when thresholded")
{
    // 1/2 + 3/(2B) with B = 50 is 0.53; 53 of 100 runs must pass.
    stability::StabilityScores s;
    s.B = 50;
    s.count_av = {53, 52};
    s.count_sim = {0, 0};
    s.pi_av = {0.53, 0.52};
    s.pi_sim = {0.0, 0.0};
    CHECK(stability::threshold(s, 0.5 + 3.0 / 100.0) == std::vector<std::size_t>{0});
}

TEST_CASE("error constant hand evaluations")
{
    CHECK(stability::error_constant(0.9, 50) == doctest::Approx(0.431373).epsilon(1e-6));
    CHECK(std::abs(stability::error_constant(0.9, 50) - 0.44 / 1.02) < 1e-12);
    CHECK(std::abs(stability::error_constant(0.8, 50) - 0.84 / 1.02) < 1e-12);
    // Fraction of low-probability base selections kept at phi = 0.8, theta = 0.2: 0.329, not 0.28.
    CHECK(2 * 0.2 * stability::error_constant(0.8, 50, 0.2) == doctest::Approx(0.3294).epsilon(1e-3));
    CHECK(std::abs(stability::error_constant(0.7, 50, 0.2) - 1.0 / 0.78) < 1e-12);
    CHECK(stability::error_constant(0.7, 50, 0.2) == doctest::Approx(1.28205).epsilon(1e-5));
}

TEST_CASE("error constant matches the piecewise oracle on the whole grid")
{
    for (std::size_t B : {2u, 5u, 10u, 50u, 100u}) {
        const auto grid = stability::phi_grid(B);
        REQUIRE(grid.size() == B - 1);
        CHECK(grid.front() == doctest::Approx(0.5 + 1.0 / B));
        CHECK(grid.back() == doctest::Approx(1.0));
        double previous = INFINITY;
        for (double phi : grid) {
            CHECK(stability::on_phi_grid(phi, B));
            const double c = stability::error_constant(phi, B);
            CHECK(std::abs(c - c_oracle(phi, static_cast<double>(B))) < 1e-12);
            if (phi > 0.75) {
                CHECK(c <= previous);
                previous = c;
            }
        }
    }
    CHECK_FALSE(stability::on_phi_grid(0.5, 50));
    CHECK_FALSE(stability::on_phi_grid(0.805, 50));
    CHECK_THROWS_AS(stability::error_constant(0.805, 50), std::invalid_argument);
    CHECK_THROWS_AS(stability::error_constant(0.8, 50, 0.6), std::invalid_argument);
    // theta = 0.5: first-branch lower limit is min(0.75, 0.6975) = 0.6975.
    CHECK_THROWS_AS(stability::error_constant(0.68, 50, 0.5), std::invalid_argument);
    CHECK_NOTHROW(stability::error_constant(0.7, 50, 0.5));
}

TEST_CASE("selection bound")
{
    CHECK(stability::selection_bound(40, 104, 0.8, 50) == doctest::Approx(25.34).epsilon(1e-3));
    CHECK(std::abs(stability::selection_bound(40, 104, 0.8, 50) - 2.0 * 1600 * (0.84 / 1.02) / 104) < 1e-9);
    CHECK(stability::selection_bound(0, 104, 0.8, 50) == 0.0);
    CHECK(stability::selection_bound(10, 200, 0.9, 50) ==
          doctest::Approx(stability::selection_bound(10, 100, 0.9, 50) / 2.0));
    CHECK_THROWS_AS(stability::selection_bound(60, 100, 0.8, 50), std::invalid_argument);

    const std::size_t q = 8, p = 60, B = 50;
    double previous = INFINITY;
    for (double phi : stability::phi_grid(B)) {
        double bound = 0.0;
        try {
            bound = stability::selection_bound(q, p, phi, B);
        } catch (const std::invalid_argument&) {
            continue;
        }
        CHECK(bound <= previous + 1e-12);
        previous = bound;
    }
}

TEST_CASE("solving for the threshold")
{
    CHECK(stability::solve_phi(10, 100, 50, 0.05) == doctest::Approx(0.61));

    // Grid-scan oracle over the piecewise formula.
    for (std::size_t q : {1u, 5u, 10u, 20u}) {
        for (double l : {0.01, 0.05, 0.2, 1.0}) {
            const std::size_t p = 100, B = 50;
            const double theta = static_cast<double>(q) / p;
            double expected = -1.0;
            for (std::size_t k = 2; k <= B; ++k) {
                const double phi = 0.5 + k / 100.0;
                const double lower = std::min(0.5 + theta * theta, 0.51 + 0.75 * theta * theta);
                if (phi <= 0.75 && !(phi > lower)) continue;
                if (2.0 * q * q * c_oracle(phi, B) / p <= l * p) {
                    expected = phi;
                    break;
                }
            }
            if (expected < 0) {
                CHECK_THROWS_AS(stability::solve_phi(q, p, B, l), std::invalid_argument);
            } else {
                CHECK(stability::solve_phi(q, p, B, l) == doctest::Approx(expected).epsilon(1e-12));
            }
        }
    }
    CHECK(stability::solve_phi(1, 100, 50, 1.0) == doctest::Approx(0.52));
    CHECK_THROWS_AS(stability::solve_phi(100, 100, 50, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(stability::solve_phi(50, 100, 50, 0.001), std::invalid_argument);
    CHECK_THROWS_AS(stability::solve_phi(10, 100, 50, 0.0), std::invalid_argument);
}
