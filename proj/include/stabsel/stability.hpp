#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "stabsel/blocks.hpp"
#include "stabsel/core.hpp"
#include "stabsel/lasso.hpp"
#include "stabsel/random.hpp"

namespace stabsel::stability {

/**
 * A base selection procedure: maps a half-sample to the indices it selects.
 * The rng is the iteration's own stream, for randomized selectors.
 */
using BaseSelector = std::function<std::vector<std::size_t>(const RegressionData& half, Rng& rng)>;

/// Lasso at a fixed lambda on the centered half-sample.
BaseSelector lasso_selector(double lambda, lasso::FitOptions options = {});

/**
 * Block-pair average and simultaneous-selection scores.
 *
 * pi_av(k) = count_av(k) / (2B): fraction of the 2B half-sample runs that
 * selected k. pi_sim(k) = count_sim(k) / B: fraction of pairs where both
 * halves selected k. The integer counts are kept so identities can be checked
 * exactly.
 */
struct StabilityScores {
    std::size_t B = 0;
    std::vector<double> pi_av;
    std::vector<double> pi_sim;
    std::vector<std::size_t> count_av;
    std::vector<std::size_t> count_sim;
    std::vector<blocks::BlockPairSample> pairs;
    std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> selections;
    double lambda_q = 0.0;
    std::size_t q = 0;

    std::size_t predictors() const { return pi_av.size(); }
};

/// Builds scores from B paired selections over p predictors.
StabilityScores accumulate(std::size_t predictors,
                           std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> selections);

/**
 * Runs the base selector on both halves of B random complementary block pairs.
 *
 * Iteration j draws its pair from Rng::stream(seed, j), so the result does not
 * depend on `workers`. A failure in any iteration aborts the run; the error
 * names the failing iteration.
 */
StabilityScores bpa_scores(const RegressionData& data, const blocks::BlockPartition& partition, std::size_t B,
                           const BaseSelector& selector, std::uint64_t seed, std::size_t workers = 1);

/// bpa_scores with the lasso at lambda_q as base procedure.
StabilityScores bpa_scores(const RegressionData& data, const blocks::BlockPartition& partition, std::size_t B,
                           double lambda_q, std::uint64_t seed, std::size_t workers = 1,
                           const lasso::FitOptions& options = {});

enum class Measure { average, simultaneous };

/// {k : pi(k) >= phi} for the chosen measure, ascending. Requires phi in (0, 1].
std::vector<std::size_t> threshold(const StabilityScores& scores, double phi, Measure measure = Measure::average);

/// Number of (predictor) violations of pi_sim <= pi_av and 1 - 2 pi_av + pi_sim >= 0,
/// evaluated exactly on the integer counts.
std::size_t identity_violations(const StabilityScores& scores);

/// phi values 1/2 + k/(2B), k = 2..B, for which the error bound applies.
std::vector<double> phi_grid(std::size_t B);

bool on_phi_grid(double phi, std::size_t B);

/**
 * The improved-Markov constant C(phi, B):
 *   1 / (2 (2 phi - 1 - 1/(2B)))        for phi in (lower, 3/4],
 *   4 (1 - phi + 1/(2B)) / (1 + 1/B)    for phi in (3/4, 1],
 * with lower = min(1/2 + theta^2, 1/2 + 1/(2B) + 3 theta^2 / 4).
 *
 * phi must lie on phi_grid(B) and theta in (0, 1/sqrt(3)). theta only enters
 * the first branch's lower limit; without it the limit is not checked.
 * Throws std::invalid_argument ("phi too small") below the first branch.
 */
double error_constant(double phi, std::size_t B, std::optional<double> theta = std::nullopt);

/// 2 q^2 C(phi, B) / p, the bound on expected low-probability inclusions with
/// theta = q/p. Requires q/p < 1/sqrt(3).
double selection_bound(std::size_t q, std::size_t p, double phi, std::size_t B);

/// Smallest grid phi with selection_bound(q, p, phi, B) <= l * p. Throws
/// std::invalid_argument when no grid value qualifies.
double solve_phi(std::size_t q, std::size_t p, std::size_t B, double l);

}  // namespace stabsel::stability
