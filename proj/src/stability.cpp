#include "stabsel/stability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "stabsel/error.hpp"
#include "stabsel/parallel.hpp"

namespace stabsel::stability {

namespace {

constexpr double kGridTol = 1e-9;

double theta_limit() { return 1.0 / std::sqrt(3.0); }

void count_into(std::vector<std::size_t>& counts, const std::vector<std::size_t>& selected)
{
    for (const auto k : selected) {
        if (k >= counts.size()) {
            throw std::invalid_argument("base selector returned index " + std::to_string(k) +
                                        " outside the predictor range");
        }
        ++counts[k];
    }
}

std::vector<std::size_t> normalized(std::vector<std::size_t> s)
{
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

}  // namespace

BaseSelector lasso_selector(double lambda, lasso::FitOptions options)
{
    return [lambda, options](const RegressionData& half, Rng&) {
        if (half.rows() < 2) {
            throw std::invalid_argument("half-sample has fewer than two design rows; use longer blocks");
        }
        return lasso::select(center(half), lambda, options);
    };
}

StabilityScores accumulate(std::size_t predictors,
                           std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> selections)
{
    StabilityScores out;
    out.B = selections.size();
    if (out.B == 0) {
        throw std::invalid_argument("accumulate: at least one pair is required");
    }
    out.count_av.assign(predictors, 0);
    out.count_sim.assign(predictors, 0);
    for (auto& [a, b] : selections) {
        a = normalized(std::move(a));
        b = normalized(std::move(b));
        count_into(out.count_av, a);
        count_into(out.count_av, b);
        std::vector<std::size_t> both;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
        count_into(out.count_sim, both);
    }
    out.pi_av.resize(predictors);
    out.pi_sim.resize(predictors);
    const double twice_b = 2.0 * static_cast<double>(out.B);
    const double b = static_cast<double>(out.B);
    for (std::size_t k = 0; k < predictors; ++k) {
        out.pi_av[k] = static_cast<double>(out.count_av[k]) / twice_b;
        out.pi_sim[k] = static_cast<double>(out.count_sim[k]) / b;
    }
    out.selections = std::move(selections);
    return out;
}

StabilityScores bpa_scores(const RegressionData& data, const blocks::BlockPartition& partition, std::size_t B,
                           const BaseSelector& selector, std::uint64_t seed, std::size_t workers)
{
    if (B < 1) {
        throw std::invalid_argument("bpa_scores: B must be at least 1");
    }
    if (partition.odd_count < 2) {
        throw std::invalid_argument("bpa_scores: need at least two odd blocks (mu_T >= 2)");
    }
    std::vector<blocks::BlockPairSample> pairs(B);
    std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> selections(B);

    parallel_for(B, workers, [&](std::size_t j) {
        const std::string where = "BPA iteration " + std::to_string(j + 1) + ": ";
        try {
            Rng rng = Rng::stream(seed, j);
            pairs[j] = blocks::sample_pair(partition, rng);
            selections[j].first = selector(blocks::gather(data, partition, pairs[j].first), rng);
            selections[j].second = selector(blocks::gather(data, partition, pairs[j].second), rng);
        } catch (const NumericalError& e) {
            throw NumericalError(where + e.what());
        } catch (const DataError& e) {
            throw DataError(where + e.what());
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(where + e.what());
        }
    });

    StabilityScores out = accumulate(data.predictors(), std::move(selections));
    out.pairs = std::move(pairs);
    return out;
}

StabilityScores bpa_scores(const RegressionData& data, const blocks::BlockPartition& partition, std::size_t B,
                           double lambda_q, std::uint64_t seed, std::size_t workers,
                           const lasso::FitOptions& options)
{
    StabilityScores out = bpa_scores(data, partition, B, lasso_selector(lambda_q, options), seed, workers);
    out.lambda_q = lambda_q;
    return out;
}

std::vector<std::size_t> threshold(const StabilityScores& scores, double phi, Measure measure)
{
    if (!(phi > 0.0 && phi <= 1.0)) {
        throw std::invalid_argument("threshold: phi must lie in (0, 1]");
    }
    // Compare on counts so grid values such as 1/2 + 3/(2B) are not lost to rounding.
    const bool average = measure == Measure::average;
    const double denom = static_cast<double>(average ? 2 * scores.B : scores.B);
    const auto& counts = average ? scores.count_av : scores.count_sim;
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        if (static_cast<double>(counts[k]) >= phi * denom - kGridTol) {
            out.push_back(k);
        }
    }
    return out;
}

std::size_t identity_violations(const StabilityScores& scores)
{
    std::size_t bad = 0;
    const std::size_t B = scores.B;
    for (std::size_t k = 0; k < scores.predictors(); ++k) {
        const std::size_t av = scores.count_av[k];  // over 2B
        const std::size_t sim = scores.count_sim[k];  // over B
        // pi_sim <= pi_av  <=>  2 sim <= av ;  1 - 2 pi_av + pi_sim >= 0  <=>  av <= B + sim
        const bool ordered = 2 * sim <= av;
        const bool eq17 = av <= B + sim;
        const bool consistent = scores.pi_av[k] == static_cast<double>(av) / static_cast<double>(2 * B) &&
                                scores.pi_sim[k] == static_cast<double>(sim) / static_cast<double>(B);
        if (!ordered || !eq17 || !consistent || scores.pi_sim[k] > scores.pi_av[k]) {
            ++bad;
        }
    }
    return bad;
}

std::vector<double> phi_grid(std::size_t B)
{
    std::vector<double> grid;
    for (std::size_t k = 2; k <= B; ++k) {
        grid.push_back(0.5 + static_cast<double>(k) / (2.0 * static_cast<double>(B)));
    }
    return grid;
}

bool on_phi_grid(double phi, std::size_t B)
{
    if (B < 2) {
        return false;
    }
    const double k = (phi - 0.5) * 2.0 * static_cast<double>(B);
    const double nearest = std::round(k);
    return std::abs(k - nearest) < 1e-6 && nearest >= 2.0 && nearest <= static_cast<double>(B);
}

double error_constant(double phi, std::size_t B, std::optional<double> theta)
{
    if (B < 2) {
        throw std::invalid_argument("error_constant: B must be at least 2");
    }
    if (!on_phi_grid(phi, B)) {
        throw std::invalid_argument("error_constant: phi = " + std::to_string(phi) +
                                    " is not on the grid {1/2 + 1/B, 1/2 + 3/(2B), ..., 1}");
    }
    if (theta && !(*theta > 0.0 && *theta < theta_limit())) {
        throw std::invalid_argument("error_constant: theta must lie in (0, 1/sqrt(3))");
    }
    const double b = static_cast<double>(B);
    if (phi > 0.75) {
        return 4.0 * (1.0 - phi + 1.0 / (2.0 * b)) / (1.0 + 1.0 / b);
    }
    if (theta) {
        const double t2 = *theta * *theta;
        const double lower = std::min(0.5 + t2, 0.5 + 1.0 / (2.0 * b) + 0.75 * t2);
        if (!(phi > lower)) {
            throw std::invalid_argument("phi too small for the error bound: phi = " + std::to_string(phi) +
                                        " must exceed " + std::to_string(lower));
        }
    }
    return 1.0 / (2.0 * (2.0 * phi - 1.0 - 1.0 / (2.0 * b)));
}

double selection_bound(std::size_t q, std::size_t p, double phi, std::size_t B)
{
    if (p == 0) {
        throw std::invalid_argument("selection_bound: p must be positive");
    }
    const double theta = static_cast<double>(q) / static_cast<double>(p);
    if (!(theta < theta_limit())) {
        throw std::invalid_argument("selection_bound: theta = q/p = " + std::to_string(theta) +
                                    " is outside the bound's range (must be < 1/sqrt(3))");
    }
    if (q == 0) {
        return 0.0;
    }
    const double c = error_constant(phi, B, theta);
    const double qd = static_cast<double>(q);
    return 2.0 * qd * qd * c / static_cast<double>(p);
}

double solve_phi(std::size_t q, std::size_t p, std::size_t B, double l)
{
    if (!(l > 0.0 && l <= 1.0)) {
        throw std::invalid_argument("solve_phi: l must lie in (0, 1]");
    }
    if (p == 0 || !(static_cast<double>(q) / static_cast<double>(p) < theta_limit())) {
        throw std::invalid_argument("solve_phi: theta = q/p must be < 1/sqrt(3)");
    }
    const double target = l * static_cast<double>(p);
    for (const double phi : phi_grid(B)) {
        double bound = 0.0;
        try {
            bound = selection_bound(q, p, phi, B);
        } catch (const std::invalid_argument&) {
            continue;  // below the first branch's lower limit
        }
        if (bound <= target) {
            return phi;
        }
    }
    throw std::invalid_argument("target l = " + std::to_string(l) + " unachievable for q = " + std::to_string(q) +
                                ", p = " + std::to_string(p) + ", B = " + std::to_string(B));
}

}  // namespace stabsel::stability
