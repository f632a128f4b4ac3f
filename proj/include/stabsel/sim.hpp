#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "stabsel/core.hpp"
#include "stabsel/random.hpp"
#include "stabsel/selection.hpp"

namespace stabsel::sim {

/// Spectral radius of the AR companion matrix (0 for an empty coefficient list).
double spectral_radius(const std::vector<double>& coeffs);

bool is_stationary(const std::vector<double>& coeffs);

/**
 * Gaussian AR(p) path of length T: x_t = sum_i coeffs[i] x_{t-1-i} + e_t,
 * e_t ~ N(0, sigma^2), after discarding `burn_in` initial draws.
 * Non-stationary coefficients are rejected with std::invalid_argument.
 */
std::vector<double> simulate_ar(const std::vector<double>& coeffs, std::size_t length, double sigma, Rng& rng,
                                std::size_t burn_in = 500);

/**
 * AR(3)-X generator: Y_t = sum_i theta_i Y_{t-i} + sum_j beta_j X^j_t + e_t.
 *
 * The n_true signal series follow a Gaussian AR(exogenous_ar) process (i.i.d.
 * when exogenous_ar is empty). Decoys are AR(3) series with random stationary
 * coefficients and the noise series are i.i.d. N(0, 1); neither enters Y.
 */
struct ArxConfig {
    std::size_t length = 10000;
    std::vector<double> theta = {0.5, -0.2, 0.1};
    std::size_t n_true = 50;
    std::size_t n_decoy_ar = 52;
    std::size_t n_noise = 2;
    double beta_sd = 0.05;
    std::optional<std::vector<double>> beta;  // fixed coefficients instead of N(0, beta_sd^2) draws
    std::vector<double> exogenous_ar = {0.6, 0.2};
    double exogenous_sd = 1.0;
    double sigma = 1.0;  // innovation sd of Y
    std::size_t burn_in = 500;
    LagSpec lags{3, 1};  // design the truth set is expressed in

    /// n_true = 50, n_decoy_ar = 52, n_noise = 2 (104 exogenous candidates), T = 10000.
    static ArxConfig full_profile();

    /// Throws std::invalid_argument listing what is wrong.
    void validate() const;
};

/// Predictor indices (in the design built with the config's lags) that enter the DGP.
struct SelectionTruth {
    std::vector<std::size_t> true_set;
    std::size_t candidate_count = 0;
};

struct ArxSample {
    MultiSeries series;
    SelectionTruth truth;
    std::vector<double> beta;
};

ArxSample simulate_arx(const ArxConfig& config, Rng& rng);

/// Adds independent N(0, sigma^2) noise to every endogenous and exogenous value.
MultiSeries add_noise(const MultiSeries& series, double sigma, Rng& rng);

struct Rates {
    double tpr = 0.0;
    double fpr = 0.0;
    bool tpr_by_convention = false;  // empty truth set: tpr reported as 1
};

Rates tpr_fpr(const std::vector<std::size_t>& selected, const SelectionTruth& truth);

/// Noise-sweep protocol: for each seed, one AR(3)-X draw; for each sigma,
/// fresh noise on predictors and response, then every method's selection.
struct SweepConfig {
    ArxConfig arx;
    std::vector<double> sigmas = {0.0, 0.25, 0.5, 1.0, 2.0};
    std::size_t seeds = 10;
    std::uint64_t seed = 0;
    std::vector<selection::Strategy> methods;
    std::size_t workers = 1;
};

struct SweepRow {
    double sigma = 0.0;
    std::size_t seed_index = 0;
    std::string method;
    double tpr = 0.0;
    double fpr = 0.0;
    std::size_t selected = 0;
};

std::vector<SweepRow> run_sweep(const SweepConfig& config);

/// CSV with columns sigma,seed,method,tpr,fpr.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace stabsel::sim
