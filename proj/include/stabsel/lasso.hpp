#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

#include "stabsel/core.hpp"

namespace stabsel::lasso {

// Objective throughout: (1/(2n)) ||Y - Z beta||^2 + lambda ||beta||_1, no
// intercept (callers center the data first).

struct FitOptions {
    double tol = 1e-7;
    std::size_t max_iter = 100000;  // coordinate-descent sweeps
    bool record_objective = false;
};

struct LassoFit {
    double lambda = 0.0;
    Eigen::VectorXd beta;
    std::vector<std::size_t> active_set;  // indices with beta != 0, ascending
    std::size_t iterations = 0;
    bool converged = false;
    double max_kkt_violation = 0.0;
    std::vector<double> objective_history;  // one entry per sweep when requested
};

/// Descending regularization grid, values[0] = lambda_max.
struct LambdaPath {
    std::vector<double> values;
};

/// max_k |Z_k' Y| / n: the smallest lambda with an all-zero solution.
double lambda_max(const RegressionData& data);

/**
 * Log-spaced grid of `count` values from lambda_max down to ratio * lambda_max.
 * A zero lambda_max yields the single-value path {0}.
 */
LambdaPath lambda_path(const RegressionData& data, std::size_t count = 100, double ratio = 1e-3);

double objective(const RegressionData& data, const Eigen::VectorXd& beta, double lambda);

/// Largest violation of the lasso optimality conditions at beta.
double max_kkt_violation(const RegressionData& data, const Eigen::VectorXd& beta, double lambda);

/**
 * Cyclic coordinate descent with soft-thresholding.
 *
 * Sweeps alternate between all coordinates and the current active set until
 * the largest coefficient change drops below tol * max(1, ||beta||_inf) and
 * the KKT conditions hold to within tol. Running out of sweeps returns the
 * current iterate with converged = false.
 */
LassoFit fit(const RegressionData& data, double lambda, const FitOptions& options = {});
LassoFit fit(const RegressionData& data, double lambda, const FitOptions& options,
             const Eigen::VectorXd& warm_start);

/// Fits every path value in order, each warm-started from the previous solution.
std::vector<LassoFit> fit_path(const RegressionData& data, const LambdaPath& path, const FitOptions& options = {});

struct QEstimate {
    double lambda = 0.0;
    std::size_t path_index = 0;
    bool exact = true;  // false: no grid value gave exactly q, first crossing used
    LassoFit fit;
};

/**
 * Smallest grid lambda whose active set has exactly q entries. Without an
 * exact match, the first grid value (scanning downwards) with at least q
 * entries is returned and `exact` is cleared. Throws NumericalError when even
 * the smallest lambda selects fewer than q predictors.
 */
QEstimate q_estimate(const RegressionData& data, const LambdaPath& path, std::size_t q,
                     const FitOptions& options = {});

/// Active set of the fit at lambda. Throws NumericalError if the solver did not converge.
std::vector<std::size_t> select(const RegressionData& data, double lambda, const FitOptions& options = {});

}  // namespace stabsel::lasso

namespace stabsel::lasso {

struct CrossValidation {
    std::vector<double> mean_error;  // per path value
    std::size_t best_index = 0;
    double lambda = 0.0;
};

/**
 * K-fold cross-validation over the path with contiguous folds (no
 * shuffling). Each training fold is centered; the held-out error is the mean
 * squared one-step error. Picks the lambda with the smallest mean error.
 */
CrossValidation cross_validate(const RegressionData& data, const LambdaPath& path, std::size_t folds = 10,
                               const FitOptions& options = {});

}  // namespace stabsel::lasso
