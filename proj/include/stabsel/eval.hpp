#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "stabsel/core.hpp"
#include "stabsel/selection.hpp"

namespace stabsel::eval {

struct Split {
    RegressionData train;
    RegressionData test;
};

/// Chronological split: the first floor(fraction * n) rows train, the rest test.
Split split(const RegressionData& data, double train_fraction);

/// Least-squares fit of Y on an intercept and the selected columns.
struct OlsFit {
    std::vector<std::size_t> selected;
    double intercept = 0.0;
    Eigen::VectorXd coefficients;  // aligned with `selected`
    std::size_t rank = 0;
    bool rank_deficient = false;  // minimum-norm solution returned

    double predict(const Eigen::RowVectorXd& z_row) const;
};

/**
 * Solved with a complete orthogonal decomposition, so rank-deficient
 * selections get the minimum-norm solution. An empty selection is only
 * accepted with `allow_intercept_only` (the fit then predicts the train mean).
 * Throws std::invalid_argument when n_train <= |selected|.
 */
OlsFit ols_fit(const RegressionData& train, const std::vector<std::size_t>& selected,
               bool allow_intercept_only = false);

struct Metrics {
    double rmse = 0.0;
    double mape = 0.0;  // percent
    std::size_t mape_skipped = 0;  // actuals with |a| <= eps
};

Metrics forecast_metrics(const std::vector<double>& predictions, const std::vector<double>& actuals,
                         double eps = 1e-8);

struct ForecastReport {
    double rmse = 0.0;
    double mape = 0.0;
    std::size_t mape_skipped = 0;
    std::size_t n_train = 0;
    std::size_t n_test = 0;
    std::size_t rank_deficient_fits = 0;
    std::vector<double> predictions;
    std::vector<double> actuals;
    std::vector<std::size_t> selected;
    std::vector<PredictorDescriptor> selected_predictors;
};

/**
 * Rolling one-step-ahead evaluation: every test row is predicted from the OLS
 * fit on all earlier rows, then absorbed into the training set before the
 * next prediction. Regressors are scaled with the initial training set's
 * means and deviations, which stay frozen while rolling.
 */
ForecastReport rolling_forecast(const RegressionData& data, const std::vector<std::size_t>& selected,
                                double train_fraction = 0.67, bool allow_intercept_only = false);

struct MethodResult {
    std::string method;
    std::optional<ForecastReport> report;
    std::string error;  // set when the method failed
};

/// Selection on the training rows only, then rolling_forecast per method.
/// A failing method is reported, not thrown.
std::vector<MethodResult> compare_methods(const RegressionData& data,
                                          const std::vector<selection::Strategy>& methods,
                                          double train_fraction = 0.67, std::size_t workers = 1);

/// Two-column table: method, "rmse/mape" for the named dataset.
void write_table_csv(std::ostream& out, const std::vector<MethodResult>& results, const std::string& dataset);

}  // namespace stabsel::eval
