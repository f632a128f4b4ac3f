#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace stabsel {

/**
 * Endogenous (T x d) and exogenous (T x m) observations of a multivariate
 * time series, rows in time order.
 *
 * Names cover the endogenous columns first, then the exogenous ones, and must
 * be unique. Construction rejects non-finite values; the object is immutable
 * afterwards.
 */
class MultiSeries {
public:
    MultiSeries(Eigen::MatrixXd endogenous, Eigen::MatrixXd exogenous,
                std::vector<std::string> names,
                std::optional<std::vector<double>> timestamps = std::nullopt);

    std::size_t length() const { return static_cast<std::size_t>(endogenous_.rows()); }
    std::size_t endogenous_count() const { return static_cast<std::size_t>(endogenous_.cols()); }
    std::size_t exogenous_count() const { return static_cast<std::size_t>(exogenous_.cols()); }

    const Eigen::MatrixXd& endogenous() const { return endogenous_; }
    const Eigen::MatrixXd& exogenous() const { return exogenous_; }
    const std::vector<std::string>& names() const { return names_; }
    const std::optional<std::vector<double>>& timestamps() const { return timestamps_; }

    const std::string& endogenous_name(std::size_t i) const { return names_.at(i); }
    const std::string& exogenous_name(std::size_t j) const { return names_.at(endogenous_count() + j); }

    /// First `rows` observations (used for shift-consistency checks and
    /// chronological truncation).
    MultiSeries head(std::size_t rows) const;

private:
    Eigen::MatrixXd endogenous_;
    Eigen::MatrixXd exogenous_;
    std::vector<std::string> names_;
    std::optional<std::vector<double>> timestamps_;
};

/// Maximum endogenous lag (p_tilde) and exogenous lag window (s) of the VAR-X design.
struct LagSpec {
    std::size_t p_tilde = 1;
    std::size_t s = 1;

    std::size_t max_lag() const { return p_tilde > s ? p_tilde : s; }
};

enum class PredictorKind { endogenous, exogenous };

/**
 * Identifies one column of the design matrix.
 *
 * For a design row pairing response y_{t+1} with Z_t, an endogenous
 * descriptor with lag l refers to y_{t+1-l} (l >= 1) and an exogenous
 * descriptor with lag j refers to x_{t-j} (j >= 0).
 */
struct PredictorDescriptor {
    PredictorKind kind = PredictorKind::endogenous;
    std::size_t series_index = 0;
    std::size_t lag = 1;

    friend bool operator==(const PredictorDescriptor&, const PredictorDescriptor&) = default;
};

/// Human-readable column label, e.g. "y_lag1" or "temp_lag0".
std::string predictor_name(const MultiSeries& series, const PredictorDescriptor& d);

/**
 * Response vector and stacked design matrix of the one-step-ahead regression
 * y_{t+1} ~ Z_t.
 *
 * `response_time[i]` is the 1-based time index of row i's response. The
 * column means/scales describe the affine map applied to Z (identity when the
 * design is on its original scale); `response_mean` is the centering offset
 * of Y.
 */
struct RegressionData {
    Eigen::VectorXd y;
    Eigen::MatrixXd z;
    std::vector<PredictorDescriptor> descriptors;
    std::vector<std::size_t> response_time;
    Eigen::VectorXd column_means;
    Eigen::VectorXd column_scales;
    double response_mean = 0.0;
    std::vector<bool> constant_columns;

    std::size_t rows() const { return static_cast<std::size_t>(z.rows()); }
    std::size_t predictors() const { return static_cast<std::size_t>(z.cols()); }

    /// Rows with the given positions (ascending order expected), all metadata kept.
    RegressionData subset(const std::vector<std::size_t>& rows) const;
};

/**
 * Builds the lagged VAR-X design for endogenous column `target`.
 *
 * Row r corresponds to (1-based) t = max(p_tilde, s) + r and holds
 * [y_t ... y_{t-p_tilde+1}, x_t ... x_{t-s+1}] in lag-major order, paired with
 * the target component of y_{t+1}.
 *
 * Throws std::invalid_argument for an invalid lag spec or target.
 */
RegressionData build_design(const MultiSeries& series, std::size_t target, const LagSpec& lags);

/**
 * Centers every column of Z and scales it to unit standard deviation
 * ((1/n) * sum z^2 = 1), and centers Y. Constant columns are centered, keep
 * scale 1 and are flagged in `constant_columns`. Applying it to already
 * standardized data composes the recorded means/scales.
 */
RegressionData standardize(const RegressionData& data);

/// Centers Z columns and Y without rescaling.
RegressionData center(const RegressionData& data);

/// Coefficients on the original scale of Z, with the matching intercept.
struct OriginalScaleFit {
    Eigen::VectorXd coefficients;
    double intercept = 0.0;
};

/// Maps coefficients fitted on transformed data back to the original scale.
OriginalScaleFit to_original_scale(const RegressionData& data, const Eigen::VectorXd& beta);

/// Residuals of the least-squares fit of `series` on [1, t].
Eigen::VectorXd detrend_linear(const Eigen::VectorXd& series);

/// Applies detrend_linear to every endogenous and exogenous column.
MultiSeries detrend(const MultiSeries& series);

}  // namespace stabsel
