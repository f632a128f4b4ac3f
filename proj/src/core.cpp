#include "stabsel/core.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "stabsel/error.hpp"

namespace stabsel {

MultiSeries::MultiSeries(Eigen::MatrixXd endogenous, Eigen::MatrixXd exogenous,
                         std::vector<std::string> names,
                         std::optional<std::vector<double>> timestamps)
    : endogenous_(std::move(endogenous)),
      exogenous_(std::move(exogenous)),
      names_(std::move(names)),
      timestamps_(std::move(timestamps))
{
    if (endogenous_.rows() < 1) {
        throw std::invalid_argument("MultiSeries: at least one observation is required");
    }
    if (exogenous_.rows() != endogenous_.rows()) {
        // An empty exogenous block may come in as 0 x 0.
        if (exogenous_.size() == 0) {
            exogenous_.resize(endogenous_.rows(), 0);
        } else {
            throw std::invalid_argument("MultiSeries: endogenous and exogenous row counts differ");
        }
    }
    const auto columns = static_cast<std::size_t>(endogenous_.cols() + exogenous_.cols());
    if (names_.size() != columns) {
        throw std::invalid_argument("MultiSeries: expected " + std::to_string(columns) + " names, got " +
                                    std::to_string(names_.size()));
    }
    std::set<std::string> seen;
    for (const auto& name : names_) {
        if (!seen.insert(name).second) {
            throw std::invalid_argument("MultiSeries: duplicate column name '" + name + "'");
        }
    }
    if (!endogenous_.allFinite() || !exogenous_.allFinite()) {
        throw DataError("MultiSeries: non-finite values are not accepted");
    }
    if (timestamps_) {
        const auto& ts = *timestamps_;
        if (ts.size() != length()) {
            throw std::invalid_argument("MultiSeries: timestamp count does not match the series length");
        }
        for (std::size_t i = 1; i < ts.size(); ++i) {
            if (!(ts[i] > ts[i - 1])) {
                throw DataError("MultiSeries: timestamps must be strictly increasing (row " +
                                std::to_string(i + 1) + ")");
            }
        }
    }
}

MultiSeries MultiSeries::head(std::size_t rows) const
{
    if (rows < 1 || rows > length()) {
        throw std::invalid_argument("MultiSeries::head: row count out of range");
    }
    const auto r = static_cast<Eigen::Index>(rows);
    std::optional<std::vector<double>> ts;
    if (timestamps_) {
        ts.emplace(timestamps_->begin(), timestamps_->begin() + r);
    }
    return MultiSeries(endogenous_.topRows(r), exogenous_.topRows(r), names_, std::move(ts));
}

std::string predictor_name(const MultiSeries& series, const PredictorDescriptor& d)
{
    const std::string& base = d.kind == PredictorKind::endogenous ? series.endogenous_name(d.series_index)
                                                                  : series.exogenous_name(d.series_index);
    return base + "_lag" + std::to_string(d.lag);
}

RegressionData RegressionData::subset(const std::vector<std::size_t>& rows) const
{
    RegressionData out;
    const auto n = static_cast<Eigen::Index>(rows.size());
    out.y.resize(n);
    out.z.resize(n, z.cols());
    out.response_time.reserve(rows.size());
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto r = static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)]);
        out.y(i) = y(r);
        out.z.row(i) = z.row(r);
        out.response_time.push_back(response_time[static_cast<std::size_t>(r)]);
    }
    out.descriptors = descriptors;
    out.column_means = column_means;
    out.column_scales = column_scales;
    out.response_mean = response_mean;
    out.constant_columns = constant_columns;
    return out;
}

RegressionData build_design(const MultiSeries& series, std::size_t target, const LagSpec& lags)
{
    const std::size_t T = series.length();
    const std::size_t d = series.endogenous_count();
    const std::size_t m = series.exogenous_count();

    if (target >= d) {
        throw std::invalid_argument("build_design: target " + std::to_string(target) +
                                    " is not an endogenous column (d = " + std::to_string(d) + ")");
    }
    if (lags.p_tilde + lags.s < 1) {
        throw std::invalid_argument("build_design: p_tilde + s must be at least 1");
    }
    const std::size_t max_lag = lags.max_lag();
    if (max_lag >= T) {
        throw std::invalid_argument("build_design: series of length " + std::to_string(T) +
                                    " is too short for max lag " + std::to_string(max_lag));
    }
    const std::size_t p = d * lags.p_tilde + m * lags.s;
    if (p == 0) {
        throw std::invalid_argument("build_design: lag spec yields no predictors");
    }

    RegressionData out;
    out.descriptors.reserve(p);
    for (std::size_t lag = 1; lag <= lags.p_tilde; ++lag) {
        for (std::size_t i = 0; i < d; ++i) {
            out.descriptors.push_back({PredictorKind::endogenous, i, lag});
        }
    }
    for (std::size_t lag = 0; lag < lags.s; ++lag) {
        for (std::size_t j = 0; j < m; ++j) {
            out.descriptors.push_back({PredictorKind::exogenous, j, lag});
        }
    }

    // 0-based: row r uses t0 = max_lag - 1 + r (time t = t0 + 1) and response row t0 + 1.
    const std::size_t n = T - max_lag;
    const auto& endo = series.endogenous();
    const auto& exo = series.exogenous();
    out.y.resize(static_cast<Eigen::Index>(n));
    out.z.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
    out.response_time.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t t0 = max_lag - 1 + r;
        const auto row = static_cast<Eigen::Index>(r);
        out.y(row) = endo(static_cast<Eigen::Index>(t0 + 1), static_cast<Eigen::Index>(target));
        out.response_time[r] = t0 + 2;
        for (std::size_t k = 0; k < p; ++k) {
            const auto& desc = out.descriptors[k];
            const auto col = static_cast<Eigen::Index>(desc.series_index);
            const auto kk = static_cast<Eigen::Index>(k);
            if (desc.kind == PredictorKind::endogenous) {
                out.z(row, kk) = endo(static_cast<Eigen::Index>(t0 + 1 - desc.lag), col);
            } else {
                out.z(row, kk) = exo(static_cast<Eigen::Index>(t0 - desc.lag), col);
            }
        }
    }
    out.column_means = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p));
    out.column_scales = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(p));
    out.constant_columns.assign(p, false);
    return out;
}

namespace {

RegressionData transform_columns(const RegressionData& data, bool rescale)
{
    const Eigen::Index n = data.z.rows();
    const Eigen::Index p = data.z.cols();
    if (n < 2) {
        throw std::invalid_argument("standardize: at least two rows are required");
    }
    RegressionData out = data;
    const double nd = static_cast<double>(n);
    for (Eigen::Index k = 0; k < p; ++k) {
        auto col = out.z.col(k);
        const double mean = col.mean();
        col.array() -= mean;
        const double sd = std::sqrt(col.squaredNorm() / nd);
        // Relative to the magnitude of the raw values; exact constants give sd == 0.
        const double reference = data.z.col(k).cwiseAbs().maxCoeff();
        const bool constant = !(sd > 1e-12 * std::max(1.0, reference));
        double scale = 1.0;
        if (rescale && !constant) {
            scale = sd;
            col /= sd;
        }
        if (constant) {
            col.setZero();
        }
        const auto ks = static_cast<std::size_t>(k);
        out.column_means(k) = data.column_means(k) + data.column_scales(k) * mean;
        out.column_scales(k) = data.column_scales(k) * scale;
        out.constant_columns[ks] = data.constant_columns[ks] || constant;
    }
    const double y_mean = out.y.mean();
    out.y.array() -= y_mean;
    out.response_mean = data.response_mean + y_mean;
    return out;
}

}  // namespace

RegressionData standardize(const RegressionData& data) { return transform_columns(data, true); }

RegressionData center(const RegressionData& data) { return transform_columns(data, false); }

OriginalScaleFit to_original_scale(const RegressionData& data, const Eigen::VectorXd& beta)
{
    if (beta.size() != data.z.cols()) {
        throw std::invalid_argument("to_original_scale: coefficient count does not match the design");
    }
    OriginalScaleFit out;
    out.coefficients = beta.cwiseQuotient(data.column_scales);
    out.intercept = data.response_mean - out.coefficients.dot(data.column_means);
    return out;
}

Eigen::VectorXd detrend_linear(const Eigen::VectorXd& series)
{
    const Eigen::Index n = series.size();
    if (n < 2) {
        throw std::invalid_argument("detrend_linear: at least two observations are required");
    }
    // Closed-form simple regression on the centered time index.
    const Eigen::VectorXd t = Eigen::VectorXd::LinSpaced(n, 1.0, static_cast<double>(n));
    const Eigen::VectorXd tc = t.array() - t.mean();
    const double mean = series.mean();
    const Eigen::VectorXd yc = series.array() - mean;
    const double slope = tc.dot(yc) / tc.squaredNorm();
    Eigen::VectorXd resid = yc - slope * tc;
    // One refinement pass removes the rounding left by the first projection.
    resid.array() -= resid.mean();
    resid -= (tc.dot(resid) / tc.squaredNorm()) * tc;
    return resid;
}

MultiSeries detrend(const MultiSeries& series)
{
    Eigen::MatrixXd endo = series.endogenous();
    Eigen::MatrixXd exo = series.exogenous();
    if (series.length() < 2) {
        throw std::invalid_argument("detrend: at least two observations are required");
    }
    for (Eigen::Index c = 0; c < endo.cols(); ++c) {
        endo.col(c) = detrend_linear(endo.col(c));
    }
    for (Eigen::Index c = 0; c < exo.cols(); ++c) {
        exo.col(c) = detrend_linear(exo.col(c));
    }
    return MultiSeries(std::move(endo), std::move(exo), series.names(), series.timestamps());
}

}  // namespace stabsel
