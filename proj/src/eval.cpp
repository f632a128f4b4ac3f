#include "stabsel/eval.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

#include "stabsel/parallel.hpp"

namespace stabsel::eval {

namespace {

std::vector<std::size_t> range(std::size_t lo, std::size_t hi)
{
    std::vector<std::size_t> out;
    for (std::size_t i = lo; i < hi; ++i) {
        out.push_back(i);
    }
    return out;
}

void check_selection(const RegressionData& data, const std::vector<std::size_t>& selected,
                     bool allow_intercept_only)
{
    if (selected.empty() && !allow_intercept_only) {
        throw std::invalid_argument("ols_fit: empty selection (intercept-only model must be requested explicitly)");
    }
    for (const auto k : selected) {
        if (k >= data.predictors()) {
            throw std::invalid_argument("ols_fit: selected column " + std::to_string(k) + " out of range");
        }
    }
}

// Normal equations of [1, scaled selected columns], grown row by row.
class RollingOls {
public:
    RollingOls(const RegressionData& data, const std::vector<std::size_t>& selected, std::size_t n_train)
        : data_(data), selected_(selected)
    {
        const auto k = static_cast<Eigen::Index>(selected.size());
        means_ = Eigen::VectorXd::Zero(k);
        scales_ = Eigen::VectorXd::Ones(k);
        const double n = static_cast<double>(n_train);
        for (Eigen::Index j = 0; j < k; ++j) {
            const auto col = data.z.col(static_cast<Eigen::Index>(selected[static_cast<std::size_t>(j)]))
                                 .head(static_cast<Eigen::Index>(n_train));
            means_(j) = col.mean();
            const double sd = std::sqrt((col.array() - means_(j)).square().sum() / n);
            scales_(j) = sd > 0.0 ? sd : 1.0;
        }
        gram_ = Eigen::MatrixXd::Zero(k + 1, k + 1);
        moment_ = Eigen::VectorXd::Zero(k + 1);
        for (std::size_t r = 0; r < n_train; ++r) {
            absorb(r);
        }
    }

    Eigen::VectorXd features(std::size_t row) const
    {
        Eigen::VectorXd x(static_cast<Eigen::Index>(selected_.size()) + 1);
        x(0) = 1.0;
        for (std::size_t j = 0; j < selected_.size(); ++j) {
            const auto jj = static_cast<Eigen::Index>(j);
            x(jj + 1) = (data_.z(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(selected_[j])) -
                         means_(jj)) / scales_(jj);
        }
        return x;
    }

    void absorb(std::size_t row)
    {
        const Eigen::VectorXd x = features(row);
        gram_.selfadjointView<Eigen::Lower>().rankUpdate(x);
        moment_ += x * data_.y(static_cast<Eigen::Index>(row));
    }

    // Minimum-norm least squares via the pseudo-inverse of the Gram matrix.
    void solve()
    {
        const Eigen::MatrixXd full = gram_.selfadjointView<Eigen::Lower>();
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(full.rows(), full.cols());
        // Gram pivots scale with squared singular values of the design.
        cod.setThreshold(1e-11);
        cod.compute(full);
        coef_ = cod.solve(moment_);
        rank_deficient_ = cod.rank() < full.rows();
    }

    double predict(std::size_t row) const { return features(row).dot(coef_); }
    bool rank_deficient() const { return rank_deficient_; }

private:
    const RegressionData& data_;
    const std::vector<std::size_t>& selected_;
    Eigen::VectorXd means_;
    Eigen::VectorXd scales_;
    Eigen::MatrixXd gram_;
    Eigen::VectorXd moment_;
    Eigen::VectorXd coef_;
    bool rank_deficient_ = false;
};

}  // namespace

Split split(const RegressionData& data, double train_fraction)
{
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw std::invalid_argument("split: train fraction must lie in (0, 1)");
    }
    const std::size_t n = data.rows();
    const auto n_train = static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(n)));
    if (n_train == 0 || n_train == n) {
        throw std::invalid_argument("split: fraction " + std::to_string(train_fraction) + " of " + std::to_string(n) +
                                    " rows leaves one side empty");
    }
    return {data.subset(range(0, n_train)), data.subset(range(n_train, n))};
}

double OlsFit::predict(const Eigen::RowVectorXd& z_row) const
{
    double value = intercept;
    for (std::size_t j = 0; j < selected.size(); ++j) {
        value += coefficients(static_cast<Eigen::Index>(j)) * z_row(static_cast<Eigen::Index>(selected[j]));
    }
    return value;
}

OlsFit ols_fit(const RegressionData& train, const std::vector<std::size_t>& selected, bool allow_intercept_only)
{
    check_selection(train, selected, allow_intercept_only);
    const std::size_t n = train.rows();
    if (n <= selected.size()) {
        throw std::invalid_argument("ols_fit: " + std::to_string(n) + " training rows cannot support " +
                                    std::to_string(selected.size()) + " selected predictors");
    }
    const auto k = static_cast<Eigen::Index>(selected.size());
    Eigen::MatrixXd x(static_cast<Eigen::Index>(n), k + 1);
    x.col(0).setOnes();
    for (Eigen::Index j = 0; j < k; ++j) {
        x.col(j + 1) = train.z.col(static_cast<Eigen::Index>(selected[static_cast<std::size_t>(j)]));
    }
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(x);
    const Eigen::VectorXd coef = cod.solve(train.y);

    OlsFit out;
    out.selected = selected;
    out.intercept = coef(0);
    out.coefficients = coef.tail(k);
    out.rank = static_cast<std::size_t>(cod.rank());
    out.rank_deficient = cod.rank() < k + 1;
    return out;
}

Metrics forecast_metrics(const std::vector<double>& predictions, const std::vector<double>& actuals, double eps)
{
    if (predictions.size() != actuals.size() || predictions.empty()) {
        throw std::invalid_argument("forecast_metrics: predictions and actuals must be non-empty and aligned");
    }
    Metrics out;
    double sq = 0.0;
    double pct = 0.0;
    std::size_t counted = 0;
    for (std::size_t i = 0; i < actuals.size(); ++i) {
        const double err = predictions[i] - actuals[i];
        sq += err * err;
        if (std::abs(actuals[i]) > eps) {
            pct += std::abs(err) / std::abs(actuals[i]);
            ++counted;
        } else {
            ++out.mape_skipped;
        }
    }
    out.rmse = std::sqrt(sq / static_cast<double>(actuals.size()));
    out.mape = counted ? 100.0 * pct / static_cast<double>(counted) : 0.0;
    return out;
}

ForecastReport rolling_forecast(const RegressionData& data, const std::vector<std::size_t>& selected,
                                double train_fraction, bool allow_intercept_only)
{
    const Split parts = split(data, train_fraction);
    const std::size_t n_train = parts.train.rows();
    check_selection(data, selected, allow_intercept_only);
    if (n_train <= selected.size()) {
        throw std::invalid_argument("rolling_forecast: " + std::to_string(n_train) +
                                    " training rows cannot support " + std::to_string(selected.size()) +
                                    " selected predictors");
    }

    ForecastReport report;
    report.n_train = n_train;
    report.n_test = data.rows() - n_train;
    report.selected = selected;
    for (const auto k : selected) {
        report.selected_predictors.push_back(data.descriptors[k]);
    }

    RollingOls model(data, selected, n_train);
    for (std::size_t row = n_train; row < data.rows(); ++row) {
        model.solve();
        report.rank_deficient_fits += model.rank_deficient() ? 1 : 0;
        report.predictions.push_back(model.predict(row));
        report.actuals.push_back(data.y(static_cast<Eigen::Index>(row)));
        model.absorb(row);
    }
    const Metrics m = forecast_metrics(report.predictions, report.actuals);
    report.rmse = m.rmse;
    report.mape = m.mape;
    report.mape_skipped = m.mape_skipped;
    return report;
}

std::vector<MethodResult> compare_methods(const RegressionData& data,
                                          const std::vector<selection::Strategy>& methods,
                                          double train_fraction, std::size_t workers)
{
    const Split parts = split(data, train_fraction);
    std::vector<MethodResult> results(methods.size());
    parallel_for(methods.size(), workers, [&](std::size_t i) {
        results[i].method = methods[i].name;
        try {
            const auto selected = methods[i].select(parts.train);
            results[i].report = rolling_forecast(data, selected, train_fraction);
        } catch (const std::exception& e) {
            results[i].error = e.what();
        }
    });
    return results;
}

void write_table_csv(std::ostream& out, const std::vector<MethodResult>& results, const std::string& dataset)
{
    out << "method," << dataset << '\n';
    for (const auto& r : results) {
        out << r.method << ',';
        if (r.report) {
            char cell[64];
            std::snprintf(cell, sizeof cell, "%.3f/%.3f", r.report->rmse, r.report->mape);
            out << cell;
        } else {
            out << "NA";
        }
        out << '\n';
    }
}

}  // namespace stabsel::eval
