#include "stabsel/lasso.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "stabsel/error.hpp"

namespace stabsel::lasso {

namespace {

double soft_threshold(double rho, double lambda)
{
    if (std::abs(rho) <= lambda) {
        return 0.0;
    }
    return rho > 0.0 ? rho - lambda : rho + lambda;
}

double scaled_dot(const RegressionData& data, Eigen::Index k, const Eigen::VectorXd& v)
{
    return data.z.col(k).dot(v) / static_cast<double>(data.z.rows());
}

std::vector<std::size_t> nonzero_indices(const Eigen::VectorXd& beta)
{
    std::vector<std::size_t> out;
    for (Eigen::Index k = 0; k < beta.size(); ++k) {
        if (beta(k) != 0.0) {
            out.push_back(static_cast<std::size_t>(k));
        }
    }
    return out;
}

void check_inputs(const RegressionData& data, double lambda)
{
    if (data.z.rows() < 1) {
        throw std::invalid_argument("lasso: design has no rows");
    }
    if (data.y.size() != data.z.rows()) {
        throw std::invalid_argument("lasso: response length does not match design rows");
    }
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("lasso: lambda must be a finite non-negative value");
    }
}

}  // namespace

double lambda_max(const RegressionData& data)
{
    double out = 0.0;
    for (Eigen::Index k = 0; k < data.z.cols(); ++k) {
        out = std::max(out, std::abs(scaled_dot(data, k, data.y)));
    }
    return out;
}

LambdaPath lambda_path(const RegressionData& data, std::size_t count, double ratio)
{
    if (count < 2) {
        throw std::invalid_argument("lambda_path: count must be at least 2");
    }
    if (!(ratio > 0.0 && ratio < 1.0)) {
        throw std::invalid_argument("lambda_path: ratio must lie in (0, 1)");
    }
    const double top = lambda_max(data);
    if (top == 0.0) {
        return {{0.0}};
    }
    LambdaPath path;
    path.values.resize(count);
    const double step = std::log(ratio) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        path.values[i] = top * std::exp(step * static_cast<double>(i));
    }
    path.values.front() = top;
    return path;
}

double objective(const RegressionData& data, const Eigen::VectorXd& beta, double lambda)
{
    const double n = static_cast<double>(data.z.rows());
    return (data.y - data.z * beta).squaredNorm() / (2.0 * n) + lambda * beta.lpNorm<1>();
}

double max_kkt_violation(const RegressionData& data, const Eigen::VectorXd& beta, double lambda)
{
    const Eigen::VectorXd resid = data.y - data.z * beta;
    double worst = 0.0;
    for (Eigen::Index k = 0; k < data.z.cols(); ++k) {
        const double g = scaled_dot(data, k, resid);
        const double v = beta(k) != 0.0 ? std::abs(g - lambda * (beta(k) > 0.0 ? 1.0 : -1.0))
                                         : std::max(0.0, std::abs(g) - lambda);
        worst = std::max(worst, v);
    }
    return worst;
}

LassoFit fit(const RegressionData& data, double lambda, const FitOptions& options)
{
    return fit(data, lambda, options, Eigen::VectorXd::Zero(data.z.cols()));
}

LassoFit fit(const RegressionData& data, double lambda, const FitOptions& options,
             const Eigen::VectorXd& warm_start)
{
    check_inputs(data, lambda);
    const Eigen::Index p = data.z.cols();
    if (warm_start.size() != p) {
        throw std::invalid_argument("lasso: warm start has the wrong length");
    }
    const double n = static_cast<double>(data.z.rows());
    const Eigen::VectorXd col_sq = data.z.colwise().squaredNorm().transpose() / n;

    LassoFit out;
    out.lambda = lambda;
    out.beta = warm_start;
    for (Eigen::Index k = 0; k < p; ++k) {
        if (col_sq(k) == 0.0) {
            out.beta(k) = 0.0;
        }
    }
    Eigen::VectorXd resid = data.y - data.z * out.beta;

    auto update = [&](Eigen::Index k) {
        if (col_sq(k) == 0.0) {
            return 0.0;
        }
        const double old = out.beta(k);
        const double rho = scaled_dot(data, k, resid) + col_sq(k) * old;
        const double next = soft_threshold(rho, lambda) / col_sq(k);
        const double delta = next - old;
        if (delta != 0.0) {
            resid.noalias() -= delta * data.z.col(k);
            out.beta(k) = next;
        }
        return std::abs(delta);
    };
    auto record = [&] {
        if (options.record_objective) {
            out.objective_history.push_back(objective(data, out.beta, lambda));
        }
    };
    auto small = [&](double change, double tol) {
        return change < tol * std::max(1.0, out.beta.lpNorm<Eigen::Infinity>());
    };

    double change_tol = options.tol;
    std::vector<Eigen::Index> active;
    while (out.iterations < options.max_iter) {
        double change = 0.0;
        for (Eigen::Index k = 0; k < p; ++k) {
            change = std::max(change, update(k));
        }
        ++out.iterations;
        record();

        if (small(change, change_tol)) {
            out.max_kkt_violation = max_kkt_violation(data, out.beta, lambda);
            if (out.max_kkt_violation <= options.tol) {
                out.converged = true;
                break;
            }
            // Coefficient changes are tiny but optimality is not reached yet:
            // tighten the change criterion and keep sweeping.
            change_tol = std::max(change_tol * 0.1, 1e-15);
            continue;
        }

        active.clear();
        for (Eigen::Index k = 0; k < p; ++k) {
            if (out.beta(k) != 0.0) {
                active.push_back(k);
            }
        }
        while (out.iterations < options.max_iter) {
            double inner = 0.0;
            for (const auto k : active) {
                inner = std::max(inner, update(k));
            }
            ++out.iterations;
            record();
            if (small(inner, change_tol)) {
                break;
            }
        }
    }
    if (!out.converged) {
        out.max_kkt_violation = max_kkt_violation(data, out.beta, lambda);
    }
    out.active_set = nonzero_indices(out.beta);
    return out;
}

std::vector<LassoFit> fit_path(const RegressionData& data, const LambdaPath& path, const FitOptions& options)
{
    std::vector<LassoFit> fits;
    fits.reserve(path.values.size());
    Eigen::VectorXd warm = Eigen::VectorXd::Zero(data.z.cols());
    for (const double lambda : path.values) {
        fits.push_back(fit(data, lambda, options, warm));
        warm = fits.back().beta;
    }
    return fits;
}

QEstimate q_estimate(const RegressionData& data, const LambdaPath& path, std::size_t q, const FitOptions& options)
{
    if (path.values.empty()) {
        throw std::invalid_argument("q_estimate: empty lambda path");
    }
    if (q > data.predictors()) {
        throw std::invalid_argument("q_estimate: q = " + std::to_string(q) + " exceeds the predictor count " +
                                    std::to_string(data.predictors()));
    }
    if (q == 0) {
        QEstimate out;
        out.lambda = path.values.front();
        out.fit = fit(data, out.lambda, options);
        return out;
    }

    auto fits = fit_path(data, path, options);
    for (std::size_t i = 0; i < fits.size(); ++i) {
        if (!fits[i].converged) {
            throw NumericalError("q_estimate: lasso did not converge at lambda = " + std::to_string(path.values[i]));
        }
    }
    for (std::size_t i = fits.size(); i-- > 0;) {
        if (fits[i].active_set.size() == q) {
            return {path.values[i], i, true, std::move(fits[i])};
        }
    }
    for (std::size_t i = 0; i < fits.size(); ++i) {
        if (fits[i].active_set.size() >= q) {
            return {path.values[i], i, false, std::move(fits[i])};
        }
    }
    throw NumericalError("q unreachable on path: the smallest lambda selects " +
                         std::to_string(fits.back().active_set.size()) + " < q = " + std::to_string(q) +
                         " predictors");
}

std::vector<std::size_t> select(const RegressionData& data, double lambda, const FitOptions& options)
{
    auto result = fit(data, lambda, options);
    if (!result.converged) {
        throw NumericalError("lasso did not converge within " + std::to_string(options.max_iter) +
                             " sweeps at lambda = " + std::to_string(lambda));
    }
    return std::move(result.active_set);
}

}  // namespace stabsel::lasso

namespace stabsel::lasso {

CrossValidation cross_validate(const RegressionData& data, const LambdaPath& path, std::size_t folds,
                               const FitOptions& options)
{
    const std::size_t n = data.rows();
    if (folds < 2 || folds > n / 2) {
        throw std::invalid_argument("cross_validate: need 2 <= folds <= n/2");
    }
    if (path.values.empty()) {
        throw std::invalid_argument("cross_validate: empty lambda path");
    }
    CrossValidation out;
    out.mean_error.assign(path.values.size(), 0.0);
    for (std::size_t f = 0; f < folds; ++f) {
        const std::size_t lo = f * n / folds;
        const std::size_t hi = (f + 1) * n / folds;
        std::vector<std::size_t> train_rows;
        std::vector<std::size_t> test_rows;
        for (std::size_t r = 0; r < n; ++r) {
            (r >= lo && r < hi ? test_rows : train_rows).push_back(r);
        }
        const RegressionData raw_train = data.subset(train_rows);
        const RegressionData train = center(raw_train);
        const RegressionData test = data.subset(test_rows);
        const Eigen::RowVectorXd offsets = raw_train.z.colwise().mean();
        const double y_offset = raw_train.y.mean();
        const auto fits = fit_path(train, path, options);
        for (std::size_t i = 0; i < fits.size(); ++i) {
            if (!fits[i].converged) {
                throw NumericalError("cross_validate: lasso did not converge at lambda = " +
                                     std::to_string(path.values[i]));
            }
            const Eigen::VectorXd pred =
                ((test.z.rowwise() - offsets) * fits[i].beta).array() + y_offset;
            out.mean_error[i] += (test.y - pred).squaredNorm() / static_cast<double>(test_rows.size());
        }
    }
    for (auto& e : out.mean_error) {
        e /= static_cast<double>(folds);
    }
    out.best_index = static_cast<std::size_t>(
        std::min_element(out.mean_error.begin(), out.mean_error.end()) - out.mean_error.begin());
    out.lambda = path.values[out.best_index];
    return out;
}

}  // namespace stabsel::lasso
