#include "stabsel/selection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stabsel/blocks.hpp"
#include "stabsel/stability.hpp"

namespace stabsel::selection {

std::size_t QSpec::resolve(std::size_t p) const
{
    if (!(value >= 0.0)) {
        throw std::invalid_argument("q must be non-negative");
    }
    if (fraction) {
        if (value > 1.0) {
            throw std::invalid_argument("q fraction must lie in [0, 1]");
        }
        return static_cast<std::size_t>(std::floor(value * static_cast<double>(p)));
    }
    return static_cast<std::size_t>(value);
}

std::size_t design_length(const RegressionData& data)
{
    if (data.response_time.empty()) {
        throw std::invalid_argument("design has no rows");
    }
    return *std::max_element(data.response_time.begin(), data.response_time.end());
}

Strategy q_bpa(const BpaParams& params, std::string name)
{
    return {std::move(name), [params](const RegressionData& raw) {
                const RegressionData data = standardize(raw);
                const std::size_t q = params.q.resolve(data.predictors());
                const auto path = lasso::lambda_path(data, params.path.count, params.path.ratio);
                const auto estimate = lasso::q_estimate(data, path, q, params.path.fit);
                const std::size_t T = design_length(data);
                const std::size_t a =
                    params.block_length > 0 ? params.block_length : blocks::default_block_length(T);
                const auto part = blocks::partition(T, a);
                const auto scores = stability::bpa_scores(data, part, params.B, estimate.lambda, params.seed,
                                                          params.workers, params.path.fit);
                return stability::threshold(scores, params.phi);
            }};
}

Strategy q_lasso(QSpec q, PathOptions path, std::string name)
{
    return {std::move(name), [q, path](const RegressionData& raw) {
                const RegressionData data = standardize(raw);
                const auto grid = lasso::lambda_path(data, path.count, path.ratio);
                return lasso::q_estimate(data, grid, q.resolve(data.predictors()), path.fit).fit.active_set;
            }};
}

Strategy cv_lasso(std::size_t folds, PathOptions path, std::string name)
{
    return {std::move(name), [folds, path](const RegressionData& raw) {
                const RegressionData data = standardize(raw);
                const auto grid = lasso::lambda_path(data, path.count, path.ratio);
                const auto cv = lasso::cross_validate(data, grid, folds, path.fit);
                return lasso::select(data, cv.lambda, path.fit);
            }};
}

}  // namespace stabsel::selection
