#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "stabsel/core.hpp"
#include "stabsel/lasso.hpp"

namespace stabsel::selection {

/// Sparsity target: an absolute count, or a fraction of p floored to a count.
struct QSpec {
    double value = 0.2;
    bool fraction = true;

    std::size_t resolve(std::size_t p) const;
    static QSpec count(std::size_t q) { return {static_cast<double>(q), false}; }
    static QSpec of_p(double f) { return {f, true}; }
};

struct PathOptions {
    std::size_t count = 100;
    double ratio = 1e-3;
    lasso::FitOptions fit;
};

/// A named predictor-selection method applied to an unstandardized design.
struct Strategy {
    std::string name;
    std::function<std::vector<std::size_t>(const RegressionData&)> select;
};

struct BpaParams {
    QSpec q;
    double phi = 0.8;
    std::size_t B = 50;
    std::size_t block_length = 0;  // 0: ceil(sqrt(T))
    std::uint64_t seed = 0;
    std::size_t workers = 1;
    PathOptions path;
};

/// Stable set {k : pi_av(k) >= phi} of the block-pair procedure over the lasso at lambda_q.
Strategy q_bpa(const BpaParams& params, std::string name = "q-BPA");

/// Active set of the full-data lasso at lambda_q.
Strategy q_lasso(QSpec q, PathOptions path = {}, std::string name = "q-Lasso");

/// Active set of the lasso at the cross-validated lambda.
Strategy cv_lasso(std::size_t folds = 10, PathOptions path = {}, std::string name = "Lasso");

/// Time span covered by a design: the largest response time index.
std::size_t design_length(const RegressionData& data);

}  // namespace stabsel::selection
