#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <vector>

#include "stabsel/core.hpp"
#include "stabsel/random.hpp"

namespace testing {

inline stabsel::RegressionData make_data(const Eigen::MatrixXd& z, const Eigen::VectorXd& y)
{
    stabsel::RegressionData d;
    d.z = z;
    d.y = y;
    const auto p = static_cast<std::size_t>(z.cols());
    for (std::size_t k = 0; k < p; ++k) {
        d.descriptors.push_back({stabsel::PredictorKind::exogenous, k, 0});
    }
    for (Eigen::Index i = 0; i < z.rows(); ++i) {
        d.response_time.push_back(static_cast<std::size_t>(i) + 2);
    }
    d.column_means = Eigen::VectorXd::Zero(z.cols());
    d.column_scales = Eigen::VectorXd::Ones(z.cols());
    d.constant_columns.assign(p, false);
    return d;
}

inline Eigen::MatrixXd gaussian_matrix(Eigen::Index rows, Eigen::Index cols, stabsel::Rng& rng)
{
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            m(i, j) = rng.normal();
        }
    }
    return m;
}

// Centered columns with Z'Z/n = I.
inline Eigen::MatrixXd orthonormal_design(Eigen::Index n, Eigen::Index p, stabsel::Rng& rng)
{
    Eigen::MatrixXd g = gaussian_matrix(n, p, rng);
    g.rowwise() -= g.colwise().mean();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, p);
    return q * std::sqrt(static_cast<double>(n));
}

inline double soft_threshold(double rho, double lambda)
{
    const double m = std::abs(rho) - lambda;
    return m > 0.0 ? std::copysign(m, rho) : 0.0;
}

// Least squares through the normal equations.
inline Eigen::VectorXd ols_normal_equations(const Eigen::MatrixXd& x, const Eigen::VectorXd& y)
{
    return (x.transpose() * x).ldlt().solve(x.transpose() * y);
}

inline stabsel::MultiSeries single_series(const std::vector<double>& y, const std::vector<double>& x = {})
{
    const auto T = static_cast<Eigen::Index>(y.size());
    Eigen::MatrixXd endo = Eigen::Map<const Eigen::VectorXd>(y.data(), T);
    Eigen::MatrixXd exo(T, x.empty() ? 0 : 1);
    if (!x.empty()) {
        exo.col(0) = Eigen::Map<const Eigen::VectorXd>(x.data(), T);
    }
    std::vector<std::string> names{"y"};
    if (!x.empty()) names.push_back("x");
    return stabsel::MultiSeries(endo, exo, names);
}

}  // namespace testing
