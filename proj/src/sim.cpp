#include "stabsel/sim.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "stabsel/parallel.hpp"

namespace stabsel::sim {

namespace {

constexpr double kDecoyRadius = 0.9;

std::vector<double> random_stationary_ar3(Rng& rng)
{
    std::vector<double> a(3);
    for (auto& v : a) {
        v = 2.0 * rng.uniform() - 1.0;
    }
    const double radius = spectral_radius(a);
    if (radius > kDecoyRadius) {
        // Scaling a_i by c^i scales every characteristic root by c.
        const double c = kDecoyRadius / radius;
        double power = c;
        for (auto& v : a) {
            v *= power;
            power *= c;
        }
    }
    return a;
}

Eigen::VectorXd to_vector(const std::vector<double>& v)
{
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

double spectral_radius(const std::vector<double>& coeffs)
{
    const auto order = static_cast<Eigen::Index>(coeffs.size());
    if (order == 0) {
        return 0.0;
    }
    for (const double c : coeffs) {
        if (!std::isfinite(c)) {
            return std::numeric_limits<double>::infinity();
        }
    }
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(order, order);
    companion.row(0) = to_vector(coeffs).transpose();
    if (order > 1) {
        companion.bottomLeftCorner(order - 1, order - 1).setIdentity();
    }
    const Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

bool is_stationary(const std::vector<double>& coeffs) { return spectral_radius(coeffs) < 1.0; }

std::vector<double> simulate_ar(const std::vector<double>& coeffs, std::size_t length, double sigma, Rng& rng,
                                std::size_t burn_in)
{
    if (length < 1) {
        throw std::invalid_argument("simulate_ar: length must be at least 1");
    }
    if (!(sigma >= 0.0)) {
        throw std::invalid_argument("simulate_ar: sigma must be non-negative");
    }
    if (!is_stationary(coeffs)) {
        throw std::invalid_argument("simulate_ar: coefficients are not stationary (companion spectral radius " +
                                    std::to_string(spectral_radius(coeffs)) + " >= 1)");
    }
    const std::size_t total = length + burn_in;
    std::vector<double> x(total, 0.0);
    for (std::size_t t = 0; t < total; ++t) {
        double value = sigma * rng.normal();
        for (std::size_t i = 0; i < coeffs.size() && i < t; ++i) {
            value += coeffs[i] * x[t - 1 - i];
        }
        x[t] = value;
    }
    return {x.begin() + static_cast<std::ptrdiff_t>(burn_in), x.end()};
}

ArxConfig ArxConfig::full_profile()
{
    ArxConfig c;
    c.length = 10000;
    c.n_true = 50;
    c.n_decoy_ar = 52;
    c.n_noise = 2;
    c.beta_sd = 0.05;
    return c;
}

void ArxConfig::validate() const
{
    std::vector<std::string> problems;
    if (length < 2) {
        problems.emplace_back("length must be at least 2");
    }
    if (!is_stationary(theta)) {
        problems.emplace_back("theta is not stationary");
    }
    if (!is_stationary(exogenous_ar)) {
        problems.emplace_back("exogenous_ar is not stationary");
    }
    if (!(beta_sd >= 0.0)) {
        problems.emplace_back("beta_sd must be non-negative");
    }
    if (!(sigma >= 0.0) || !(exogenous_sd >= 0.0)) {
        problems.emplace_back("standard deviations must be non-negative");
    }
    if (beta && beta->size() != n_true) {
        problems.emplace_back("beta must have n_true entries");
    }
    if (n_true + n_decoy_ar + n_noise == 0 && lags.p_tilde == 0) {
        problems.emplace_back("no candidate predictors");
    }
    if (lags.max_lag() >= length) {
        problems.emplace_back("lags exceed the series length");
    }
    if (!problems.empty()) {
        std::string msg = "invalid ArxConfig:";
        for (const auto& p : problems) {
            msg += " " + p + ";";
        }
        throw std::invalid_argument(msg);
    }
}

ArxSample simulate_arx(const ArxConfig& config, Rng& rng)
{
    config.validate();
    const std::size_t T = config.length;
    const std::size_t total = T + config.burn_in;
    const std::size_t m = config.n_true + config.n_decoy_ar + config.n_noise;

    std::vector<double> beta(config.n_true);
    if (config.beta) {
        beta = *config.beta;
    } else {
        for (auto& b : beta) {
            b = config.beta_sd * rng.normal();
        }
    }

    // Exogenous paths over the full horizon; the burn-in prefix is dropped below.
    Eigen::MatrixXd exo(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(m));
    std::size_t col = 0;
    for (std::size_t j = 0; j < config.n_true; ++j, ++col) {
        exo.col(static_cast<Eigen::Index>(col)) =
            to_vector(simulate_ar(config.exogenous_ar, total, config.exogenous_sd, rng, config.burn_in));
    }
    for (std::size_t j = 0; j < config.n_decoy_ar; ++j, ++col) {
        const auto coeffs = random_stationary_ar3(rng);
        exo.col(static_cast<Eigen::Index>(col)) = to_vector(simulate_ar(coeffs, total, 1.0, rng, config.burn_in));
    }
    for (std::size_t j = 0; j < config.n_noise; ++j, ++col) {
        exo.col(static_cast<Eigen::Index>(col)) = to_vector(simulate_ar({}, total, 1.0, rng, 0));
    }

    Eigen::VectorXd y = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(total));
    for (std::size_t t = 0; t < total; ++t) {
        const auto tt = static_cast<Eigen::Index>(t);
        double value = config.sigma * rng.normal();
        for (std::size_t i = 0; i < config.theta.size() && i < t; ++i) {
            value += config.theta[i] * y(tt - 1 - static_cast<Eigen::Index>(i));
        }
        for (std::size_t j = 0; j < config.n_true; ++j) {
            value += beta[j] * exo(tt, static_cast<Eigen::Index>(j));
        }
        y(tt) = value;
    }

    const auto burn = static_cast<Eigen::Index>(config.burn_in);
    const auto len = static_cast<Eigen::Index>(T);
    std::vector<std::string> names{"y"};
    for (std::size_t j = 1; j <= config.n_true; ++j) {
        names.push_back("x" + std::to_string(j));
    }
    for (std::size_t j = 1; j <= config.n_decoy_ar; ++j) {
        names.push_back("decoy" + std::to_string(j));
    }
    for (std::size_t j = 1; j <= config.n_noise; ++j) {
        names.push_back("noise" + std::to_string(j));
    }

    SelectionTruth truth;
    truth.candidate_count = config.lags.p_tilde + m * config.lags.s;
    for (std::size_t lag = 1; lag <= config.lags.p_tilde; ++lag) {
        if (lag <= config.theta.size() && config.theta[lag - 1] != 0.0) {
            truth.true_set.push_back(lag - 1);
        }
    }
    if (config.lags.s > 0) {
        for (std::size_t j = 0; j < config.n_true; ++j) {
            if (beta[j] != 0.0) {
                truth.true_set.push_back(config.lags.p_tilde + j);  // exogenous lag 0 block
            }
        }
    }

    MultiSeries series(Eigen::MatrixXd(y.segment(burn, len)), exo.middleRows(burn, len), std::move(names));
    return {std::move(series), std::move(truth), std::move(beta)};
}

MultiSeries add_noise(const MultiSeries& series, double sigma, Rng& rng)
{
    if (!(sigma >= 0.0)) {
        throw std::invalid_argument("add_noise: sigma must be non-negative");
    }
    if (sigma == 0.0) {
        return series;
    }
    Eigen::MatrixXd endo = series.endogenous();
    Eigen::MatrixXd exo = series.exogenous();
    for (Eigen::Index c = 0; c < endo.cols(); ++c) {
        for (Eigen::Index r = 0; r < endo.rows(); ++r) {
            endo(r, c) += sigma * rng.normal();
        }
    }
    for (Eigen::Index c = 0; c < exo.cols(); ++c) {
        for (Eigen::Index r = 0; r < exo.rows(); ++r) {
            exo(r, c) += sigma * rng.normal();
        }
    }
    return MultiSeries(std::move(endo), std::move(exo), series.names(), series.timestamps());
}

Rates tpr_fpr(const std::vector<std::size_t>& selected, const SelectionTruth& truth)
{
    std::vector<bool> is_true(truth.candidate_count, false);
    for (const auto k : truth.true_set) {
        if (k >= truth.candidate_count) {
            throw std::invalid_argument("tpr_fpr: truth index out of range");
        }
        is_true[k] = true;
    }
    std::vector<bool> seen(truth.candidate_count, false);
    std::size_t hits = 0;
    std::size_t false_hits = 0;
    for (const auto k : selected) {
        if (k >= truth.candidate_count) {
            throw std::invalid_argument("tpr_fpr: selected index out of range");
        }
        if (seen[k]) {
            continue;
        }
        seen[k] = true;
        (is_true[k] ? hits : false_hits) += 1;
    }
    const std::size_t positives = truth.true_set.size();
    const std::size_t negatives = truth.candidate_count - positives;
    Rates out;
    if (positives == 0) {
        out.tpr = 1.0;
        out.tpr_by_convention = true;
    } else {
        out.tpr = static_cast<double>(hits) / static_cast<double>(positives);
    }
    out.fpr = negatives == 0 ? 0.0 : static_cast<double>(false_hits) / static_cast<double>(negatives);
    return out;
}

std::vector<SweepRow> run_sweep(const SweepConfig& config)
{
    config.arx.validate();
    if (config.methods.empty()) {
        throw std::invalid_argument("run_sweep: no methods given");
    }
    const std::size_t points = config.seeds * config.sigmas.size();
    std::vector<std::vector<SweepRow>> results(points);

    parallel_for(points, config.workers, [&](std::size_t idx) {
        const std::size_t seed_index = idx / config.sigmas.size();
        const std::size_t sigma_index = idx % config.sigmas.size();
        const double sigma = config.sigmas[sigma_index];
        // Same base draw for every sigma of a seed; noise comes from its own stream.
        Rng data_rng = Rng::stream(config.seed, 2 * seed_index);
        const ArxSample sample = simulate_arx(config.arx, data_rng);
        Rng noise_rng = Rng::stream(Rng::stream(config.seed, 2 * seed_index + 1).next_u64(), sigma_index);
        const MultiSeries noisy = add_noise(sample.series, sigma, noise_rng);
        const RegressionData design = build_design(noisy, 0, config.arx.lags);
        for (const auto& method : config.methods) {
            const auto selected = method.select(design);
            const Rates r = tpr_fpr(selected, sample.truth);
            results[idx].push_back({sigma, seed_index, method.name, r.tpr, r.fpr, selected.size()});
        }
    });

    std::vector<SweepRow> rows;
    for (auto& block : results) {
        rows.insert(rows.end(), block.begin(), block.end());
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows)
{
    const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
    out << "sigma,seed,method,tpr,fpr\n";
    for (const auto& r : rows) {
        out << r.sigma << ',' << r.seed_index << ',' << r.method << ',' << r.tpr << ',' << r.fpr << '\n';
    }
    out.precision(old_precision);
}

}  // namespace stabsel::sim
