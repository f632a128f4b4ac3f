#include "stabsel/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "stabsel/blocks.hpp"
#include "stabsel/csv.hpp"
#include "stabsel/error.hpp"
#include "stabsel/eval.hpp"
#include "stabsel/lasso.hpp"
#include "stabsel/parallel.hpp"
#include "stabsel/report.hpp"
#include "stabsel/selection.hpp"
#include "stabsel/sim.hpp"
#include "stabsel/stability.hpp"

namespace stabsel::cli {

namespace {

using nlohmann::json;

/// Validation failures collected before any computation.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(std::vector<std::string> messages)
        : std::invalid_argument(messages.empty() ? "invalid configuration" : messages.front()),
          messages_(std::move(messages))
    {
    }
    const std::vector<std::string>& messages() const { return messages_; }

private:
    std::vector<std::string> messages_;
};

const char* command_name(Command c)
{
    switch (c) {
    case Command::select:
        return "select";
    case Command::simulate:
        return "simulate";
    case Command::forecast:
        return "forecast";
    case Command::bound:
        return "bound";
    }
    return "unknown";
}

std::optional<selection::QSpec> parse_q(const std::string& text)
{
    try {
        std::size_t used = 0;
        if (text.find_first_of(".eE") != std::string::npos) {
            const double f = std::stod(text, &used);
            if (used != text.size() || !(f >= 0.0 && f <= 1.0)) {
                return std::nullopt;
            }
            return selection::QSpec::of_p(f);
        }
        const long long v = std::stoll(text, &used);
        if (used != text.size() || v < 0) {
            return std::nullopt;
        }
        return selection::QSpec::count(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

struct BlockSpec {
    enum class Kind { sqrt_length, seasonal, fixed } kind = Kind::sqrt_length;
    std::size_t value = 0;
};

std::optional<BlockSpec> parse_block(const std::string& text)
{
    if (text == "auto") {
        return BlockSpec{};
    }
    try {
        std::size_t used = 0;
        if (text.rfind("auto:", 0) == 0) {
            const std::string rest = text.substr(5);
            const long long k = std::stoll(rest, &used);
            if (used != rest.size() || k < 1) {
                return std::nullopt;
            }
            return BlockSpec{BlockSpec::Kind::seasonal, static_cast<std::size_t>(k)};
        }
        const long long v = std::stoll(text, &used);
        if (used != text.size() || v < 1) {
            return std::nullopt;
        }
        return BlockSpec{BlockSpec::Kind::fixed, static_cast<std::size_t>(v)};
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

/// 0 means "ceil(sqrt(T)) of whatever series the procedure runs on".
std::size_t block_length_setting(const RunConfig& c)
{
    const BlockSpec spec = *parse_block(c.block_length);
    switch (spec.kind) {
    case BlockSpec::Kind::fixed:
        return spec.value;
    case BlockSpec::Kind::seasonal:
        return spec.value * c.seasonality;
    case BlockSpec::Kind::sqrt_length:
        return c.seasonality > 0 ? c.seasonality : 0;
    }
    return 0;
}

std::optional<double> parse_phi(const std::string& text)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size() || !(v > 0.0 && v <= 1.0)) {
            return std::nullopt;
        }
        return v;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

bool wants_solve(const RunConfig& c) { return (c.phi && *c.phi == "solve") || (!c.phi && c.l); }

double fixed_phi(const RunConfig& c) { return c.phi ? *parse_phi(*c.phi) : 0.8; }

const std::set<std::string>& known_methods()
{
    static const std::set<std::string> names{"q-BPA", "BPA", "q-Lasso", "Lasso"};
    return names;
}

std::size_t workers_of(const RunConfig& c) { return c.workers > 0 ? c.workers : default_workers(); }

selection::PathOptions path_options(const RunConfig& c)
{
    selection::PathOptions path;
    path.count = c.path_count;
    path.ratio = c.path_ratio;
    return path;
}

selection::Strategy make_strategy(const std::string& name, const RunConfig& c, double phi, std::size_t workers)
{
    const auto q = *parse_q(c.q);
    if (name == "q-BPA" || name == "BPA") {
        selection::BpaParams params;
        params.q = q;
        params.phi = phi;
        params.B = c.B;
        params.block_length = block_length_setting(c);
        params.seed = c.seed;
        params.workers = workers;
        params.path = path_options(c);
        return selection::q_bpa(params, name);
    }
    if (name == "q-Lasso") {
        return selection::q_lasso(q, path_options(c), name);
    }
    return selection::cv_lasso(c.cv_folds, path_options(c), name);
}

void write_output(const RunConfig& c, const std::string& text, std::ostream& out)
{
    if (c.output.empty() || c.output == "-") {
        out << text;
        return;
    }
    std::ofstream file(c.output, std::ios::binary);
    if (!file) {
        throw DataError("cannot write '" + c.output + "'");
    }
    file << text;
}

json base_config_json(const RunConfig& c)
{
    json j;
    j["command"] = command_name(c.command);
    j["seed"] = c.seed;
    return j;
}

json data_config_json(const RunConfig& c, const std::vector<std::string>& exogenous)
{
    json j = base_config_json(c);
    j["input_csv"] = c.input_csv;
    j["target"] = c.target;
    j["endogenous"] = c.endogenous;
    j["exogenous"] = exogenous;
    j["p_tilde"] = c.p_tilde;
    j["s"] = c.s;
    j["detrend"] = c.detrend;
    j["block_length"] = c.block_length;
    j["seasonality"] = c.seasonality;
    j["B"] = c.B;
    j["q"] = c.q;
    j["phi"] = c.phi ? json(*c.phi) : json(nullptr);
    j["l"] = c.l ? json(*c.l) : json(nullptr);
    j["path_count"] = c.path_count;
    j["path_ratio"] = c.path_ratio;
    return j;
}

struct LoadedData {
    MultiSeries series;
    std::vector<std::string> exogenous;
};

LoadedData load_series(const RunConfig& c)
{
    const CsvTable table = read_csv_file(c.input_csv);
    std::vector<std::string> endogenous{c.target};
    endogenous.insert(endogenous.end(), c.endogenous.begin(), c.endogenous.end());

    std::vector<std::string> exogenous;
    if (c.exogenous.size() == 1 && c.exogenous.front() == "all") {
        const std::set<std::string> endo_set(endogenous.begin(), endogenous.end());
        for (const auto& name : table.names) {
            if (!endo_set.count(name)) {
                exogenous.push_back(name);
            }
        }
    } else {
        exogenous = c.exogenous;
    }
    MultiSeries series = to_multiseries(table, endogenous, exogenous);
    if (c.detrend) {
        series = detrend(series);
    }
    return {std::move(series), std::move(exogenous)};
}

std::vector<std::string> design_names(const MultiSeries& series, const RegressionData& data)
{
    std::vector<std::string> names;
    names.reserve(data.descriptors.size());
    for (const auto& d : data.descriptors) {
        names.push_back(predictor_name(series, d));
    }
    return names;
}

int run_select(const RunConfig& c, std::ostream& out)
{
    const auto loaded = load_series(c);
    const RegressionData data = standardize(build_design(loaded.series, 0, {c.p_tilde, c.s}));
    const std::size_t p = data.predictors();
    const std::size_t q = parse_q(c.q)->resolve(p);
    const std::size_t T = selection::design_length(data);
    std::size_t a = block_length_setting(c);
    if (a == 0) {
        a = blocks::default_block_length(T);
    }

    SelectionReport report;
    const auto path = lasso::lambda_path(data, c.path_count, c.path_ratio);
    const auto estimate = lasso::q_estimate(data, path, q);
    if (!estimate.exact) {
        report.warnings.push_back("no lambda on the path selects exactly q predictors; first crossing used");
    }
    const auto partition = blocks::partition(T, a);
    report.scores = stability::bpa_scores(data, partition, c.B, estimate.lambda, c.seed, workers_of(c));
    report.scores.q = q;
    report.lambda_q_exact = estimate.exact;

    double phi = 0.0;
    if (wants_solve(c)) {
        phi = stability::solve_phi(q, p, c.B, *c.l);
    } else {
        phi = fixed_phi(c);
    }
    report.phi = phi;
    const double theta = static_cast<double>(q) / static_cast<double>(p);
    report.theta = theta;
    try {
        report.bound = stability::selection_bound(q, p, phi, c.B);
        if (q > 0) {
            report.error_constant = stability::error_constant(phi, c.B, theta);
        }
    } catch (const std::invalid_argument& e) {
        report.warnings.push_back(std::string("error bound unavailable: ") + e.what());
    }
    report.stable_set = stability::threshold(report.scores, phi);
    report.stable_set_sbs = stability::threshold(report.scores, phi, stability::Measure::simultaneous);
    report.predictor_names = design_names(loaded.series, data);
    report.include_runs = c.audit;
    if (report.stable_set.size() > q) {
        report.warnings.push_back("stable set is larger than q");
    }

    json params = data_config_json(c, loaded.exogenous);
    params["resolved"] = {{"T", T},
                          {"n", data.rows()},
                          {"p", p},
                          {"q", q},
                          {"block_length", a},
                          {"mu", partition.odd_count},
                          {"phi", phi}};
    report.params = std::move(params);
    write_output(c, to_json(report).dump(2) + "\n", out);
    return ok;
}

int run_forecast(const RunConfig& c, std::ostream& out)
{
    const auto loaded = load_series(c);
    const RegressionData data = build_design(loaded.series, 0, {c.p_tilde, c.s});
    const double phi = wants_solve(c)
                           ? stability::solve_phi(parse_q(c.q)->resolve(data.predictors()), data.predictors(), c.B,
                                                  *c.l)
                           : fixed_phi(c);
    std::vector<selection::Strategy> strategies;
    for (const auto& name : c.methods) {
        strategies.push_back(make_strategy(name, c, phi, workers_of(c)));
    }
    const auto results = eval::compare_methods(data, strategies, c.train_fraction, 1);
    const auto names = design_names(loaded.series, data);

    json j;
    json params = data_config_json(c, loaded.exogenous);
    params["train_fraction"] = c.train_fraction;
    params["methods"] = c.methods;
    params["cv_folds"] = c.cv_folds;
    params["dataset"] = c.dataset;
    params["resolved"] = {{"n", data.rows()}, {"p", data.predictors()}, {"phi", phi}};
    j["params"] = std::move(params);
    j["results"] = json::array();
    for (const auto& r : results) {
        j["results"].push_back(to_json(r, names));
    }
    if (!c.table_csv.empty()) {
        std::ofstream table(c.table_csv, std::ios::binary);
        if (!table) {
            throw DataError("cannot write '" + c.table_csv + "'");
        }
        eval::write_table_csv(table, results, c.dataset);
    }
    write_output(c, j.dump(2) + "\n", out);
    return ok;
}

int run_simulate(const RunConfig& c, std::ostream& out)
{
    sim::SweepConfig sweep;
    if (c.profile == "full") {
        sweep.arx = sim::ArxConfig::full_profile();
    } else {
        sweep.arx.length = 2000;
        sweep.arx.n_true = 10;
        sweep.arx.n_decoy_ar = 20;
        sweep.arx.n_noise = 2;
    }
    if (c.length) sweep.arx.length = *c.length;
    if (c.n_true) sweep.arx.n_true = *c.n_true;
    if (c.n_decoy) sweep.arx.n_decoy_ar = *c.n_decoy;
    if (c.n_noise) sweep.arx.n_noise = *c.n_noise;
    sweep.arx.lags = {c.p_tilde, c.s};
    sweep.sigmas = c.sigmas;
    sweep.seeds = c.seeds;
    sweep.seed = c.seed;
    sweep.workers = workers_of(c);

    const std::size_t p = sweep.arx.lags.p_tilde +
                          (sweep.arx.n_true + sweep.arx.n_decoy_ar + sweep.arx.n_noise) * sweep.arx.lags.s;
    const double phi = wants_solve(c) ? stability::solve_phi(parse_q(c.q)->resolve(p), p, c.B, *c.l) : fixed_phi(c);
    std::vector<std::string> methods = c.methods;
    for (auto& m : methods) {
        if (m == "q-BPA") {
            m = "BPA";
        }
    }
    for (const auto& name : methods) {
        sweep.methods.push_back(make_strategy(name, c, phi, 1));
    }

    if (!c.series_csv.empty()) {
        Rng rng = Rng::stream(c.seed, 0);
        const auto sample = sim::simulate_arx(sweep.arx, rng);
        std::ofstream file(c.series_csv, std::ios::binary);
        if (!file) {
            throw DataError("cannot write '" + c.series_csv + "'");
        }
        write_csv(file, sample.series);
    }

    const auto rows = sim::run_sweep(sweep);
    std::ostringstream csv;
    sim::write_sweep_csv(csv, rows);
    write_output(c, csv.str(), out);
    return ok;
}

int run_bound(const RunConfig& c, std::ostream& out)
{
    const std::size_t p = *c.p;
    const std::size_t q = parse_q(c.q)->resolve(p);
    const double phi = wants_solve(c) ? stability::solve_phi(q, p, c.B, *c.l) : fixed_phi(c);
    const double theta = static_cast<double>(q) / static_cast<double>(p);
    const double bound = stability::selection_bound(q, p, phi, c.B);
    const std::optional<double> constant =
        q > 0 ? std::optional<double>(stability::error_constant(phi, c.B, theta)) : std::nullopt;

    char line[256];
    std::string text;
    if (wants_solve(c)) {
        std::snprintf(line, sizeof line, "phi=%.6g\n", phi);
        text += line;
    }
    if (constant) {
        std::snprintf(line, sizeof line, "C=%.6f\n", *constant);
        text += line;
    }
    std::snprintf(line, sizeof line, "bound=%.2f\ntheta=%.6f\n", bound, theta);
    text += line;

    if (c.output.empty() || c.output == "-") {
        out << text;
    } else {
        json j = base_config_json(c);
        j["q"] = q;
        j["p"] = p;
        j["B"] = c.B;
        j["l"] = c.l ? json(*c.l) : json(nullptr);
        json report{{"params", j},
                    {"phi", phi},
                    {"theta", theta},
                    {"error_constant", constant ? json(*constant) : json(nullptr)},
                    {"bound", bound}};
        out << text;
        write_output(c, report.dump(2) + "\n", out);
    }
    return ok;
}

void print_error(std::ostream& err, const char* kind, int code, const std::vector<std::string>& messages)
{
    json j{{"error", {{"kind", kind}, {"exit_code", code}, {"messages", messages}}}};
    err << j.dump() << '\n';
}

}  // namespace

std::vector<std::string> validate(const RunConfig& c)
{
    std::vector<std::string> errors;
    const bool data_command = c.command == Command::select || c.command == Command::forecast;

    if (data_command) {
        if (c.input_csv.empty()) {
            errors.emplace_back("input_csv: an input CSV path is required");
        }
        if (c.target.empty()) {
            errors.emplace_back("target: a target column is required");
        }
        if (c.exogenous.empty()) {
            errors.emplace_back("exogenous: give column names or \"all\"");
        }
    }
    if (c.command != Command::bound && c.p_tilde + c.s < 1) {
        errors.emplace_back("p_tilde, s: at least one of the lag orders must be positive");
    }
    if (c.command != Command::bound) {
        const auto block = parse_block(c.block_length);
        if (!block) {
            errors.emplace_back("block_length: expected \"auto\", \"auto:<k>\" or a positive integer, got \"" +
                                c.block_length + "\"");
        } else if (block->kind == BlockSpec::Kind::seasonal && c.seasonality == 0) {
            errors.emplace_back("seasonality: \"auto:<k>\" block length needs a seasonality period");
        }
        if (c.path_count < 2) {
            errors.emplace_back("path_count: must be at least 2");
        }
        if (!(c.path_ratio > 0.0 && c.path_ratio < 1.0)) {
            errors.emplace_back("path_ratio: must lie in (0, 1)");
        }
    }
    if (c.B < 1 || (c.command == Command::bound && c.B < 2)) {
        errors.emplace_back("B: must be at least " + std::string(c.command == Command::bound ? "2" : "1"));
    }
    if (!parse_q(c.q)) {
        errors.emplace_back("q: expected a non-negative integer or a fraction in [0, 1], got \"" + c.q + "\"");
    }
    if (c.phi && *c.phi != "solve" && !parse_phi(*c.phi)) {
        errors.emplace_back("phi: expected a value in (0, 1] or \"solve\", got \"" + *c.phi + "\"");
    }
    if (c.phi && *c.phi != "solve" && c.l) {
        errors.emplace_back("phi, l: give exactly one of phi and l (q plus one of them determines the other)");
    }
    if (c.phi && *c.phi == "solve" && !c.l) {
        errors.emplace_back("l: phi = \"solve\" requires a target l");
    }
    if (c.l && !(*c.l > 0.0 && *c.l <= 1.0)) {
        errors.emplace_back("l: must lie in (0, 1]");
    }
    if (c.command == Command::forecast || c.command == Command::simulate) {
        if (c.methods.empty()) {
            errors.emplace_back("methods: at least one method is required");
        }
        for (const auto& m : c.methods) {
            if (!known_methods().count(m)) {
                errors.emplace_back("methods: unknown method \"" + m + "\" (known: q-BPA, q-Lasso, Lasso)");
            }
        }
        if (c.cv_folds < 2) {
            errors.emplace_back("cv_folds: must be at least 2");
        }
    }
    if (c.command == Command::forecast && !(c.train_fraction > 0.0 && c.train_fraction < 1.0)) {
        errors.emplace_back("train_fraction: must lie in (0, 1)");
    }
    if (c.command == Command::simulate) {
        if (c.profile != "desk" && c.profile != "full") {
            errors.emplace_back("profile: expected \"desk\" or \"full\"");
        }
        if (c.sigmas.empty()) {
            errors.emplace_back("sigmas: at least one noise level is required");
        }
        for (const double s : c.sigmas) {
            if (!(s >= 0.0) || !std::isfinite(s)) {
                errors.emplace_back("sigmas: noise levels must be finite and non-negative");
                break;
            }
        }
        if (c.seeds < 1) {
            errors.emplace_back("seeds: must be at least 1");
        }
    }
    if (c.command == Command::bound) {
        if (!c.p || *c.p == 0) {
            errors.emplace_back("p: a positive predictor count is required");
        }
    }
    return errors;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    try {
        const auto errors = validate(config);
        if (!errors.empty()) {
            throw ConfigError(errors);
        }
        switch (config.command) {
        case Command::select:
            return run_select(config, out);
        case Command::forecast:
            return run_forecast(config, out);
        case Command::simulate:
            return run_simulate(config, out);
        case Command::bound:
            return run_bound(config, out);
        }
        return ok;
    } catch (const ConfigError& e) {
        print_error(err, "config", config_error, e.messages());
        return config_error;
    } catch (const DataError& e) {
        print_error(err, "data", data_error, {e.what()});
        return data_error;
    } catch (const NumericalError& e) {
        print_error(err, "numerical", numerical_failure, {e.what()});
        return numerical_failure;
    } catch (const std::invalid_argument& e) {
        print_error(err, "config", config_error, {e.what()});
        return config_error;
    } catch (const std::exception& e) {
        print_error(err, "numerical", numerical_failure, {e.what()});
        return numerical_failure;
    }
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Stable predictor selection for time series via complementary block pairs"};
    app.require_subcommand(1);
    RunConfig c;
    std::string phi_text;
    double l_value = 0.0;
    std::size_t p_value = 0;
    std::size_t length = 0;
    std::size_t n_true = 0;
    std::size_t n_decoy = 0;
    std::size_t n_noise = 0;

    auto add_selection_options = [&](CLI::App* sub) {
        sub->add_option("--block-length,-a", c.block_length, "a_T: integer, \"auto\" or \"auto:<k>\"")
            ->capture_default_str();
        sub->add_option("--seasonality", c.seasonality, "seasonal period for auto block lengths");
        sub->add_option("--B,-B", c.B, "number of complementary block pairs")->capture_default_str();
        sub->add_option("--q,-q", c.q, "base selection size: integer or fraction of p")->capture_default_str();
        sub->add_option("--phi", phi_text, "threshold in (0, 1], or \"solve\" with --l (default 0.8)");
        sub->add_option("--l", l_value, "target bound as a fraction of p");
        sub->add_option("--seed", c.seed, "master seed")->capture_default_str();
        sub->add_option("--path-count", c.path_count, "lambda path length")->capture_default_str();
        sub->add_option("--path-ratio", c.path_ratio, "smallest/largest lambda")->capture_default_str();
        sub->add_option("--workers", c.workers, "worker threads (default: STABSEL_WORKERS or all cores)");
        sub->add_option("--output,-o", c.output, "report path (default: stdout)");
    };
    auto add_data_options = [&](CLI::App* sub) {
        sub->add_option("--input,-i", c.input_csv, "input CSV")->required();
        sub->add_option("--target,-t", c.target, "target column")->required();
        sub->add_option("--endogenous", c.endogenous, "additional endogenous columns");
        sub->add_option("--exogenous,-x", c.exogenous, "exogenous columns or \"all\"")->capture_default_str();
        sub->add_option("--p-tilde", c.p_tilde, "max endogenous lag")->capture_default_str();
        sub->add_option("--s", c.s, "exogenous lag window")->capture_default_str();
        sub->add_flag("--detrend", c.detrend, "remove a linear trend from every column");
    };

    auto* select = app.add_subcommand("select", "stable predictor selection report (JSON)");
    add_data_options(select);
    add_selection_options(select);
    select->add_flag("--audit", c.audit, "include sampled pairs and per-run selections");

    auto* forecast = app.add_subcommand("forecast", "rolling one-step forecast comparison");
    add_data_options(forecast);
    add_selection_options(forecast);
    forecast->add_option("--train-fraction", c.train_fraction)->capture_default_str();
    forecast->add_option("--methods", c.methods, "q-BPA, q-Lasso, Lasso")->capture_default_str();
    forecast->add_option("--dataset", c.dataset, "dataset label for the table")->capture_default_str();
    forecast->add_option("--table-csv", c.table_csv, "write a method x dataset rmse/mape table");
    forecast->add_option("--cv-folds", c.cv_folds)->capture_default_str();

    auto* simulate = app.add_subcommand("simulate", "AR(3)-X noise sweep with TPR/FPR per method (CSV)");
    add_selection_options(simulate);
    simulate->add_option("--profile", c.profile, "desk or full")->capture_default_str();
    simulate->add_option("--length", length, "series length T");
    simulate->add_option("--n-true", n_true);
    simulate->add_option("--n-decoy", n_decoy);
    simulate->add_option("--n-noise", n_noise);
    simulate->add_option("--sigmas", c.sigmas, "added noise levels")->capture_default_str();
    simulate->add_option("--seeds", c.seeds, "replications per noise level")->capture_default_str();
    simulate->add_option("--methods", c.methods)->capture_default_str();
    simulate->add_option("--cv-folds", c.cv_folds)->capture_default_str();
    simulate->add_option("--p-tilde", c.p_tilde)->capture_default_str();
    simulate->add_option("--s", c.s)->capture_default_str();
    simulate->add_option("--series-csv", c.series_csv, "also write the first simulated series");

    auto* bound = app.add_subcommand("bound", "error-control constant, bound, or solved threshold");
    bound->add_option("--q,-q", c.q)->required();
    bound->add_option("--p,-p", p_value)->required();
    bound->add_option("--phi", phi_text);
    bound->add_option("--l", l_value);
    bound->add_option("--B,-B", c.B)->capture_default_str();
    bound->add_option("--output,-o", c.output, "also write a JSON report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return ok;
        }
        print_error(err, "config", config_error, {e.what()});
        return config_error;
    }

    CLI::App* chosen = app.get_subcommands().front();
    auto given = [chosen](const std::string& name) {
        const CLI::Option* opt = chosen->get_option_no_throw(name);
        return opt != nullptr && opt->count() > 0;
    };
    if (chosen == select) {
        c.command = Command::select;
    } else if (chosen == forecast) {
        c.command = Command::forecast;
    } else if (chosen == simulate) {
        c.command = Command::simulate;
        c.p_tilde = given("--p-tilde") ? c.p_tilde : 3;
    } else {
        c.command = Command::bound;
        c.p = p_value;
    }
    if (given("--phi")) c.phi = phi_text;
    if (given("--l")) c.l = l_value;
    if (given("--length")) c.length = length;
    if (given("--n-true")) c.n_true = n_true;
    if (given("--n-decoy")) c.n_decoy = n_decoy;
    if (given("--n-noise")) c.n_noise = n_noise;
    if (chosen == simulate && !given("--methods")) {
        c.methods = {"BPA", "q-Lasso", "Lasso"};
    }
    return run(c, out, err);
}

}  // namespace stabsel::cli
