#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace stabsel::cli {

enum class Command { select, simulate, forecast, bound };

enum ExitCode : int { ok = 0, config_error = 2, data_error = 3, numerical_failure = 4 };

/**
 * Effective configuration of one CLI invocation. String-typed fields keep the
 * user's spelling ("auto:3", "0.2", "solve") so reports can echo them; the
 * resolved values are recorded next to them.
 */
struct RunConfig {
    Command command = Command::select;

    // data
    std::string input_csv;
    std::string target;
    std::vector<std::string> endogenous;           // additional endogenous series
    std::vector<std::string> exogenous = {"all"};  // or explicit names
    std::size_t p_tilde = 1;
    std::size_t s = 1;
    bool detrend = false;

    // selection
    std::string block_length = "auto";  // "auto", "auto:<k>" (k seasonal periods), or an integer
    std::size_t seasonality = 0;
    std::size_t B = 50;
    std::string q = "0.2";  // integer count or fraction of p (floored)
    std::optional<std::string> phi;  // real in (0, 1] or "solve"
    std::optional<double> l;
    std::uint64_t seed = 0;
    std::size_t path_count = 100;
    double path_ratio = 1e-3;
    bool audit = false;  // include per-run selections in the report

    // forecast
    double train_fraction = 0.67;
    std::vector<std::string> methods = {"q-BPA", "q-Lasso", "Lasso"};
    std::string dataset = "data";
    std::string table_csv;
    std::size_t cv_folds = 10;

    // simulate
    std::string profile = "desk";  // "desk" or "full"
    std::optional<std::size_t> length;
    std::optional<std::size_t> n_true;
    std::optional<std::size_t> n_decoy;
    std::optional<std::size_t> n_noise;
    std::vector<double> sigmas = {0.0, 0.25, 0.5, 1.0, 2.0};
    std::size_t seeds = 10;
    std::string series_csv;  // optional: write the first simulated series

    // bound
    std::optional<std::size_t> p;

    std::string output;       // empty or "-": standard output
    std::size_t workers = 0;  // 0: STABSEL_WORKERS or hardware concurrency; never part of a report
};

/// Every violated field, one message each; empty when the config is usable.
std::vector<std::string> validate(const RunConfig& config);

/// Executes a validated config. Errors are written to `err` as a JSON object
/// and mapped to the exit codes above.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (subcommand first) and runs it.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stabsel::cli
