#include "stabsel/report.hpp"

namespace stabsel {

namespace {

nlohmann::json names_of(const std::vector<std::size_t>& indices, const std::vector<std::string>& names)
{
    auto out = nlohmann::json::array();
    for (const auto k : indices) {
        out.push_back(names.at(k));
    }
    return out;
}

nlohmann::json optional_number(const std::optional<double>& v)
{
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json to_json(const SelectionReport& report)
{
    const auto& s = report.scores;
    nlohmann::json j;
    j["params"] = report.params;
    j["lambda_q"] = s.lambda_q;
    j["lambda_q_exact"] = report.lambda_q_exact;
    j["q"] = s.q;
    j["B"] = s.B;
    j["phi"] = report.phi;
    j["theta"] = optional_number(report.theta);
    j["error_constant"] = optional_number(report.error_constant);
    j["bound"] = optional_number(report.bound);

    auto scores = nlohmann::json::array();
    for (std::size_t k = 0; k < s.predictors(); ++k) {
        scores.push_back({{"name", report.predictor_names.at(k)}, {"pi_av", s.pi_av[k]}, {"pi_sim", s.pi_sim[k]}});
    }
    j["scores"] = std::move(scores);
    j["stable_set"] = names_of(report.stable_set, report.predictor_names);
    j["stable_set_sbs"] = names_of(report.stable_set_sbs, report.predictor_names);
    j["stable_set_size"] = report.stable_set.size();
    j["stable_set_within_q"] = report.stable_set.size() <= s.q;
    j["warnings"] = report.warnings;

    if (report.include_runs) {
        auto runs = nlohmann::json::array();
        for (std::size_t r = 0; r < s.selections.size(); ++r) {
            nlohmann::json run;
            if (r < s.pairs.size()) {
                run["first_blocks"] = s.pairs[r].first;
                run["second_blocks"] = s.pairs[r].second;
            }
            run["first_selected"] = names_of(s.selections[r].first, report.predictor_names);
            run["second_selected"] = names_of(s.selections[r].second, report.predictor_names);
            runs.push_back(std::move(run));
        }
        j["runs"] = std::move(runs);
    }
    return j;
}

nlohmann::json to_json(const eval::ForecastReport& report, const std::vector<std::string>& predictor_names)
{
    return {
        {"rmse", report.rmse},
        {"mape", report.mape},
        {"mape_skipped", report.mape_skipped},
        {"n_train", report.n_train},
        {"n_test", report.n_test},
        {"rank_deficient_fits", report.rank_deficient_fits},
        {"selected", names_of(report.selected, predictor_names)},
        {"predictions", report.predictions},
        {"actuals", report.actuals},
    };
}

nlohmann::json to_json(const eval::MethodResult& result, const std::vector<std::string>& predictor_names)
{
    nlohmann::json j;
    j["method"] = result.method;
    if (result.report) {
        j["report"] = to_json(*result.report, predictor_names);
        j["error"] = nullptr;
    } else {
        j["report"] = nullptr;
        j["error"] = result.error;
    }
    return j;
}

}  // namespace stabsel
