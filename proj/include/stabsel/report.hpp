#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "stabsel/eval.hpp"
#include "stabsel/stability.hpp"

namespace stabsel {

/// Everything a selection run produces, in serializable form.
struct SelectionReport {
    nlohmann::json params;  // full effective configuration, including the seed
    std::vector<std::string> predictor_names;
    stability::StabilityScores scores;
    double phi = 0.0;
    std::vector<std::size_t> stable_set;
    std::vector<std::size_t> stable_set_sbs;
    bool lambda_q_exact = true;
    std::optional<double> theta;
    std::optional<double> error_constant;
    std::optional<double> bound;
    std::vector<std::string> warnings;
    bool include_runs = false;  // add the sampled block pairs and per-run selections
};

/// {params, lambda_q, q, scores: [{name, pi_av, pi_sim}], stable_set, bound, phi, ...}
nlohmann::json to_json(const SelectionReport& report);

nlohmann::json to_json(const eval::ForecastReport& report, const std::vector<std::string>& predictor_names);

nlohmann::json to_json(const eval::MethodResult& result, const std::vector<std::string>& predictor_names);

}  // namespace stabsel
