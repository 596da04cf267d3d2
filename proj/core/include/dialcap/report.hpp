#pragma once

#include "dialcap/capacity_opt.hpp"
#include "dialcap/evaluate.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace dialcap {

struct RunMeta {
    std::string command;
    std::optional<double> elapsed_seconds; // omitted from the report when empty
};

// Pretty-printed JSON documents. Both embed seed, generator and version.
std::string optimize_report_json(CohortPolicy policy, const ScenarioSet& scenarios, const OptimizeResult& result,
                                 const PenaltyWeights& weights, const ClinicConfig& config, const RunMeta& meta);
std::string plan_report_json(const PlanReport& report, const RunMeta& meta);

// scenario,probability,o12x3,o12x4,o3x4,unserved_penalty,sessions_used,total
std::string per_scenario_csv(const ScenarioSet& scenarios, std::span<const ScheduleCost> costs);

std::string_view library_version();

} // namespace dialcap
