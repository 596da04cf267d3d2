#pragma once

#include "dialcap/capacity_opt.hpp"
#include "dialcap/domain.hpp"
#include "dialcap/forecast.hpp"
#include "dialcap/ingest.hpp"
#include "dialcap/scenario.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dialcap {

// Relative improvement (from - to) / from; 0 when from is 0.
double relative_improvement(double from, double to);
int rounded_percent(double fraction);

struct ComparisonRow {
    int week = 0;
    ScheduleCost hospital;
    Allocation optimal_allocation;
    ScheduleCost optimal;
    double improvement = 0.0;
    int improvement_pct = 0;
};

struct ComparisonTable {
    std::vector<ComparisonRow> rows;
    ScheduleCost hospital_total;
    ScheduleCost optimal_total;
    double improvement = 0.0;
    int improvement_pct = 0;
};

// Fixed hospital allocation vs. the optimal allocation, each evaluated on a
// week's realized demand as a single scenario.
ComparisonTable hospital_vs_optimal(const DemandHistory& history, std::span<const int> weeks,
                                    const Allocation& hospital, CohortPolicy policy, const ClinicConfig& config,
                                    const PenaltyWeights& weights);

struct PolicyRow {
    int week = 0;
    Allocation three_allocation;
    ScheduleCost three;
    Allocation two_allocation;
    ScheduleCost two;
    double difference = 0.0; // (Z3 - Z2) / Z3
    int difference_pct = 0;
};

struct PolicyTable {
    std::vector<PolicyRow> rows;
    ScheduleCost three_total;
    ScheduleCost two_total;
};

// Deterministic optima of both cohorting policies per realized week.
PolicyTable compare_policies(const DemandHistory& history, std::span<const int> weeks,
                             const ClinicConfig& three_config, const ClinicConfig& two_config,
                             const PenaltyWeights& weights);

struct TypeForecast {
    PatientType type = PatientType::Acute;
    std::optional<SesFit> fit; // empty when the interval was injected
    PredictionInterval interval;
    IntDist distribution;
};

// Fits on every complete week before target_week and discretizes the
// prediction interval of acute, infected and suspected demand.
std::array<TypeForecast, 3> forecast_week(const DemandHistory& history, int target_week, PiLevel level,
                                          int days_per_week = 6);

struct PlanRequest {
    int target_week = 8;
    PiLevel level = PiLevel::PI80;
    int scenarios = 30;
    std::uint64_t seed = 1;
    CohortPolicy policy = CohortPolicy::ThreeUnit;
    ClinicConfig config = ClinicConfig::defaults(CohortPolicy::ThreeUnit);
    PenaltyWeights weights;
    ChronicRegime chronic;
    int threads = 1;
    // Acute, infected, suspected intervals used instead of fitted ones.
    std::optional<std::array<PredictionInterval, 3>> intervals;
};

struct PlanReport {
    PlanRequest request;
    std::array<TypeForecast, 3> forecasts;
    ScenarioSet scenarios;
    OptimizeResult plan;
    ScheduleCost realized;                // chosen allocation on the realized target week
    std::vector<DayResult> realized_days;
};

// Forecast -> sample -> optimize -> evaluate the chosen allocation on the
// realized demand of the target week.
PlanReport plan_then_realize(const DemandHistory& history, const PlanRequest& request);

// Percent of weekly slot capacity R_j * sessions * days used per unit; empty
// for units without machines.
std::vector<std::optional<double>> utilization(const Allocation& alloc, CohortPolicy policy,
                                               std::span<const DayResult> days, const ClinicConfig& config);

struct UtilizationRow {
    int week = 0;
    std::vector<std::optional<double>> hospital;
    std::vector<std::optional<double>> optimal;
};

std::vector<UtilizationRow> utilization_series(const DemandHistory& history, const ComparisonTable& table,
                                               const Allocation& hospital, CohortPolicy policy,
                                               const ClinicConfig& config, const PenaltyWeights& weights);

std::string comparison_csv(const ComparisonTable& table);
std::string policy_csv(const PolicyTable& table);
std::string plan_reports_csv(std::span<const PlanReport> reports);
std::string utilization_csv(std::span<const UtilizationRow> rows);

} // namespace dialcap
