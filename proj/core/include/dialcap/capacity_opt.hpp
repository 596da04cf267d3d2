#pragma once

#include "dialcap/domain.hpp"
#include "dialcap/schedule_solver.hpp"

#include <span>
#include <vector>

namespace dialcap {

struct ExpectedOverlaps {
    double q = 0.0; // E[standard x infected]
    double g = 0.0; // E[standard x suspected]
    double w = 0.0; // E[infected x suspected]
};

struct OptimizeOptions {
    int threads = 1;
    bool short_circuit = true;
};

struct OptimizeResult {
    Allocation allocation;
    double expected_cost = 0.0;
    std::vector<ScheduleCost> per_scenario; // weekly sums
    ExpectedOverlaps expected_overlaps;
    std::size_t allocations_total = 0;
    std::size_t allocations_abandoned = 0; // depends on thread timing when parallel
};

struct FixedEvaluation {
    double expected_cost = 0.0;
    std::vector<ScheduleCost> per_scenario;
    ExpectedOverlaps expected_overlaps;
};

// Every allocation within the unit caps and machine total, lexicographically
// ascending.
std::vector<Allocation> enumerate_allocations(CohortPolicy policy, const ClinicConfig& config);

// Days solved in order and summed into one weekly cost.
ScheduleCost week_cost(const DaySolver& solver, const Allocation& alloc, std::span<const DayDemand> days);
std::vector<DayResult> schedule_week(const DaySolver& solver, const Allocation& alloc,
                                     std::span<const DayDemand> days);

FixedEvaluation evaluate_fixed(const DaySolver& solver, const Allocation& alloc, const ScenarioSet& scenarios);
FixedEvaluation evaluate_fixed(const Allocation& alloc, CohortPolicy policy, const ClinicConfig& config,
                               const PenaltyWeights& weights, const ScenarioSet& scenarios);

// Exhaustive first-stage search minimizing expected weekly cost. Ties go to
// the lexicographically smallest allocation; with short_circuit an allocation
// is dropped once its running expectation exceeds the best complete one.
// Parallel and serial runs return identical results.
OptimizeResult optimize(const DaySolver& solver, const ScenarioSet& scenarios, const OptimizeOptions& options = {});
OptimizeResult optimize(CohortPolicy policy, const ClinicConfig& config, const PenaltyWeights& weights,
                        const ScenarioSet& scenarios, const OptimizeOptions& options = {});

ExpectedOverlaps expected_overlaps(std::span<const ScheduleCost> per_scenario, const ScenarioSet& scenarios);

} // namespace dialcap
