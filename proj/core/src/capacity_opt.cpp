#include "dialcap/capacity_opt.hpp"

#include "dialcap/error.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <thread>

namespace dialcap {

std::vector<Allocation> enumerate_allocations(CohortPolicy policy, const ClinicConfig& config) {
    config.validate(policy);
    const int units = unit_count(policy);
    std::vector<Allocation> out;
    std::vector<int> r(static_cast<std::size_t>(units), 0);
    auto rec = [&](auto&& self, int j, int used) -> void {
        if (j == units) {
            out.push_back(Allocation::create(policy, config, r));
            return;
        }
        const int cap = std::min(config.unit_caps[static_cast<std::size_t>(j)], config.total_machines - used);
        for (int v = 0; v <= cap; ++v) {
            r[static_cast<std::size_t>(j)] = v;
            self(self, j + 1, used + v);
        }
    };
    rec(rec, 0, 0);
    return out;
}

ScheduleCost week_cost(const DaySolver& solver, const Allocation& alloc, std::span<const DayDemand> days) {
    ScheduleCost week;
    for (const auto& d : days) week += solver.solve(alloc, d).cost;
    return week;
}

std::vector<DayResult> schedule_week(const DaySolver& solver, const Allocation& alloc,
                                     std::span<const DayDemand> days) {
    std::vector<DayResult> out;
    out.reserve(days.size());
    for (const auto& d : days) out.push_back(solver.solve(alloc, d));
    return out;
}

ExpectedOverlaps expected_overlaps(std::span<const ScheduleCost> per_scenario, const ScenarioSet& scenarios) {
    if (per_scenario.size() != scenarios.size())
        throw ValidationError("per-scenario costs do not align with the scenario set");
    ExpectedOverlaps e;
    for (std::size_t k = 0; k < per_scenario.size(); ++k) {
        const double p = scenarios.scenarios[k].probability;
        e.q += p * per_scenario[k].overlap_12x3;
        e.g += p * per_scenario[k].overlap_12x4;
        e.w += p * per_scenario[k].overlap_3x4;
    }
    return e;
}

FixedEvaluation evaluate_fixed(const DaySolver& solver, const Allocation& alloc, const ScenarioSet& scenarios) {
    scenarios.validate(solver.config().days_per_week);
    FixedEvaluation ev;
    for (const auto& sc : scenarios.scenarios) {
        ev.per_scenario.push_back(week_cost(solver, alloc, sc.days));
        ev.expected_cost += sc.probability * ev.per_scenario.back().total;
    }
    ev.expected_overlaps = expected_overlaps(ev.per_scenario, scenarios);
    return ev;
}

FixedEvaluation evaluate_fixed(const Allocation& alloc, CohortPolicy policy, const ClinicConfig& config,
                               const PenaltyWeights& weights, const ScenarioSet& scenarios) {
    DaySolver solver(policy, weights, config);
    return evaluate_fixed(solver, alloc, scenarios);
}

namespace {

constexpr double kAbandoned = std::numeric_limits<double>::infinity();

// Expected cost accumulated in fixed (scenario, day) order, or kAbandoned
// once the running sum exceeds the incumbent. Costs are non-negative, so the
// running sum never decreases.
double expected_cost(const DaySolver& solver, const Allocation& alloc, const ScenarioSet& scenarios,
                     const std::atomic<double>* incumbent) {
    double acc = 0.0;
    for (const auto& sc : scenarios.scenarios) {
        double week = 0.0;
        for (const auto& d : sc.days) {
            week += solver.solve(alloc, d).cost.total;
            if (incumbent && acc + sc.probability * week > incumbent->load(std::memory_order_relaxed))
                return kAbandoned;
        }
        acc += sc.probability * week;
    }
    return acc;
}

void lower_incumbent(std::atomic<double>& incumbent, double value) {
    double cur = incumbent.load();
    while (value < cur && !incumbent.compare_exchange_weak(cur, value)) {
    }
}

} // namespace

OptimizeResult optimize(const DaySolver& solver, const ScenarioSet& scenarios, const OptimizeOptions& options) {
    scenarios.validate(solver.config().days_per_week);
    const auto allocs = enumerate_allocations(solver.policy(), solver.config());
    std::vector<double> costs(allocs.size(), kAbandoned);
    std::atomic<double> incumbent{std::numeric_limits<double>::infinity()};
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < allocs.size(); i = next.fetch_add(1)) {
            const double c = expected_cost(solver, allocs[i], scenarios, options.short_circuit ? &incumbent : nullptr);
            costs[i] = c;
            if (c != kAbandoned) lower_incumbent(incumbent, c);
        }
    };
    const int threads = std::max(1, options.threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < allocs.size(); ++i)
        if (costs[i] < costs[best]) best = i;

    FixedEvaluation ev = evaluate_fixed(solver, allocs[best], scenarios);
    OptimizeResult r{allocs[best], ev.expected_cost, std::move(ev.per_scenario), ev.expected_overlaps,
                     allocs.size(), static_cast<std::size_t>(std::count(costs.begin(), costs.end(), kAbandoned))};
    return r;
}

OptimizeResult optimize(CohortPolicy policy, const ClinicConfig& config, const PenaltyWeights& weights,
                        const ScenarioSet& scenarios, const OptimizeOptions& options) {
    DaySolver solver(policy, weights, config);
    return optimize(solver, scenarios, options);
}

} // namespace dialcap
