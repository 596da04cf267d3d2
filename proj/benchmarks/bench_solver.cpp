#include <dialcap/capacity_opt.hpp>
#include <dialcap/evaluate.hpp>
#include <dialcap/ingest.hpp>
#include <dialcap/schedule_solver.hpp>

#include <benchmark/benchmark.h>

using namespace dialcap;

namespace {

const DemandHistory& clinic() {
    static const DemandHistory h = load_demand_csv(DIALCAP_BENCH_DATA);
    return h;
}

void BM_SolveDay(benchmark::State& state) {
    const auto p = static_cast<CohortPolicy>(state.range(0));
    const ClinicConfig c = ClinicConfig::defaults(p);
    const Allocation a = Allocation::create(p, c, p == CohortPolicy::ThreeUnit ? std::vector{8, 4, 2} : std::vector{10, 4});
    const auto days = complete_week(clinic(), 8);
    for (auto _ : state)
        for (const auto& d : days) benchmark::DoNotOptimize(solve_day(p, a, d, {}, c));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(days.size()));
}
BENCHMARK(BM_SolveDay)->Arg(static_cast<int>(CohortPolicy::ThreeUnit))->Arg(static_cast<int>(CohortPolicy::TwoUnit));

void BM_BruteForceDay(benchmark::State& state) {
    ClinicConfig c;
    c.total_machines = 4;
    c.sessions_per_day = 4;
    c.days_per_week = 1;
    c.unit_caps = {4, 4, 4};
    const Allocation a = Allocation::create(CohortPolicy::ThreeUnit, c, {2, 1, 1});
    const DayDemand d{{4, 3, 2, 3}};
    for (auto _ : state) benchmark::DoNotOptimize(brute_force_day(CohortPolicy::ThreeUnit, a, d, {}, c));
}
BENCHMARK(BM_BruteForceDay)->Unit(benchmark::kMillisecond);

void BM_Optimize(benchmark::State& state) {
    const auto f = forecast_week(clinic(), 8, PiLevel::PI90);
    const ScenarioSet s = build_scenario_set({f[0].distribution, f[1].distribution, f[2].distribution}, {},
                                             static_cast<int>(state.range(0)), 1);
    const ClinicConfig c = ClinicConfig::defaults(CohortPolicy::ThreeUnit);
    const int threads = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(optimize(CohortPolicy::ThreeUnit, c, {}, s, {threads, true}));
}
BENCHMARK(BM_Optimize)->Args({30, 1})->Args({30, 4})->Unit(benchmark::kMillisecond)->UseRealTime();

} // namespace

BENCHMARK_MAIN();
