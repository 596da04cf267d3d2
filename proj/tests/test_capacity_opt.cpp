#include "support.hpp"

#include <dialcap/capacity_opt.hpp>
#include <dialcap/error.hpp>
#include <dialcap/scenario.hpp>

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace dialcap;

namespace {

int count_allocations(const std::vector<int>& caps, int total) {
    int n = 0;
    auto rec = [&](auto&& self, std::size_t j, int used) -> void {
        if (j == caps.size()) {
            ++n;
            return;
        }
        for (int v = 0; v <= caps[j] && used + v <= total; ++v) self(self, j + 1, used + v);
    };
    rec(rec, 0, 0);
    return n;
}

ScenarioSet random_scenarios(std::mt19937_64& rng, int n, int days, int max_demand) {
    ScenarioSet s;
    for (int k = 0; k < n; ++k) {
        Scenario sc{1.0 / n, {}};
        for (int d = 0; d < days; ++d) {
            DayDemand dd;
            for (int& c : dd.counts) c = static_cast<int>(rng() % static_cast<std::uint64_t>(max_demand + 1));
            sc.days.push_back(dd);
        }
        s.scenarios.push_back(sc);
    }
    return s;
}

ClinicConfig small_config(CohortPolicy p, int machines) {
    ClinicConfig c = test::tiny_config(p, machines, 3);
    c.days_per_week = 2;
    return c;
}

} // namespace

TEST_CASE("allocations are enumerated in lexicographic order") {
    const auto three = enumerate_allocations(CohortPolicy::ThreeUnit, ClinicConfig::defaults(CohortPolicy::ThreeUnit));
    CHECK(static_cast<int>(three.size()) == count_allocations({11, 8, 5}, 14));
    CHECK(std::is_sorted(three.begin(), three.end()));
    CHECK(three.front().str() == "(0,0,0)");
    CHECK(three.back().str() == "(11,3,0)");
    const auto two = enumerate_allocations(CohortPolicy::TwoUnit, ClinicConfig::defaults(CohortPolicy::TwoUnit));
    CHECK(static_cast<int>(two.size()) == count_allocations({11, 8}, 14));
}

TEST_CASE("realized weeks under the hospital allocation") {
    const DaySolver solver(CohortPolicy::ThreeUnit, {}, ClinicConfig::defaults(CohortPolicy::ThreeUnit));
    const auto w7 = evaluate_fixed(solver, test::alloc3(7, 5, 2), realized_scenario(test::clinic(), 7));
    CHECK(w7.expected_cost == 48.0);
    const auto w1 = evaluate_fixed(solver, test::alloc3(7, 5, 2), realized_scenario(test::clinic(), 1));
    CHECK(w1.expected_cost == 12450.0);
    CHECK(w1.per_scenario.front().overlaps() == OverlapTally{7, 5, 4});
}

TEST_CASE("optimal allocations for realized weeks") {
    const DaySolver solver(CohortPolicy::ThreeUnit, {}, ClinicConfig::defaults(CohortPolicy::ThreeUnit));
    const auto w7 = optimize(solver, realized_scenario(test::clinic(), 7));
    CHECK(w7.expected_cost == 36.0);
    CHECK(evaluate_fixed(solver, test::alloc3(10, 4, 0), realized_scenario(test::clinic(), 7)).expected_cost == 36.0);
    const auto w1 = optimize(solver, realized_scenario(test::clinic(), 1));
    CHECK(w1.expected_cost == 444.0);
    CHECK(w1.per_scenario.front().overlaps() == OverlapTally{0, 0, 4});
}

TEST_CASE("zero demand picks the empty allocation") {
    ScenarioSet zero;
    zero.scenarios.push_back(Scenario{1.0, std::vector<DayDemand>(6)});
    const auto r = optimize(CohortPolicy::ThreeUnit, ClinicConfig::defaults(CohortPolicy::ThreeUnit), {}, zero);
    CHECK(r.allocation.str() == "(0,0,0)");
    CHECK(r.expected_cost == 0.0);
    const auto fixed = evaluate_fixed(test::alloc3(7, 5, 2), CohortPolicy::ThreeUnit,
                                      ClinicConfig::defaults(CohortPolicy::ThreeUnit), {}, zero);
    CHECK(fixed.expected_cost == 0.0);
}

TEST_CASE("expected overlaps") {
    ScenarioSet s;
    s.scenarios = {Scenario{0.5, {}}, Scenario{0.5, {}}};
    ScheduleCost a, b;
    a.overlap_3x4 = 8;
    b.overlap_3x4 = 10;
    const std::vector<ScheduleCost> costs{a, b};
    const auto e = expected_overlaps(costs, s);
    CHECK(e.q == 0.0);
    CHECK(e.g == 0.0);
    CHECK(e.w == doctest::Approx(9.0));
    CHECK_THROWS_AS(expected_overlaps(std::vector<ScheduleCost>{a}, s), ValidationError);
}

TEST_CASE("optimum is no worse than any fixed allocation") {
    std::mt19937_64 rng(99);
    const ClinicConfig c = ClinicConfig::defaults(CohortPolicy::ThreeUnit);
    const DaySolver solver(CohortPolicy::ThreeUnit, {}, c);
    const ScenarioSet s = random_scenarios(rng, 5, 6, 9);
    const auto best = optimize(solver, s);
    const auto all = enumerate_allocations(CohortPolicy::ThreeUnit, c);
    for (int i = 0; i < 50; ++i) {
        const Allocation& a = all[rng() % all.size()];
        CHECK(best.expected_cost <= evaluate_fixed(solver, a, s).expected_cost);
    }
}

TEST_CASE("pruning, threads and plain search agree") {
    std::mt19937_64 rng(5);
    for (CohortPolicy p : {CohortPolicy::ThreeUnit, CohortPolicy::TwoUnit}) {
        const ClinicConfig c = ClinicConfig::defaults(p);
        const DaySolver solver(p, {}, c);
        const ScenarioSet s = random_scenarios(rng, 4, 6, 10);
        const auto plain = optimize(solver, s, {1, false});
        const auto pruned = optimize(solver, s, {1, true});
        const auto threaded = optimize(solver, s, {4, true});
        CHECK(plain.allocations_abandoned == 0);
        for (const auto* r : {&pruned, &threaded}) {
            CHECK(r->allocation == plain.allocation);
            CHECK(r->expected_cost == plain.expected_cost);
            CHECK(r->per_scenario == plain.per_scenario);
        }
    }
}

TEST_CASE("optimize never gets worse with more machines") {
    std::mt19937_64 rng(71);
    for (int i = 0; i < 100; ++i) {
        const CohortPolicy p = i % 2 ? CohortPolicy::TwoUnit : CohortPolicy::ThreeUnit;
        const int machines = 1 + static_cast<int>(rng() % 3);
        const ScenarioSet s = random_scenarios(rng, 2, 2, 4);
        const double base = optimize(p, small_config(p, machines), {}, s).expected_cost;
        const double more = optimize(p, small_config(p, machines + 1), {}, s).expected_cost;
        CHECK(more <= base);
    }
}

TEST_CASE("scaling the weights keeps the chosen allocation") {
    std::mt19937_64 rng(8);
    const ClinicConfig c = ClinicConfig::defaults(CohortPolicy::ThreeUnit);
    for (int i = 0; i < 3; ++i) {
        const ScenarioSet s = random_scenarios(rng, 3, 6, 10);
        const auto base = optimize(CohortPolicy::ThreeUnit, c, {}, s);
        for (double lambda : {0.5, 3.0}) {
            const auto r = optimize(CohortPolicy::ThreeUnit, c, PenaltyWeights{}.scaled(lambda), s);
            CHECK(r.allocation == base.allocation);
            CHECK(r.expected_cost == doctest::Approx(lambda * base.expected_cost));
        }
    }
}

TEST_CASE("scenario sets must match the planning week") {
    ScenarioSet s;
    s.scenarios.push_back(Scenario{1.0, std::vector<DayDemand>(5)});
    CHECK_THROWS_AS(optimize(CohortPolicy::TwoUnit, ClinicConfig::defaults(CohortPolicy::TwoUnit), {}, s),
                    ValidationError);
}
