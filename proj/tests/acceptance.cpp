// Acceptance criteria. Usage: dialcap_acceptance [criterion ...]
// With no arguments every criterion runs. Exit status is 0 iff all run
// criteria pass.

#include "support.hpp"

#include <dialcap/case_study.hpp>
#include <dialcap/evaluate.hpp>
#include <dialcap/report.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

using namespace dialcap;
namespace cs = dialcap::case_study;

namespace {

constexpr double kTable4Seconds = 5.0;
constexpr double kTable6Seconds = 5.0;
constexpr double kMassTolerance = 0.015;
constexpr double kIntervalTolerance = 0.15;
constexpr int kOracleInstances = 2000;
constexpr double kOracleSeconds = 60.0;
constexpr double kPenaltyOverAlpha = 10.0;
constexpr int kStochasticScenarios = 30;
constexpr int kStochasticSeeds = 3;
constexpr int kMinStandardMachines = 8;
constexpr int kOverlapSeeds = 20;
constexpr double kOverlapMeanLow = 5.0;
constexpr double kOverlapMeanHigh = 14.0;
constexpr double kProbabilitySumTolerance = 1e-9;
constexpr int kMonotoneInstances = 100;
constexpr double kPerformanceSeconds = 10.0;

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void expect(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes.push_back(what);
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string num(double v, int digits = 2) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

std::vector<int> all_weeks() {
    std::vector<int> w(cs::kWeeks);
    std::iota(w.begin(), w.end(), 1);
    return w;
}

int hardware_threads() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

Outcome table4() {
    Outcome o;
    const auto t0 = Clock::now();
    const ClinicConfig c = ClinicConfig::defaults(CohortPolicy::ThreeUnit);
    const auto t = hospital_vs_optimal(test::clinic(), all_weeks(), test::alloc3(7, 5, 2), CohortPolicy::ThreeUnit, c,
                                       {});
    const double elapsed = seconds_since(t0);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto& r = t.rows[i];
        const auto& h = cs::kHospital[i];
        const std::string wk = "week " + std::to_string(r.week);
        o.expect(r.hospital.overlaps() == OverlapTally{h.q, h.g, h.w}, wk + " hospital overlaps");
        o.expect(r.hospital.total == h.cost, wk + " Z=" + num(r.hospital.total, 0) + " want " + std::to_string(h.cost));
        o.expect(r.optimal.total == cs::kThreeUnitOptimal[i].cost,
                 wk + " Z'=" + num(r.optimal.total, 0) + " want " + std::to_string(cs::kThreeUnitOptimal[i].cost));
    }
    o.expect(t.hospital_total.total == cs::kHospitalTotal, "hospital total " + num(t.hospital_total.total, 0));
    o.expect(t.optimal_total.total == cs::kThreeUnitOptimalTotal, "optimal total " + num(t.optimal_total.total, 0));
    o.expect(elapsed < kTable4Seconds, "took " + num(elapsed) + " s");
    o.notes.push_back("totals " + format_thousands(t.hospital_total.total) + " / " +
                      format_thousands(t.optimal_total.total) + " in " + num(elapsed) + " s");
    return o;
}

Outcome table6() {
    Outcome o;
    const auto t0 = Clock::now();
    const auto t = compare_policies(test::clinic(), all_weeks(), ClinicConfig::defaults(CohortPolicy::ThreeUnit),
                                    ClinicConfig::defaults(CohortPolicy::TwoUnit), {});
    const double elapsed = seconds_since(t0);
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        o.expect(t.rows[i].two.total == cs::kTwoUnitOptimal[i].cost,
                 "week " + std::to_string(t.rows[i].week) + " Z=" + num(t.rows[i].two.total, 0) + " want " +
                     std::to_string(cs::kTwoUnitOptimal[i].cost));
    o.expect(t.two_total.total == cs::kTwoUnitOptimalTotal,
             "total " + num(t.two_total.total, 0) + " want " + std::to_string(cs::kTwoUnitOptimalTotal));
    o.expect(t.two_total.overlap_12x3 == cs::kTwoUnitOverlapTotals[0] &&
                 t.two_total.overlap_12x4 == cs::kTwoUnitOverlapTotals[1],
             "overlap totals (" + std::to_string(t.two_total.overlap_12x3) + "," +
                 std::to_string(t.two_total.overlap_12x4) + ")");
    o.expect(elapsed < kTable6Seconds, "took " + num(elapsed) + " s");
    return o;
}

Outcome table8() {
    Outcome o;
    double worst = 0.0;
    for (const auto& m : cs::kPrintedMasses) {
        const IntDist d = discretize_uniform(cs::printed_interval(8, m.type, m.level));
        double got = 0.0;
        for (const auto& [v, p] : d.support)
            if (v == m.value) got = p;
        worst = std::max(worst, std::abs(got - m.mass));
        o.expect(std::abs(got - m.mass) <= kMassTolerance,
                 "type " + std::to_string(static_cast<int>(m.type)) + " value " + std::to_string(m.value) + " mass " +
                     num(got, 3) + " printed " + num(m.mass, 3));
    }
    o.notes.push_back("max deviation " + num(worst, 4));
    return o;
}

Outcome table3() {
    Outcome o;
    int off = 0, total = 0;
    for (int week = 6; week <= 8; ++week)
        for (PiLevel level : {PiLevel::PI80, PiLevel::PI90})
            for (const auto& f : forecast_week(test::clinic(), week, level)) {
                const auto p = cs::printed_interval(week, f.type, level);
                ++total;
                if (std::abs(f.interval.lower - p.lower) > kIntervalTolerance ||
                    std::abs(f.interval.upper - p.upper) > kIntervalTolerance) {
                    ++off;
                    o.notes.push_back("reported: week " + std::to_string(week) + " type " +
                                      std::to_string(static_cast<int>(f.type)) + " PI" + std::string(to_string(level)) +
                                      " [" + num(f.interval.lower) + ", " + num(f.interval.upper) + "] vs printed [" +
                                      num(p.lower) + ", " + num(p.upper) + "]");
                }
            }
    o.notes.push_back(std::to_string(total - off) + "/" + std::to_string(total) + " intervals within " +
                      num(kIntervalTolerance));
    // Misses are informational as long as the injected-interval path holds.
    const Outcome injected = table8();
    o.expect(injected.pass, "injected-interval path fails the mass criterion");
    return o;
}

Outcome oracle() {
    Outcome o;
    std::mt19937_64 rng(20240101);
    const auto t0 = Clock::now();
    int mismatches = 0;
    for (int i = 0; i < kOracleInstances; ++i) {
        auto t = test::random_tiny(rng, i % 2 ? CohortPolicy::TwoUnit : CohortPolicy::ThreeUnit);
        const double top = std::max({t.weights.alpha1, t.weights.alpha2, t.weights.alpha3});
        for (double p : t.weights.pi)
            if (p < kPenaltyOverAlpha * top) o.expect(false, "generator produced a penalty below the bound");
        const double a = solve_day(t.policy, t.alloc, t.demand, t.weights, t.config).cost.total;
        const double b = brute_force_day(t.policy, t.alloc, t.demand, t.weights, t.config).total;
        if (a != b) {
            ++mismatches;
            o.expect(false, std::string(to_string(t.policy)) + " " + t.alloc.str() + " S=" +
                                std::to_string(t.config.sessions_per_day) + ": solver " + num(a, 0) + " oracle " +
                                num(b, 0));
        }
    }
    const double elapsed = seconds_since(t0);
    o.expect(elapsed < kOracleSeconds, "took " + num(elapsed) + " s");
    o.notes.push_back(std::to_string(kOracleInstances) + " instances, " + std::to_string(mismatches) +
                      " mismatches, " + num(elapsed) + " s");
    return o;
}

PlanRequest stochastic_request(CohortPolicy p, int week, PiLevel level, std::uint64_t seed) {
    PlanRequest rq;
    rq.target_week = week;
    rq.level = level;
    rq.seed = seed;
    rq.scenarios = kStochasticScenarios;
    rq.policy = p;
    rq.config = ClinicConfig::defaults(p);
    rq.threads = hardware_threads();
    return rq;
}

double alpha_weighted(const OverlapTally& t, const PenaltyWeights& w) {
    return w.alpha1 * t.q + w.alpha2 * t.g + w.alpha3 * t.w;
}

Outcome stochastic() {
    Outcome o;
    const PenaltyWeights w;
    for (int week = 6; week <= 8; ++week)
        for (PiLevel level : {PiLevel::PI80, PiLevel::PI90})
            for (std::uint64_t seed = 1; seed <= kStochasticSeeds; ++seed) {
                const auto r = plan_then_realize(test::clinic(), stochastic_request(CohortPolicy::ThreeUnit, week,
                                                                                    level, seed));
                const std::string run = "week " + std::to_string(week) + " PI" + std::string(to_string(level)) +
                                        " seed " + std::to_string(seed);
                o.expect(r.plan.allocation[0] >= kMinStandardMachines,
                         "(a) " + run + " allocation " + r.plan.allocation.str());
                if (week == 6 || week == 8) {
                    const auto& h = cs::kHospital[static_cast<std::size_t>(week - 1)];
                    const double mine = alpha_weighted(r.realized.overlaps(), w);
                    const double theirs = alpha_weighted({h.q, h.g, h.w}, w);
                    o.expect(mine <= theirs, "(b) " + run + " weighted overlaps " + num(mine, 0) + " > hospital " +
                                                 num(theirs, 0));
                }
            }
    double sum = 0.0;
    for (std::uint64_t seed = 1; seed <= kOverlapSeeds; ++seed)
        sum += plan_then_realize(test::clinic(), stochastic_request(CohortPolicy::ThreeUnit, 6, PiLevel::PI80, seed))
                   .plan.expected_overlaps.w;
    const double mean = sum / kOverlapSeeds;
    o.expect(mean >= kOverlapMeanLow && mean <= kOverlapMeanHigh, "(c) mean E[O3x4] " + num(mean));
    o.notes.push_back("(c) week-6 PI80 mean E[O3x4] over " + std::to_string(kOverlapSeeds) + " seeds = " + num(mean));
    return o;
}

Outcome properties() {
    Outcome o;
    std::mt19937_64 rng(77);

    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto f = forecast_week(test::clinic(), 6 + static_cast<int>(seed % 3), PiLevel::PI90);
        const ScenarioSet s = build_scenario_set({f[0].distribution, f[1].distribution, f[2].distribution}, {},
                                                 1 + static_cast<int>(rng() % 50), seed);
        double sum = 0.0;
        for (const auto& sc : s.scenarios) sum += sc.probability;
        o.expect(std::abs(sum - 1.0) <= kProbabilitySumTolerance, "probabilities sum to " + num(sum, 12));
    }

    int day_checks = 0, opt_checks = 0;
    for (int i = 0; i < kMonotoneInstances; ++i) {
        const CohortPolicy p = i % 2 ? CohortPolicy::TwoUnit : CohortPolicy::ThreeUnit;
        auto t = test::random_tiny(rng, p);
        ClinicConfig roomy = t.config;
        roomy.total_machines += 1;
        for (int& cap : roomy.unit_caps) cap += 1;
        std::vector<int> more = t.alloc.machines();
        more[rng() % more.size()] += 1;
        const double base = solve_day(p, t.alloc, t.demand, t.weights, t.config).cost.total;
        const double bigger = solve_day(p, Allocation::create(p, roomy, more), t.demand, t.weights, roomy).cost.total;
        o.expect(bigger <= base, "solve_day not monotone on instance " + std::to_string(i));
        ++day_checks;

        ScenarioSet s;
        for (int k = 0; k < 2; ++k) {
            Scenario sc{0.5, {}};
            for (int d = 0; d < 2; ++d) {
                DayDemand dd;
                for (int& c : dd.counts) c = static_cast<int>(rng() % 4);
                sc.days.push_back(dd);
            }
            s.scenarios.push_back(sc);
        }
        ClinicConfig small = t.config;
        small.days_per_week = 2;
        small.sessions_per_day = 3;
        ClinicConfig larger = small;
        larger.total_machines += 1;
        const double z = optimize(p, small, t.weights, s).expected_cost;
        const double z_more = optimize(p, larger, t.weights, s).expected_cost;
        o.expect(z_more <= z, "optimize not monotone on instance " + std::to_string(i));
        ++opt_checks;
    }

    for (int i = 0; i < 10; ++i) {
        const CohortPolicy p = i % 2 ? CohortPolicy::TwoUnit : CohortPolicy::ThreeUnit;
        const auto r = plan_then_realize(test::clinic(), stochastic_request(p, 6 + i % 3, PiLevel::PI80, 100 + i));
        const ClinicConfig c = ClinicConfig::defaults(p);
        for (double lambda : {0.5, 3.0}) {
            const auto scaled = optimize(p, c, PenaltyWeights{}.scaled(lambda), r.scenarios);
            o.expect(scaled.allocation == r.plan.allocation,
                     "argmin moved under scale " + num(lambda, 1) + ": " + scaled.allocation.str() + " vs " +
                         r.plan.allocation.str());
        }
    }

    for (CohortPolicy p : {CohortPolicy::ThreeUnit, CohortPolicy::TwoUnit})
        for (std::uint64_t seed : {1u, 2u}) {
            PlanRequest rq = stochastic_request(p, 6, PiLevel::PI80, seed);
            rq.threads = 1;
            const std::string serial = plan_report_json(plan_then_realize(test::clinic(), rq), {"plan", {}});
            rq.threads = 2;
            const std::string parallel = plan_report_json(plan_then_realize(test::clinic(), rq), {"plan", {}});
            o.expect(serial == parallel, std::string(to_string(p)) + " report differs between 1 and 2 threads");
        }
    o.notes.push_back(std::to_string(day_checks) + " solve_day and " + std::to_string(opt_checks) +
                      " optimize monotonicity instances");
    return o;
}

Outcome performance() {
    Outcome o;
    PlanRequest rq = stochastic_request(CohortPolicy::ThreeUnit, 8, PiLevel::PI90, 1);
    rq.threads = 1;
    const auto f = forecast_week(test::clinic(), 8, PiLevel::PI90);
    const ScenarioSet s = build_scenario_set({f[0].distribution, f[1].distribution, f[2].distribution}, {},
                                             kStochasticScenarios, rq.seed);
    const auto t0 = Clock::now();
    const auto r = optimize(CohortPolicy::ThreeUnit, rq.config, rq.weights, s, {1, true});
    const double elapsed = seconds_since(t0);
    o.expect(elapsed < kPerformanceSeconds, "took " + num(elapsed) + " s");
    o.notes.push_back("single-threaded optimize over " + std::to_string(r.allocations_total) + " allocations in " +
                      num(elapsed) + " s");
    return o;
}

} // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"table4_exact", table4},       {"table6_exact", table6},       {"table8_masses", table8},
        {"table3_intervals", table3},   {"oracle_equivalence", oracle}, {"stochastic_tables", stochastic},
        {"property_suite", properties}, {"performance", performance},
    };
    std::vector<std::string> wanted(argv + 1, argv + argc);
    bool all_pass = true;
    for (const auto& name : wanted) {
        const bool known = std::any_of(criteria.begin(), criteria.end(), [&](const auto& c) { return c.first == name; });
        if (!known) {
            std::cerr << "unknown criterion '" << name << "'\n";
            return 2;
        }
    }
    for (const auto& [name, run] : criteria) {
        if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), name) == wanted.end()) continue;
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.expect(false, std::string("exception: ") + e.what());
        }
        all_pass = all_pass && o.pass;
        std::cout << (o.pass ? "PASS " : "FAIL ") << name;
        for (const auto& n : o.notes) std::cout << "\n    " << n;
        std::cout << std::endl;
    }
    return all_pass ? 0 : 1;
}
