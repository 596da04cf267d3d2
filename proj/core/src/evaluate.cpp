#include "dialcap/evaluate.hpp"

#include "dialcap/error.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace dialcap {

double relative_improvement(double from, double to) {
    if (from == 0.0) return 0.0;
    return (from - to) / from;
}

int rounded_percent(double fraction) { return static_cast<int>(std::lround(fraction * 100.0)); }

ComparisonTable hospital_vs_optimal(const DemandHistory& history, std::span<const int> weeks,
                                    const Allocation& hospital, CohortPolicy policy, const ClinicConfig& config,
                                    const PenaltyWeights& weights) {
    DaySolver solver(policy, weights, config);
    ComparisonTable table{.rows = {}, .hospital_total = {}, .optimal_total = {}};
    for (int week : weeks) {
        const ScenarioSet realized = realized_scenario(history, week, config.days_per_week);
        const FixedEvaluation fixed = evaluate_fixed(solver, hospital, realized);
        const OptimizeResult opt = optimize(solver, realized);
        ComparisonRow row{week, fixed.per_scenario.front(), opt.allocation, opt.per_scenario.front(), 0.0, 0};
        row.improvement = relative_improvement(row.hospital.total, row.optimal.total);
        row.improvement_pct = rounded_percent(row.improvement);
        table.hospital_total += row.hospital;
        table.optimal_total += row.optimal;
        table.rows.push_back(std::move(row));
    }
    table.improvement = relative_improvement(table.hospital_total.total, table.optimal_total.total);
    table.improvement_pct = rounded_percent(table.improvement);
    return table;
}

PolicyTable compare_policies(const DemandHistory& history, std::span<const int> weeks,
                             const ClinicConfig& three_config, const ClinicConfig& two_config,
                             const PenaltyWeights& weights) {
    if (three_config.days_per_week != two_config.days_per_week)
        throw ValidationError("policies must plan the same number of days");
    DaySolver three(CohortPolicy::ThreeUnit, weights, three_config);
    DaySolver two(CohortPolicy::TwoUnit, weights, two_config);
    PolicyTable table;
    for (int week : weeks) {
        const ScenarioSet realized = realized_scenario(history, week, three_config.days_per_week);
        const OptimizeResult a = optimize(three, realized);
        const OptimizeResult b = optimize(two, realized);
        PolicyRow row{week, a.allocation, a.per_scenario.front(), b.allocation, b.per_scenario.front(), 0.0, 0};
        row.difference = relative_improvement(row.three.total, row.two.total);
        row.difference_pct = rounded_percent(row.difference);
        table.three_total += row.three;
        table.two_total += row.two;
        table.rows.push_back(std::move(row));
    }
    return table;
}

namespace {

constexpr std::array<PatientType, 3> kUncertain{PatientType::Acute, PatientType::Infected, PatientType::Suspected};

TypeForecast from_interval(PatientType type, const PredictionInterval& interval) {
    return {type, std::nullopt, interval, discretize_uniform(interval)};
}

} // namespace

std::array<TypeForecast, 3> forecast_week(const DemandHistory& history, int target_week, PiLevel level,
                                          int days_per_week) {
    if (target_week < 2) throw ValidationError("no training weeks before week " + std::to_string(target_week));
    const DemandHistory training = weeks_range(history, 1, target_week - 1, days_per_week);
    std::array<TypeForecast, 3> out;
    for (std::size_t i = 0; i < kUncertain.size(); ++i) {
        const auto series = series_for_type(training, kUncertain[i]);
        const SesFit fit = fit_ses(std::span<const int>(series));
        out[i] = from_interval(kUncertain[i], prediction_interval(fit, level));
        out[i].fit = fit;
    }
    return out;
}

PlanReport plan_then_realize(const DemandHistory& history, const PlanRequest& request) {
    request.config.validate(request.policy);
    request.weights.validate();
    if (request.target_week < 2) throw ValidationError("target week 1 has no training data");
    if (request.scenarios < 1) throw ValidationError("at least one scenario is required");
    const int dpw = request.config.days_per_week;

    std::array<TypeForecast, 3> forecasts;
    if (request.intervals) {
        for (std::size_t i = 0; i < kUncertain.size(); ++i)
            forecasts[i] = from_interval(kUncertain[i], (*request.intervals)[i]);
    } else {
        forecasts = forecast_week(history, request.target_week, request.level, dpw);
    }
    const DemandDists dists{forecasts[0].distribution, forecasts[1].distribution, forecasts[2].distribution};
    ScenarioSet scenarios = build_scenario_set(dists, request.chronic, request.scenarios, request.seed, dpw);

    DaySolver solver(request.policy, request.weights, request.config);
    OptimizeResult plan = optimize(solver, scenarios, {request.threads, true});
    const auto days = complete_week(history, request.target_week, dpw);
    auto schedules = schedule_week(solver, plan.allocation, days);
    const ScheduleCost realized = week_cost(solver, plan.allocation, days);
    return {request, forecasts, std::move(scenarios), std::move(plan), realized, std::move(schedules)};
}

std::vector<std::optional<double>> utilization(const Allocation& alloc, CohortPolicy policy,
                                               std::span<const DayResult> days, const ClinicConfig& config) {
    if (alloc.units() != unit_count(policy)) throw ValidationError("allocation does not match the policy");
    std::vector<long> treated(static_cast<std::size_t>(alloc.units()), 0);
    for (const auto& d : days)
        for (PatientType t : kPatientTypes)
            for (int s = 0; s < d.schedule.sessions; ++s)
                treated[static_cast<std::size_t>(unit_of(policy, t))] += d.schedule.x(t, s);
    std::vector<std::optional<double>> out;
    for (int j = 0; j < alloc.units(); ++j) {
        if (alloc[j] == 0) {
            out.emplace_back();
            continue;
        }
        const double slots = static_cast<double>(alloc[j]) * config.sessions_per_day * config.days_per_week;
        out.emplace_back(100.0 * static_cast<double>(treated[static_cast<std::size_t>(j)]) / slots);
    }
    return out;
}

std::vector<UtilizationRow> utilization_series(const DemandHistory& history, const ComparisonTable& table,
                                               const Allocation& hospital, CohortPolicy policy,
                                               const ClinicConfig& config, const PenaltyWeights& weights) {
    DaySolver solver(policy, weights, config);
    std::vector<UtilizationRow> out;
    for (const auto& row : table.rows) {
        const auto days = complete_week(history, row.week, config.days_per_week);
        const auto h = schedule_week(solver, hospital, days);
        const auto o = schedule_week(solver, row.optimal_allocation, days);
        out.push_back({row.week, utilization(hospital, policy, h, config),
                       utilization(row.optimal_allocation, policy, o, config)});
    }
    return out;
}

namespace {

std::string tally_cells(const ScheduleCost& c) {
    std::ostringstream os;
    os << c.overlap_12x3 << ',' << c.overlap_12x4 << ',' << c.overlap_3x4 << ',' << std::llround(c.total);
    return os.str();
}

std::string alloc_cells(const Allocation& a, int width) {
    std::ostringstream os;
    for (int j = 0; j < width; ++j) os << (j ? "," : "") << (j < a.units() ? std::to_string(a[j]) : "");
    return os.str();
}

std::string fixed(double v, int digits) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

} // namespace

std::string comparison_csv(const ComparisonTable& table) {
    std::ostringstream os;
    const int width = table.rows.empty() ? 3 : table.rows.front().optimal_allocation.units();
    os << "week,o12x3,o12x4,o3x4,z";
    for (int j = 1; j <= width; ++j) os << ",r" << j;
    os << ",o12x3_opt,o12x4_opt,o3x4_opt,z_opt,improvement,improvement_pct\n";
    for (const auto& r : table.rows)
        os << r.week << ',' << tally_cells(r.hospital) << ',' << alloc_cells(r.optimal_allocation, width) << ','
           << tally_cells(r.optimal) << ',' << fixed(r.improvement, 6) << ',' << r.improvement_pct << '\n';
    os << "total," << tally_cells(table.hospital_total) << ',' << std::string(static_cast<std::size_t>(width), ',')
       << tally_cells(table.optimal_total) << ',' << fixed(table.improvement, 6) << ',' << table.improvement_pct
       << '\n';
    return os.str();
}

std::string policy_csv(const PolicyTable& table) {
    std::ostringstream os;
    os << "week,r1_three,r2_three,r3_three,o12x3_three,o12x4_three,o3x4_three,z_three,"
          "r1_two,r2_two,o12x3_two,o12x4_two,z_two,difference,difference_pct\n";
    auto two_cells = [](const ScheduleCost& c) {
        return std::to_string(c.overlap_12x3) + ',' + std::to_string(c.overlap_12x4) + ',' +
               std::to_string(std::llround(c.total));
    };
    for (const auto& r : table.rows)
        os << r.week << ',' << alloc_cells(r.three_allocation, 3) << ',' << tally_cells(r.three) << ','
           << alloc_cells(r.two_allocation, 2) << ',' << two_cells(r.two) << ',' << fixed(r.difference, 6) << ','
           << r.difference_pct << '\n';
    const double diff = relative_improvement(table.three_total.total, table.two_total.total);
    os << "total,,,," << tally_cells(table.three_total) << ",,," << two_cells(table.two_total) << ','
       << fixed(diff, 6) << ',' << rounded_percent(diff) << '\n';
    return os.str();
}

std::string plan_reports_csv(std::span<const PlanReport> reports) {
    std::ostringstream os;
    os << "week,pi,policy,seed,scenarios,allocation,expected_cost,e_o12x3,e_o12x4,e_o3x4,"
          "realized_o12x3,realized_o12x4,realized_o3x4,realized_z\n";
    for (const auto& r : reports)
        os << r.request.target_week << ',' << to_string(r.request.level) << ',' << to_string(r.request.policy) << ','
           << r.request.seed << ',' << r.request.scenarios << ",\"" << r.plan.allocation.str() << "\","
           << fixed(r.plan.expected_cost, 2) << ',' << fixed(r.plan.expected_overlaps.q, 2) << ','
           << fixed(r.plan.expected_overlaps.g, 2) << ',' << fixed(r.plan.expected_overlaps.w, 2) << ','
           << tally_cells(r.realized) << '\n';
    return os.str();
}

std::string utilization_csv(std::span<const UtilizationRow> rows) {
    std::ostringstream os;
    os << "week,series,unit,utilization_pct\n";
    auto emit = [&](int week, const char* series, const std::vector<std::optional<double>>& u) {
        for (std::size_t j = 0; j < u.size(); ++j)
            os << week << ',' << series << ',' << j + 1 << ',' << (u[j] ? fixed(*u[j], 1) : "n/a") << '\n';
    };
    for (const auto& r : rows) {
        emit(r.week, "hospital", r.hospital);
        emit(r.week, "optimal", r.optimal);
    }
    return os.str();
}

} // namespace dialcap
