#include "dialcap/report.hpp"

#include "dialcap/error.hpp"
#include "dialcap/version.hpp"

#include <json.hpp>

#include <iomanip>
#include <sstream>

namespace dialcap {

namespace {

using nlohmann::ordered_json;

ordered_json cost_json(const ScheduleCost& c) {
    return {{"o12x3", c.overlap_12x3},         {"o12x4", c.overlap_12x4},       {"o3x4", c.overlap_3x4},
            {"unserved_penalty", c.unserved_penalty}, {"sessions_used", c.sessions_used}, {"total", c.total}};
}

ordered_json config_json(const ClinicConfig& c) {
    return {{"total_machines", c.total_machines},
            {"unit_caps", c.unit_caps},
            {"sessions_per_day", c.sessions_per_day},
            {"days_per_week", c.days_per_week}};
}

ordered_json weights_json(const PenaltyWeights& w) {
    return {{"alpha1", w.alpha1}, {"alpha2", w.alpha2}, {"alpha3", w.alpha3}, {"pi", w.pi}, {"epsilon", w.epsilon}};
}

ordered_json meta_json(const ScenarioSet& s, const RunMeta& meta) {
    ordered_json j{{"command", meta.command},
                   {"version", library_version()},
                   {"generator", s.generator.empty() ? "realized" : s.generator},
                   {"seed", s.seed}};
    if (meta.elapsed_seconds) j["elapsed_seconds"] = *meta.elapsed_seconds;
    return j;
}

ordered_json result_json(const ScenarioSet& scenarios, const OptimizeResult& r) {
    ordered_json per = ordered_json::array();
    for (std::size_t k = 0; k < r.per_scenario.size(); ++k) {
        ordered_json row = cost_json(r.per_scenario[k]);
        row["scenario"] = k + 1;
        row["probability"] = scenarios.scenarios[k].probability;
        per.push_back(std::move(row));
    }
    return {{"allocation", r.allocation.machines()},
            {"expected_cost", r.expected_cost},
            {"expected_overlaps", {{"o12x3", r.expected_overlaps.q},
                                   {"o12x4", r.expected_overlaps.g},
                                   {"o3x4", r.expected_overlaps.w}}},
            {"allocations_total", r.allocations_total},
            {"per_scenario", std::move(per)}};
}

} // namespace

std::string_view library_version() { return DIALCAP_VERSION; }

std::string optimize_report_json(CohortPolicy policy, const ScenarioSet& scenarios, const OptimizeResult& result,
                                 const PenaltyWeights& weights, const ClinicConfig& config, const RunMeta& meta) {
    ordered_json j{{"meta", meta_json(scenarios, meta)},
                   {"policy", to_string(policy)},
                   {"config", config_json(config)},
                   {"weights", weights_json(weights)},
                   {"scenarios", scenarios.size()},
                   {"result", result_json(scenarios, result)}};
    return j.dump(2) + "\n";
}

std::string plan_report_json(const PlanReport& report, const RunMeta& meta) {
    const PlanRequest& rq = report.request;
    ordered_json forecasts = ordered_json::array();
    for (const auto& f : report.forecasts) {
        ordered_json e{{"type", static_cast<int>(f.type)},
                       {"lower", f.interval.lower},
                       {"upper", f.interval.upper},
                       {"distribution", f.distribution.str()}};
        if (f.fit) {
            e["smoothing"] = f.fit->smoothing;
            e["point_forecast"] = f.fit->point_forecast;
            e["rmse"] = f.fit->rmse;
        }
        forecasts.push_back(std::move(e));
    }
    ordered_json j{{"meta", meta_json(report.scenarios, meta)},
                   {"policy", to_string(rq.policy)},
                   {"target_week", rq.target_week},
                   {"pi", to_string(rq.level)},
                   {"config", config_json(rq.config)},
                   {"weights", weights_json(rq.weights)},
                   {"chronic", {{"mwf", rq.chronic.mwf}, {"tts", rq.chronic.tts}}},
                   {"intervals_injected", rq.intervals.has_value()},
                   {"forecasts", std::move(forecasts)},
                   {"scenarios", report.scenarios.size()},
                   {"result", result_json(report.scenarios, report.plan)},
                   {"realized", cost_json(report.realized)}};
    return j.dump(2) + "\n";
}

std::string per_scenario_csv(const ScenarioSet& scenarios, std::span<const ScheduleCost> costs) {
    if (costs.size() != scenarios.size()) throw ValidationError("per-scenario costs do not align with the scenario set");
    std::ostringstream os;
    os << "scenario,probability,o12x3,o12x4,o3x4,unserved_penalty,sessions_used,total\n";
    os << std::setprecision(17);
    for (std::size_t k = 0; k < costs.size(); ++k) {
        const auto& c = costs[k];
        os << k + 1 << ',' << scenarios.scenarios[k].probability << ',' << c.overlap_12x3 << ',' << c.overlap_12x4
           << ',' << c.overlap_3x4 << ',' << c.unserved_penalty << ',' << c.sessions_used << ',' << c.total << '\n';
    }
    return os.str();
}

} // namespace dialcap
