#include "settings.hpp"

#include <dialcap/case_study.hpp>
#include <dialcap/error.hpp>
#include <dialcap/evaluate.hpp>
#include <dialcap/render.hpp>
#include <dialcap/report.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>

using namespace dialcap;
namespace fs = std::filesystem;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitInternal = 2;

struct Common {
    std::string data;
    std::string config;
    std::string policy = "three-unit";
    int threads = 1;
    std::string caps;
    cli::Overrides flags;
};

void add_common(CLI::App& app, Common& c) {
    app.add_option("--data", c.data, "Demand CSV (default: $DIALCAP_DATA, then the bundled data set)");
    app.add_option("--config", c.config, "JSON config file");
    app.add_option("--machines", c.flags.machines, "Total machines");
    app.add_option("--caps", c.caps, "Unit caps, e.g. 11,8,5");
    app.add_option("--sessions", c.flags.sessions, "Sessions per day");
    app.add_option("--days", c.flags.days, "Working days per week");
    app.add_option("--alpha1", c.flags.alpha1, "Penalty per standard x infected overlap");
    app.add_option("--alpha2", c.flags.alpha2, "Penalty per standard x suspected overlap");
    app.add_option("--alpha3", c.flags.alpha3, "Penalty per infected x suspected overlap");
    app.add_option("--penalty", c.flags.penalty, "Penalty per unserved patient (all types)");
    app.add_option("--epsilon", c.flags.epsilon, "Cost per opened session");
    app.add_option("--chronic-mwf", c.flags.chronic_mwf, "Chronic patients on Mon/Wed/Fri");
    app.add_option("--chronic-tts", c.flags.chronic_tts, "Chronic patients on Tue/Thu/Sat");
    app.add_option("--threads", c.threads, "Worker threads for the allocation search")->check(CLI::Range(1, 256));
}

cli::Settings settings_of(Common& c) {
    if (!c.caps.empty()) c.flags.caps = cli::parse_int_list(c.caps);
    std::optional<fs::path> file;
    if (!c.config.empty()) file = c.config;
    return cli::load_settings(file, c.flags);
}

DemandHistory history_of(const Common& c) {
    const fs::path path = cli::resolve_data_path(c.data);
    DemandHistory h = load_demand_csv(path);
    if (h.empty()) throw ValidationError("no demand records in '" + path.string() + "'");
    return h;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write '" + path + "'");
    out << text;
}

std::string fmt(double v, int digits = 2) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

std::string overlaps_text(double q, double g, double w, int digits) {
    return "12x3=" + fmt(q, digits) + " 12x4=" + fmt(g, digits) + " 3x4=" + fmt(w, digits);
}

std::string overlaps_text(const ScheduleCost& c) {
    return overlaps_text(c.overlap_12x3, c.overlap_12x4, c.overlap_3x4, 0);
}

// forecast ---------------------------------------------------------------

struct ForecastArgs {
    int week = 8;
    std::string csv;
};

int run_forecast(Common& common, const ForecastArgs& a) {
    const auto s = settings_of(common);
    const auto history = history_of(common);
    const int dpw = s.three.days_per_week;
    std::ostringstream csv;
    csv << "week,type,smoothing,point,rmse,pi,lower,upper,distribution\n";
    for (PiLevel level : {PiLevel::PI80, PiLevel::PI90}) {
        for (const auto& f : forecast_week(history, a.week, level, dpw)) {
            csv << a.week << ',' << static_cast<int>(f.type) << ',' << fmt(f.fit->smoothing, 3) << ','
                << fmt(f.fit->point_forecast, 4) << ',' << fmt(f.fit->rmse, 4) << ',' << to_string(level) << ','
                << fmt(f.interval.lower) << ',' << fmt(f.interval.upper) << ',' << f.distribution.str() << '\n';
            std::cout << "type " << static_cast<int>(f.type) << " (" << to_string(f.type) << ")  alpha "
                      << fmt(f.fit->smoothing, 3) << "  forecast " << fmt(f.fit->point_forecast) << "  rmse "
                      << fmt(f.fit->rmse) << "  PI" << to_string(level) << " [" << fmt(f.interval.lower) << ", "
                      << fmt(f.interval.upper) << "]  " << f.distribution.str() << '\n';
        }
    }
    if (!a.csv.empty()) write_file(a.csv, csv.str());
    return 0;
}

// plan --------------------------------------------------------------------

struct PlanArgs {
    std::string mode = "stochastic";
    int week = 8;
    std::string pi = "80";
    int scenarios = 30;
    std::uint64_t seed = 1;
    std::string allocation;
    bool render = false;
    std::string json;
    std::string csv;
    bool no_timing = false;
};

int run_plan(Common& common, const PlanArgs& a) {
    const auto s = settings_of(common);
    const CohortPolicy policy = parse_policy(common.policy);
    const ClinicConfig& config = s.clinic(policy);
    const auto history = history_of(common);
    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&]() -> std::optional<double> {
        if (a.no_timing) return std::nullopt;
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };
    const RunMeta meta_base{"plan", std::nullopt};

    DaySolver solver(policy, s.weights, config);
    std::vector<DayResult> days;
    std::optional<Allocation> fixed;
    if (!a.allocation.empty()) fixed = Allocation::create(policy, config, cli::parse_int_list(a.allocation));

    if (a.mode == "realized") {
        const ScenarioSet realized = realized_scenario(history, a.week, config.days_per_week);
        OptimizeResult r = [&] {
            if (!fixed) return optimize(solver, realized, {common.threads, true});
            FixedEvaluation ev = evaluate_fixed(solver, *fixed, realized);
            return OptimizeResult{*fixed, ev.expected_cost, std::move(ev.per_scenario), ev.expected_overlaps, 1, 0};
        }();
        days = schedule_week(solver, r.allocation, complete_week(history, a.week, config.days_per_week));
        const ScheduleCost& c = r.per_scenario.front();
        std::cout << "policy " << to_string(policy) << "  week " << a.week << "  realized demand\n"
                  << "allocation " << r.allocation.str() << (fixed ? " (fixed)" : " (optimal)") << '\n'
                  << "cost " << format_thousands(c.total) << "  overlaps " << overlaps_text(c) << '\n';
        RunMeta meta = meta_base;
        meta.elapsed_seconds = elapsed();
        if (!a.json.empty())
            write_file(a.json, optimize_report_json(policy, realized, r, s.weights, config, meta));
        if (!a.csv.empty()) write_file(a.csv, per_scenario_csv(realized, r.per_scenario));
        if (a.render) std::cout << '\n' << render_week(days, r.allocation, policy, config, s.weights);
        return 0;
    }
    if (a.mode != "stochastic") throw ValidationError("mode must be 'stochastic' or 'realized'");
    if (fixed) throw ValidationError("--allocation applies to realized mode only");

    PlanRequest rq;
    rq.target_week = a.week;
    rq.level = parse_pi_level(a.pi);
    rq.scenarios = a.scenarios;
    rq.seed = a.seed;
    rq.policy = policy;
    rq.config = config;
    rq.weights = s.weights;
    rq.chronic = s.chronic;
    rq.threads = common.threads;
    const PlanReport report = plan_then_realize(history, rq);
    const auto& e = report.plan.expected_overlaps;
    std::cout << "policy " << to_string(policy) << "  week " << a.week << "  PI" << to_string(rq.level) << "  "
              << rq.scenarios << " scenarios  seed " << rq.seed << '\n'
              << "allocation " << report.plan.allocation.str() << '\n'
              << "expected cost " << fmt(report.plan.expected_cost) << "  expected overlaps "
              << overlaps_text(e.q, e.g, e.w, 2) << '\n'
              << "realized cost " << format_thousands(report.realized.total) << "  realized overlaps "
              << overlaps_text(report.realized) << '\n';
    RunMeta meta = meta_base;
    meta.elapsed_seconds = elapsed();
    if (!a.json.empty()) write_file(a.json, plan_report_json(report, meta));
    if (!a.csv.empty()) write_file(a.csv, per_scenario_csv(report.scenarios, report.plan.per_scenario));
    if (a.render)
        std::cout << '\n' << render_week(report.realized_days, report.plan.allocation, policy, config, s.weights);
    return 0;
}

// render ------------------------------------------------------------------

struct RenderArgs {
    int week = 5;
    int day = 0;
    std::string allocation;
    std::string csv;
};

int run_render(Common& common, const RenderArgs& a) {
    const auto s = settings_of(common);
    const CohortPolicy policy = parse_policy(common.policy);
    const ClinicConfig& config = s.clinic(policy);
    const auto history = history_of(common);
    if (a.day < 0 || a.day > config.days_per_week)
        throw ValidationError("day must be in 1.." + std::to_string(config.days_per_week));

    DaySolver solver(policy, s.weights, config);
    const Allocation alloc = a.allocation.empty()
                                 ? optimize(solver, realized_scenario(history, a.week, config.days_per_week),
                                            {common.threads, true})
                                       .allocation
                                 : Allocation::create(policy, config, cli::parse_int_list(a.allocation));
    auto days = schedule_week(solver, alloc, complete_week(history, a.week, config.days_per_week));
    if (a.day > 0) {
        const DayResult one = days[static_cast<std::size_t>(a.day - 1)];
        days.assign(1, one);
        std::cout << "week " << a.week << " day " << a.day << "  allocation " << alloc.str() << '\n'
                  << render_day(one.schedule, alloc, policy, config, s.weights);
    } else {
        std::cout << "week " << a.week << '\n' << render_week(days, alloc, policy, config, s.weights);
    }
    if (!a.csv.empty()) write_file(a.csv, schedule_cells_csv(days, alloc, policy));
    return 0;
}

// reproduce ---------------------------------------------------------------

struct ReproduceArgs {
    std::string table = "all";
    int scenarios = 30;
    std::uint64_t seed = 1;
    std::string out_dir;
};

struct Checks {
    const char* label;
    int failed = 0;
    int passed = 0;

    void expect(bool ok, const std::string& what, const std::string& detail = {}) {
        (ok ? passed : failed) += 1;
        if (!ok) std::cerr << label << ' ' << what << (detail.empty() ? "" : ": " + detail) << '\n';
    }
};

std::string got_want(double got, double want) {
    std::ostringstream os;
    os << "got " << got << ", expected " << want;
    return os.str();
}

void emit(const ReproduceArgs& a, const std::string& name, const std::string& csv) {
    std::cout << "# " << name << '\n' << csv << '\n';
    if (!a.out_dir.empty()) write_file((fs::path(a.out_dir) / (name + ".csv")).string(), csv);
}

void check_table4(const ComparisonTable& t, Checks& c) {
    namespace cs = case_study;
    for (std::size_t i = 0; i < t.rows.size() && i < cs::kHospital.size(); ++i) {
        const auto& r = t.rows[i];
        const auto& h = cs::kHospital[i];
        const std::string wk = "table4 week " + std::to_string(r.week);
        const OverlapTally want{h.q, h.g, h.w};
        c.expect(r.hospital.overlaps() == want, wk + " hospital overlaps");
        c.expect(r.hospital.total == h.cost, wk + " hospital cost", got_want(r.hospital.total, h.cost));
        c.expect(r.optimal.total == cs::kThreeUnitOptimal[i].cost, wk + " optimal cost",
                 got_want(r.optimal.total, cs::kThreeUnitOptimal[i].cost));
    }
    c.expect(t.hospital_total.total == cs::kHospitalTotal, "table4 hospital total",
             got_want(t.hospital_total.total, cs::kHospitalTotal));
    c.expect(t.optimal_total.total == cs::kThreeUnitOptimalTotal, "table4 optimal total",
             got_want(t.optimal_total.total, cs::kThreeUnitOptimalTotal));
}

void check_table6(const PolicyTable& t, Checks& c) {
    namespace cs = case_study;
    for (std::size_t i = 0; i < t.rows.size() && i < cs::kTwoUnitOptimal.size(); ++i) {
        const auto& r = t.rows[i];
        c.expect(r.two.total == cs::kTwoUnitOptimal[i].cost, "table6 week " + std::to_string(r.week) + " cost",
                 got_want(r.two.total, cs::kTwoUnitOptimal[i].cost));
    }
    c.expect(t.two_total.total == cs::kTwoUnitOptimalTotal, "table6 total",
             got_want(t.two_total.total, cs::kTwoUnitOptimalTotal));
    c.expect(t.two_total.overlap_12x3 == cs::kTwoUnitOverlapTotals[0] &&
                 t.two_total.overlap_12x4 == cs::kTwoUnitOverlapTotals[1],
             "table6 overlap totals");
}

std::string table3_csv(const DemandHistory& history, int dpw, Checks& soft) {
    std::ostringstream os;
    os << "week,type,pi,lower,upper,printed_lower,printed_upper,within_0.15\n";
    for (int week = 6; week <= 8; ++week)
        for (PiLevel level : {PiLevel::PI80, PiLevel::PI90})
            for (const auto& f : forecast_week(history, week, level, dpw)) {
                const auto p = case_study::printed_interval(week, f.type, level);
                const bool ok = std::abs(f.interval.lower - p.lower) <= 0.15 &&
                                std::abs(f.interval.upper - p.upper) <= 0.15;
                soft.expect(ok, "table3 week " + std::to_string(week) + " type " +
                                    std::to_string(static_cast<int>(f.type)) + " PI" + std::string(to_string(level)),
                            "[" + fmt(f.interval.lower) + ", " + fmt(f.interval.upper) + "] vs printed [" +
                                fmt(p.lower) + ", " + fmt(p.upper) + "]");
                os << week << ',' << static_cast<int>(f.type) << ',' << to_string(level) << ','
                   << fmt(f.interval.lower) << ',' << fmt(f.interval.upper) << ',' << fmt(p.lower) << ','
                   << fmt(p.upper) << ',' << (ok ? "yes" : "no") << '\n';
            }
    return os.str();
}

std::string table8_csv(Checks& c) {
    std::ostringstream os;
    os << "type,pi,value,mass,printed_mass\n";
    for (const auto& m : case_study::kPrintedMasses) {
        const IntDist d = discretize_uniform(case_study::printed_interval(8, m.type, m.level));
        double got = 0.0;
        for (const auto& [v, p] : d.support)
            if (v == m.value) got = p;
        c.expect(std::abs(got - m.mass) <= 0.015,
                 "table8 type " + std::to_string(static_cast<int>(m.type)) + " PI" + std::string(to_string(m.level)) +
                     " value " + std::to_string(m.value),
                 got_want(got, m.mass));
        os << static_cast<int>(m.type) << ',' << to_string(m.level) << ',' << m.value << ',' << fmt(got, 3) << ','
           << fmt(m.mass, 3) << '\n';
    }
    return os.str();
}

std::vector<PlanReport> stochastic_table(const DemandHistory& history, const cli::Settings& s, CohortPolicy policy,
                                         const ReproduceArgs& a, int threads) {
    std::vector<PlanReport> out;
    for (int week = 6; week <= 8; ++week)
        for (PiLevel level : {PiLevel::PI80, PiLevel::PI90}) {
            PlanRequest rq;
            rq.target_week = week;
            rq.level = level;
            rq.scenarios = a.scenarios;
            rq.seed = a.seed;
            rq.policy = policy;
            rq.config = s.clinic(policy);
            rq.weights = s.weights;
            rq.chronic = s.chronic;
            rq.threads = threads;
            out.push_back(plan_then_realize(history, rq));
        }
    return out;
}

int run_reproduce(Common& common, const ReproduceArgs& a) {
    static const std::vector<std::string> kTables{"3", "4", "5", "6", "7", "8", "util", "all"};
    if (std::find(kTables.begin(), kTables.end(), a.table) == kTables.end())
        throw ValidationError("unknown table '" + a.table + "'");
    const auto s = settings_of(common);
    const auto history = history_of(common);
    if (!a.out_dir.empty()) fs::create_directories(a.out_dir);
    auto want = [&](const char* t) { return a.table == "all" || a.table == t; };

    std::vector<int> weeks(case_study::kWeeks);
    std::iota(weeks.begin(), weeks.end(), 1);
    const Allocation hospital = Allocation::create(
        CohortPolicy::ThreeUnit, s.three,
        std::vector<int>(case_study::kHospitalAllocation.begin(), case_study::kHospitalAllocation.end()));
    Checks exact{"MISMATCH"}, soft{"OFF"};

    if (want("3")) emit(a, "table3", table3_csv(history, s.three.days_per_week, soft));
    if (want("4") || want("util")) {
        const auto t = hospital_vs_optimal(history, weeks, hospital, CohortPolicy::ThreeUnit, s.three, s.weights);
        if (want("4")) {
            emit(a, "table4", comparison_csv(t));
            check_table4(t, exact);
        }
        if (want("util")) {
            const auto u = utilization_series(history, t, hospital, CohortPolicy::ThreeUnit, s.three, s.weights);
            emit(a, "utilization", utilization_csv(u));
        }
    }
    if (want("5"))
        emit(a, "table5", plan_reports_csv(stochastic_table(history, s, CohortPolicy::ThreeUnit, a, common.threads)));
    if (want("6")) {
        const auto t = compare_policies(history, weeks, s.three, s.two, s.weights);
        emit(a, "table6", policy_csv(t));
        check_table6(t, exact);
    }
    if (want("7"))
        emit(a, "table7", plan_reports_csv(stochastic_table(history, s, CohortPolicy::TwoUnit, a, common.threads)));
    if (want("8")) emit(a, "table8", table8_csv(exact));

    std::cout << "# run seed=" << a.seed << " scenarios=" << a.scenarios << " generator=" << kScenarioGenerator
              << " version=" << library_version() << '\n';
    std::cerr << "reproduction checks: " << exact.passed << " passed, " << exact.failed << " failed";
    if (soft.passed + soft.failed > 0) std::cerr << "; soft checks: " << soft.passed << " passed, " << soft.failed << " off";
    std::cerr << '\n';
    return exact.failed == 0 ? 0 : kExitValidation;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Capacity allocation and session scheduling for a cohorted dialysis clinic"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", std::string(library_version()));

    Common common;
    ForecastArgs fa;
    PlanArgs pa;
    RenderArgs ra;
    ReproduceArgs xa;

    auto* forecast = app.add_subcommand("forecast", "SES fits, prediction intervals and demand distributions");
    add_common(*forecast, common);
    forecast->add_option("--week", fa.week, "Target week (trained on all earlier weeks)");
    forecast->add_option("--csv", fa.csv, "Write the forecast rows as CSV");

    auto* plan = app.add_subcommand("plan", "Choose a machine allocation");
    add_common(*plan, common);
    plan->add_option("--policy", common.policy, "three-unit | two-unit");
    plan->add_option("--mode", pa.mode, "stochastic | realized");
    plan->add_option("--week", pa.week, "Target week");
    plan->add_option("--pi", pa.pi, "Prediction interval level: 80 | 90");
    plan->add_option("--scenarios", pa.scenarios, "Sampled scenarios")->check(CLI::PositiveNumber);
    plan->add_option("--seed", pa.seed, "Scenario seed");
    plan->add_option("--allocation", pa.allocation, "Evaluate a fixed allocation, e.g. 7,5,2 (realized mode)");
    plan->add_flag("--render", pa.render, "Print the target week's daily schedules");
    plan->add_option("--json", pa.json, "Write a JSON report");
    plan->add_option("--csv", pa.csv, "Write per-scenario costs as CSV");
    plan->add_flag("--no-timing", pa.no_timing, "Leave elapsed time out of the JSON report");

    auto* render = app.add_subcommand("render", "Print daily schedules of a realized week");
    add_common(*render, common);
    render->add_option("--policy", common.policy, "three-unit | two-unit");
    render->add_option("--week", ra.week, "Week");
    render->add_option("--day", ra.day, "Single day 1..6 (default: whole week)");
    render->add_option("--allocation", ra.allocation, "Allocation (default: optimal for the week)");
    render->add_option("--csv", ra.csv, "Write cells as day,session,unit,machine_slot,patient_type");

    auto* reproduce = app.add_subcommand("reproduce", "Case-study tables as CSV with reproduction checks");
    add_common(*reproduce, common);
    reproduce->add_option("--table", xa.table, "3 | 4 | 5 | 6 | 7 | 8 | util | all");
    reproduce->add_option("--scenarios", xa.scenarios, "Scenarios for tables 5 and 7")->check(CLI::PositiveNumber);
    reproduce->add_option("--seed", xa.seed, "Seed for tables 5 and 7");
    reproduce->add_option("--out-dir", xa.out_dir, "Also write each table to <dir>/<table>.csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (*forecast) return run_forecast(common, fa);
        if (*plan) return run_plan(common, pa);
        if (*render) return run_render(common, ra);
        if (*reproduce) return run_reproduce(common, xa);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitInternal;
}
