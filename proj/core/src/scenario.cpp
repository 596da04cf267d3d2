#include "dialcap/scenario.hpp"

#include "dialcap/error.hpp"

#include <random>
#include <sstream>

namespace dialcap {

int sample(const IntDist& dist, std::uint64_t raw_draw) {
    const double u = static_cast<double>(raw_draw >> 11) * 0x1.0p-53;
    double cum = 0.0;
    for (const auto& [value, mass] : dist.support) {
        cum += mass;
        if (u < cum) return value;
    }
    return dist.support.back().first;
}

ScenarioSet build_scenario_set(const DemandDists& dists, const ChronicRegime& chronic, int n, std::uint64_t seed,
                               int days_per_week) {
    if (n < 1) throw ValidationError("scenario count must be >= 1");
    dists.acute.validate();
    dists.infected.validate();
    dists.suspected.validate();

    std::mt19937_64 gen(seed);
    ScenarioSet set;
    set.generator = std::string(kScenarioGenerator);
    set.seed = seed;
    set.scenarios.reserve(static_cast<std::size_t>(n));
    const double p = 1.0 / n;
    for (int k = 0; k < n; ++k) {
        Scenario sc;
        sc.probability = p;
        for (int d = 1; d <= days_per_week; ++d) {
            DayDemand day;
            day[PatientType::Acute] = sample(dists.acute, gen());
            day[PatientType::Infected] = sample(dists.infected, gen());
            day[PatientType::Suspected] = sample(dists.suspected, gen());
            day[PatientType::Chronic] = chronic_demand((d - 1) % 6 + 1, chronic);
            sc.days.push_back(day);
        }
        set.scenarios.push_back(std::move(sc));
    }
    return set;
}

ScenarioSet realized_scenario(const DemandHistory& history, int week, int days_per_week) {
    ScenarioSet set;
    set.scenarios.push_back(Scenario{1.0, complete_week(history, week, days_per_week)});
    return set;
}

std::string write_scenarios_csv(const ScenarioSet& set) {
    std::ostringstream os;
    os.precision(17);
    os << "scenario,day,type1,type2,type3,type4,probability\n";
    for (std::size_t k = 0; k < set.scenarios.size(); ++k) {
        const auto& sc = set.scenarios[k];
        for (std::size_t d = 0; d < sc.days.size(); ++d) {
            os << k + 1 << ',' << d + 1;
            for (int c : sc.days[d].counts) os << ',' << c;
            os << ',' << sc.probability << '\n';
        }
    }
    return os.str();
}

} // namespace dialcap
