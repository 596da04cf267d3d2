#pragma once

#include "dialcap/domain.hpp"
#include "dialcap/forecast.hpp"
#include "dialcap/ingest.hpp"

#include <cstdint>
#include <string>
#include <string_view>

namespace dialcap {

// Demand distributions for the uncertain patient types; chronic demand
// follows the fixed regime instead.
struct DemandDists {
    IntDist acute;
    IntDist infected;
    IntDist suspected;
};

inline constexpr std::string_view kScenarioGenerator = "mt19937_64/inverse-cdf";

// Draws one value by inverse CDF from a 53-bit uniform built from the raw
// generator output, so draws are identical across standard libraries.
int sample(const IntDist& dist, std::uint64_t raw_draw);

// n equiprobable weeks; per day, acute/infected/suspected drawn i.i.d. in
// that order, chronic set by the regime for weekdays 1..days_per_week.
ScenarioSet build_scenario_set(const DemandDists& dists, const ChronicRegime& chronic, int n, std::uint64_t seed,
                               int days_per_week = 6);

// Realized demand of one complete history week as a single scenario.
ScenarioSet realized_scenario(const DemandHistory& history, int week, int days_per_week = 6);

// scenario,day,type1,type2,type3,type4,probability (1-based scenario/day).
std::string write_scenarios_csv(const ScenarioSet& set);

} // namespace dialcap
