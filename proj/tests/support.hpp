#pragma once

#include <dialcap/domain.hpp>
#include <dialcap/ingest.hpp>

#include <random>

namespace dialcap::test {

inline const DemandHistory& clinic() {
    static const DemandHistory h = load_demand_csv(DIALCAP_TEST_DATA);
    return h;
}

inline Allocation alloc3(int a, int b, int c) {
    return Allocation::create(CohortPolicy::ThreeUnit, ClinicConfig::defaults(CohortPolicy::ThreeUnit), {a, b, c});
}

inline Allocation alloc2(int a, int b) {
    return Allocation::create(CohortPolicy::TwoUnit, ClinicConfig::defaults(CohortPolicy::TwoUnit), {a, b});
}

inline DayDemand demand(int a, int b, int c, int d) { return DayDemand{{a, b, c, d}}; }

// Small instance within reach of the exhaustive oracle.
struct Tiny {
    CohortPolicy policy;
    ClinicConfig config;
    Allocation alloc;
    DayDemand demand;
    PenaltyWeights weights;
};

inline ClinicConfig tiny_config(CohortPolicy p, int machines, int sessions) {
    ClinicConfig c;
    c.total_machines = machines;
    c.sessions_per_day = sessions;
    c.days_per_week = 1;
    c.unit_caps.assign(static_cast<std::size_t>(unit_count(p)), machines);
    return c;
}

inline Tiny random_tiny(std::mt19937_64& rng, CohortPolicy p) {
    const int machines = 1 + static_cast<int>(rng() % 4);
    const int sessions = 2 + static_cast<int>(rng() % 3);
    ClinicConfig c = tiny_config(p, machines, sessions);
    std::vector<int> r(static_cast<std::size_t>(unit_count(p)));
    int left = machines;
    for (int& x : r) {
        x = static_cast<int>(rng() % static_cast<std::uint64_t>(left + 1));
        left -= x;
    }
    PenaltyWeights w;
    w.alpha1 = 1.0 + static_cast<double>(rng() % 1000);
    w.alpha2 = 1.0 + static_cast<double>(rng() % 1000);
    w.alpha3 = 1.0 + static_cast<double>(rng() % 1000);
    w.epsilon = static_cast<double>(rng() % 5);
    const double top = std::max({w.alpha1, w.alpha2, w.alpha3});
    for (double& v : w.pi) v = 10.0 * top * static_cast<double>(1 + rng() % 5);
    DayDemand d;
    const int total = static_cast<int>(rng() % 13);
    for (int k = 0; k < total; ++k) d.counts[rng() % 4] += 1;
    return Tiny{p, c, Allocation::create(p, c, r), d, w};
}

} // namespace dialcap::test
