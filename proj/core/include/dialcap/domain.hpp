#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dialcap {

enum class PatientType : int { Acute = 1, Chronic = 2, Infected = 3, Suspected = 4 };

inline constexpr std::size_t kNumPatientTypes = 4;
inline constexpr std::array<PatientType, kNumPatientTypes> kPatientTypes{
    PatientType::Acute, PatientType::Chronic, PatientType::Infected, PatientType::Suspected};

constexpr std::size_t type_index(PatientType t) noexcept { return static_cast<std::size_t>(t) - 1; }
std::string_view to_string(PatientType t);

// Unit indices are 0-based in memory: 0 standard, 1 isolated, 2 quarantine.
enum class CohortPolicy { ThreeUnit, TwoUnit };

constexpr int unit_count(CohortPolicy p) noexcept { return p == CohortPolicy::ThreeUnit ? 3 : 2; }

constexpr int unit_of(CohortPolicy p, PatientType t) noexcept {
    switch (t) {
    case PatientType::Acute:
    case PatientType::Chronic: return 0;
    case PatientType::Infected: return 1;
    case PatientType::Suspected: return p == CohortPolicy::ThreeUnit ? 2 : 1;
    }
    return 0;
}

std::string_view to_string(CohortPolicy p);
// Accepts "three-unit"/"3" and "two-unit"/"2". Throws ValidationError otherwise.
CohortPolicy parse_policy(std::string_view text);

struct ClinicConfig {
    int total_machines = 14;
    std::vector<int> unit_caps{11, 8, 5};
    int sessions_per_day = 4;
    int days_per_week = 6;

    // Case-study clinic: 14 machines, caps (11,8,5) or (11,8), 4 sessions, Mon..Sat.
    static ClinicConfig defaults(CohortPolicy p);
    void validate(CohortPolicy p) const;

    bool operator==(const ClinicConfig&) const = default;
};

struct PenaltyWeights {
    double alpha1 = 1000.0; // standard x infected, per patient
    double alpha2 = 1000.0; // standard x suspected, per patient
    double alpha3 = 100.0;  // infected x suspected, per patient
    std::array<double, kNumPatientTypes> pi{100000.0, 100000.0, 100000.0, 100000.0};
    double epsilon = 2.0; // per marked session

    double unserved(PatientType t) const { return pi[type_index(t)]; }
    PenaltyWeights scaled(double factor) const;
    void validate() const;

    bool operator==(const PenaltyWeights&) const = default;
};

struct DayDemand {
    std::array<int, kNumPatientTypes> counts{};

    int operator[](PatientType t) const { return counts[type_index(t)]; }
    int& operator[](PatientType t) { return counts[type_index(t)]; }
    int total() const;
    bool empty() const { return total() == 0; }

    auto operator<=>(const DayDemand&) const = default;
};

struct Scenario {
    double probability = 1.0;
    std::vector<DayDemand> days;
};

struct ScenarioSet {
    std::vector<Scenario> scenarios;
    // Replay metadata; empty generator for realized (non-sampled) sets.
    std::string generator;
    std::uint64_t seed = 0;

    std::size_t size() const { return scenarios.size(); }
    void validate(int days_per_week) const;
};

// Machines per unit. Only obtainable through create(), which enforces the
// per-unit caps and the clinic-wide machine total.
class Allocation {
public:
    static Allocation create(CohortPolicy p, const ClinicConfig& config, std::vector<int> machines);

    const std::vector<int>& machines() const noexcept { return machines_; }
    int operator[](int unit) const { return machines_.at(static_cast<std::size_t>(unit)); }
    int units() const noexcept { return static_cast<int>(machines_.size()); }
    int total() const;
    std::string str() const; // "(7,5,2)"

    auto operator<=>(const Allocation&) const = default;

private:
    explicit Allocation(std::vector<int> machines) : machines_(std::move(machines)) {}
    std::vector<int> machines_;
};

struct DaySchedule {
    int sessions = 0;
    std::array<std::vector<int>, kNumPatientTypes> assigned; // [type][session]
    std::vector<std::vector<bool>> marks;                     // [unit][session]
    std::array<int, kNumPatientTypes> unserved{};
    // Two-unit only: last session (0-based) of the isolated unit's suspected
    // phase. Isolated sessions after it belong to the infected phase.
    std::optional<int> type4_cutoff;

    static DaySchedule empty(CohortPolicy p, int sessions);

    int x(PatientType t, int session) const { return assigned[type_index(t)][static_cast<std::size_t>(session)]; }
    bool marked(int unit, int session) const {
        return marks[static_cast<std::size_t>(unit)][static_cast<std::size_t>(session)];
    }
    int unit_load(CohortPolicy p, int unit, int session) const;
    int sessions_marked() const;
    // Two-unit: whether an isolated-unit session is in the suspected phase.
    bool suspected_phase(int session) const { return type4_cutoff && session <= *type4_cutoff; }

    bool operator==(const DaySchedule&) const = default;
};

struct OverlapTally {
    int q = 0; // standard x infected patients
    int g = 0; // standard x suspected patients
    int w = 0; // infected x suspected patients

    OverlapTally& operator+=(const OverlapTally& o) {
        q += o.q;
        g += o.g;
        w += o.w;
        return *this;
    }
    bool operator==(const OverlapTally&) const = default;
};

struct ScheduleCost {
    int overlap_12x3 = 0;
    int overlap_12x4 = 0;
    int overlap_3x4 = 0;
    double unserved_penalty = 0.0;
    int sessions_used = 0;
    double total = 0.0;

    static ScheduleCost compose(const OverlapTally& overlaps, double unserved_penalty, int sessions_used,
                                const PenaltyWeights& w);
    double recomputed_total(const PenaltyWeights& w) const;
    OverlapTally overlaps() const { return {overlap_12x3, overlap_12x4, overlap_3x4}; }

    // Componentwise sum; total is re-added, so sum order matters for bit-exactness.
    ScheduleCost& operator+=(const ScheduleCost& o);
    bool operator==(const ScheduleCost&) const = default;
};

// Discrete distribution over non-negative integers, values strictly increasing.
struct IntDist {
    std::vector<std::pair<int, double>> support;

    static IntDist point(int value);
    double mean() const;
    void validate() const;
    std::string str() const; // "2:0.191;3:0.303"
};

struct Violation {
    std::string constraint;
    std::string detail;
};

// Total check of a day schedule against every model constraint; returns the
// first violation found, or nullopt when the schedule is feasible.
std::optional<Violation> validate_schedule(CohortPolicy p, const ClinicConfig& config, const Allocation& alloc,
                                           const DayDemand& demand, const DaySchedule& schedule);

std::string format_thousands(double value); // 14612 -> "14,612"

} // namespace dialcap
