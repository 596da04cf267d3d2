#include "dialcap/domain.hpp"

#include "dialcap/error.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace dialcap {

std::string_view to_string(PatientType t) {
    switch (t) {
    case PatientType::Acute: return "acute";
    case PatientType::Chronic: return "chronic";
    case PatientType::Infected: return "infected";
    case PatientType::Suspected: return "suspected";
    }
    return "?";
}

std::string_view to_string(CohortPolicy p) { return p == CohortPolicy::ThreeUnit ? "three-unit" : "two-unit"; }

CohortPolicy parse_policy(std::string_view text) {
    if (text == "three-unit" || text == "3" || text == "three") return CohortPolicy::ThreeUnit;
    if (text == "two-unit" || text == "2" || text == "two") return CohortPolicy::TwoUnit;
    throw ValidationError("unknown cohort policy '" + std::string(text) + "'");
}

ClinicConfig ClinicConfig::defaults(CohortPolicy p) {
    ClinicConfig c;
    c.unit_caps = p == CohortPolicy::ThreeUnit ? std::vector<int>{11, 8, 5} : std::vector<int>{11, 8};
    return c;
}

void ClinicConfig::validate(CohortPolicy p) const {
    if (total_machines < 1) throw ValidationError("total_machines must be >= 1");
    if (sessions_per_day < 1) throw ValidationError("sessions_per_day must be >= 1");
    if (days_per_week < 1) throw ValidationError("days_per_week must be >= 1");
    if (static_cast<int>(unit_caps.size()) != unit_count(p))
        throw ValidationError("unit_caps has " + std::to_string(unit_caps.size()) + " entries, policy " +
                              std::string(to_string(p)) + " needs " + std::to_string(unit_count(p)));
    for (int c : unit_caps)
        if (c < 0) throw ValidationError("unit caps must be >= 0");
}

PenaltyWeights PenaltyWeights::scaled(double factor) const {
    PenaltyWeights w = *this;
    w.alpha1 *= factor;
    w.alpha2 *= factor;
    w.alpha3 *= factor;
    for (double& v : w.pi) v *= factor;
    w.epsilon *= factor;
    return w;
}

void PenaltyWeights::validate() const {
    auto ok = [](double v) { return std::isfinite(v) && v >= 0.0; };
    bool good = ok(alpha1) && ok(alpha2) && ok(alpha3) && ok(epsilon);
    for (double v : pi) good = good && ok(v);
    if (!good) throw ValidationError("penalty weights must be finite and >= 0");
}

int DayDemand::total() const { return std::accumulate(counts.begin(), counts.end(), 0); }

void ScenarioSet::validate(int days_per_week) const {
    if (scenarios.empty()) throw ValidationError("scenario set is empty");
    double sum = 0.0;
    for (const auto& s : scenarios) {
        if (!(s.probability > 0.0) || s.probability > 1.0)
            throw ValidationError("scenario probability must lie in (0,1]");
        if (static_cast<int>(s.days.size()) != days_per_week)
            throw ValidationError("scenario has " + std::to_string(s.days.size()) + " days, expected " +
                                  std::to_string(days_per_week));
        for (const auto& d : s.days)
            for (int c : d.counts)
                if (c < 0) throw ValidationError("scenario demand must be >= 0");
        sum += s.probability;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw ValidationError("scenario probabilities do not sum to 1");
}

Allocation Allocation::create(CohortPolicy p, const ClinicConfig& config, std::vector<int> machines) {
    config.validate(p);
    if (static_cast<int>(machines.size()) != unit_count(p))
        throw ValidationError("allocation needs " + std::to_string(unit_count(p)) + " units, got " +
                              std::to_string(machines.size()));
    int total = 0;
    for (std::size_t j = 0; j < machines.size(); ++j) {
        if (machines[j] < 0) throw ValidationError("allocation entries must be >= 0");
        if (machines[j] > config.unit_caps[j])
            throw ValidationError("unit " + std::to_string(j + 1) + " gets " + std::to_string(machines[j]) +
                                  " machines, cap is " + std::to_string(config.unit_caps[j]));
        total += machines[j];
    }
    if (total > config.total_machines)
        throw ValidationError("allocation uses " + std::to_string(total) + " machines, clinic has " +
                              std::to_string(config.total_machines));
    return Allocation(std::move(machines));
}

int Allocation::total() const { return std::accumulate(machines_.begin(), machines_.end(), 0); }

std::string Allocation::str() const {
    std::string out = "(";
    for (std::size_t j = 0; j < machines_.size(); ++j) {
        if (j) out += ",";
        out += std::to_string(machines_[j]);
    }
    return out + ")";
}

DaySchedule DaySchedule::empty(CohortPolicy p, int sessions) {
    DaySchedule d;
    d.sessions = sessions;
    for (auto& row : d.assigned) row.assign(static_cast<std::size_t>(sessions), 0);
    d.marks.assign(static_cast<std::size_t>(unit_count(p)), std::vector<bool>(static_cast<std::size_t>(sessions)));
    return d;
}

int DaySchedule::unit_load(CohortPolicy p, int unit, int session) const {
    int load = 0;
    for (PatientType t : kPatientTypes)
        if (unit_of(p, t) == unit) load += x(t, session);
    return load;
}

int DaySchedule::sessions_marked() const {
    int n = 0;
    for (const auto& row : marks)
        for (bool m : row) n += m ? 1 : 0;
    return n;
}

ScheduleCost ScheduleCost::compose(const OverlapTally& overlaps, double unserved_penalty, int sessions_used,
                                   const PenaltyWeights& w) {
    ScheduleCost c;
    c.overlap_12x3 = overlaps.q;
    c.overlap_12x4 = overlaps.g;
    c.overlap_3x4 = overlaps.w;
    c.unserved_penalty = unserved_penalty;
    c.sessions_used = sessions_used;
    c.total = c.recomputed_total(w);
    return c;
}

double ScheduleCost::recomputed_total(const PenaltyWeights& w) const {
    return w.alpha1 * overlap_12x3 + w.alpha2 * overlap_12x4 + w.alpha3 * overlap_3x4 + unserved_penalty +
           w.epsilon * sessions_used;
}

ScheduleCost& ScheduleCost::operator+=(const ScheduleCost& o) {
    overlap_12x3 += o.overlap_12x3;
    overlap_12x4 += o.overlap_12x4;
    overlap_3x4 += o.overlap_3x4;
    unserved_penalty += o.unserved_penalty;
    sessions_used += o.sessions_used;
    total += o.total;
    return *this;
}

IntDist IntDist::point(int value) { return IntDist{{{value, 1.0}}}; }

double IntDist::mean() const {
    double m = 0.0;
    for (const auto& [v, p] : support) m += v * p;
    return m;
}

void IntDist::validate() const {
    if (support.empty()) throw ValidationError("distribution has empty support");
    double sum = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i) {
        const auto& [v, p] = support[i];
        if (v < 0) throw ValidationError("distribution value below 0");
        if (!(p > 0.0)) throw ValidationError("distribution mass must be > 0");
        if (i > 0 && v <= support[i - 1].first) throw ValidationError("distribution values must increase");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw ValidationError("distribution masses do not sum to 1");
}

std::string IntDist::str() const {
    std::ostringstream os;
    os.precision(3);
    os << std::fixed;
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (i) os << ';';
        os << support[i].first << ':' << support[i].second;
    }
    return os.str();
}

namespace {

std::string at(PatientType t, int s) { return std::string(to_string(t)) + " session " + std::to_string(s + 1); }

} // namespace

std::optional<Violation> validate_schedule(CohortPolicy p, const ClinicConfig& config, const Allocation& alloc,
                                           const DayDemand& demand, const DaySchedule& sch) {
    const int S = sch.sessions;
    const int units = unit_count(p);
    if (S != config.sessions_per_day)
        return Violation{"session-count", std::to_string(S) + " sessions, config has " +
                                              std::to_string(config.sessions_per_day)};
    for (const auto& row : sch.assigned)
        if (static_cast<int>(row.size()) != S) return Violation{"shape", "assignment row length"};
    if (static_cast<int>(sch.marks.size()) != units || alloc.units() != units)
        return Violation{"shape", "unit count"};
    for (const auto& row : sch.marks)
        if (static_cast<int>(row.size()) != S) return Violation{"shape", "mark row length"};

    for (PatientType t : kPatientTypes) {
        int served = 0;
        for (int s = 0; s < S; ++s) {
            if (sch.x(t, s) < 0) return Violation{"integrality", at(t, s) + " negative"};
            served += sch.x(t, s);
        }
        const int f = sch.unserved[type_index(t)];
        if (f < 0) return Violation{"integrality", std::string(to_string(t)) + " unserved negative"};
        if (served + f != demand[t])
            return Violation{"demand-balance", std::string(to_string(t)) + ": served " + std::to_string(served) +
                                                   " + unserved " + std::to_string(f) + " != demand " +
                                                   std::to_string(demand[t])};
    }

    for (int j = 0; j < units; ++j)
        for (int s = 0; s < S; ++s)
            if (sch.unit_load(p, j, s) > alloc[j])
                return Violation{"unit-capacity", "unit " + std::to_string(j + 1) + " session " +
                                                      std::to_string(s + 1) + " load exceeds " +
                                                      std::to_string(alloc[j])};

    for (PatientType t : kPatientTypes)
        for (int s = 0; s < S; ++s)
            if (sch.x(t, s) > 0 && !sch.marked(unit_of(p, t), s))
                return Violation{"mark-coverage", at(t, s) + " has patients but unit is not marked"};

    for (int s = 1; s < S; ++s)
        if (sch.marked(0, s) && !sch.marked(0, s - 1))
            return Violation{"standard-prefix", "standard unit session " + std::to_string(s + 1) +
                                                    " marked after an idle session"};

    for (int j = 1; j < units; ++j) {
        int first = -1, last = -1, count = 0;
        for (int s = 0; s < S; ++s)
            if (sch.marked(j, s)) {
                if (first < 0) first = s;
                last = s;
                ++count;
            }
        if (count > 0 && last - first + 1 != count)
            return Violation{"contiguous-block", "unit " + std::to_string(j + 1) + " sessions are not consecutive"};
    }

    if (p == CohortPolicy::ThreeUnit) {
        if (sch.type4_cutoff) return Violation{"phase-split", "three-unit schedule carries a suspected cutoff"};
    } else {
        if (sch.type4_cutoff && (*sch.type4_cutoff < 0 || *sch.type4_cutoff >= S))
            return Violation{"phase-split", "cutoff outside the day"};
        for (int s = 0; s < S; ++s) {
            if (sch.x(PatientType::Suspected, s) > 0 && !sch.suspected_phase(s))
                return Violation{"suspected-before-infected", at(PatientType::Suspected, s) + " after cutoff"};
            if (sch.x(PatientType::Infected, s) > 0 && sch.suspected_phase(s))
                return Violation{"suspected-before-infected", at(PatientType::Infected, s) + " not after cutoff"};
        }
    }
    return std::nullopt;
}

std::string format_thousands(double value) {
    long long v = std::llround(value);
    const bool neg = v < 0;
    std::string digits = std::to_string(neg ? -v : v);
    std::string out;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i > 0 && (digits.size() - i) % 3 == 0) out += ',';
        out += digits[i];
    }
    return neg ? "-" + out : out;
}

} // namespace dialcap
