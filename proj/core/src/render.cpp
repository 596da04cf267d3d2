#include "dialcap/render.hpp"

#include "dialcap/error.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace dialcap {

namespace {

constexpr std::array<std::string_view, 7> kDayNames{"Mon", "Tue", "Wed", "Thu", "Fri", "Sat", "Sun"};

// Type codes occupying the machines of one unit in one session, in type order.
std::vector<int> occupants(const DaySchedule& sch, CohortPolicy policy, int unit, int session) {
    std::vector<int> out;
    for (PatientType t : kPatientTypes)
        if (unit_of(policy, t) == unit)
            out.insert(out.end(), static_cast<std::size_t>(sch.x(t, session)), static_cast<int>(t));
    return out;
}

void check_shape(const DaySchedule& sch, const Allocation& alloc, CohortPolicy policy) {
    if (alloc.units() != unit_count(policy) || static_cast<int>(sch.marks.size()) != alloc.units())
        throw ValidationError("schedule, allocation and policy disagree on the unit count");
    for (int j = 0; j < alloc.units(); ++j)
        for (int s = 0; s < sch.sessions; ++s)
            if (sch.unit_load(policy, j, s) > alloc[j])
                throw ValidationError("unit " + std::to_string(j + 1) + " is over capacity");
}

} // namespace

std::vector<bool> overlap_sessions(const DaySchedule& schedule, CohortPolicy policy) {
    std::vector<bool> out(static_cast<std::size_t>(schedule.sessions), false);
    for (int s = 0; s < schedule.sessions; ++s) {
        DaySchedule one = schedule;
        for (int o = 0; o < schedule.sessions; ++o) {
            if (o == s) continue;
            for (auto& row : one.assigned) row[static_cast<std::size_t>(o)] = 0;
            for (auto&& row : one.marks) row[static_cast<std::size_t>(o)] = false;
        }
        const OverlapTally t = count_overlaps(one, policy);
        out[static_cast<std::size_t>(s)] = t.q + t.g + t.w > 0;
    }
    return out;
}

std::string render_day(const DaySchedule& schedule, const Allocation& alloc, CohortPolicy policy,
                       const ClinicConfig& config, const PenaltyWeights& weights) {
    (void)config;
    check_shape(schedule, alloc, policy);
    const auto flagged = overlap_sessions(schedule, policy);
    std::ostringstream os;

    std::vector<std::string> heads;
    std::vector<std::size_t> widths;
    for (int j = 0; j < alloc.units(); ++j) {
        heads.push_back("U" + std::to_string(j + 1) + (policy == CohortPolicy::TwoUnit && j == 1 ? "(3/4)" : ""));
        widths.push_back(std::max(heads.back().size(), static_cast<std::size_t>(std::max(1, 2 * alloc[j] - 1))));
        heads.back().resize(widths.back(), ' ');
    }

    os << "session ";
    for (const auto& h : heads) os << "| " << h << ' ';
    os << "|\n";

    for (int s = 0; s < schedule.sessions; ++s) {
        os << ' ' << (s + 1) << (flagged[static_cast<std::size_t>(s)] ? '*' : ' ') << "     ";
        for (int j = 0; j < alloc.units(); ++j) {
            const auto who = occupants(schedule, policy, j, s);
            std::string cells;
            for (int m = 0; m < alloc[j]; ++m) {
                if (m) cells += ' ';
                if (static_cast<std::size_t>(m) < who.size())
                    cells += static_cast<char>('0' + who[static_cast<std::size_t>(m)]);
                else
                    cells += schedule.marked(j, s) ? '.' : ' ';
            }
            cells.resize(widths[static_cast<std::size_t>(j)], ' ');
            os << "| " << cells << ' ';
        }
        os << '|';
        if (policy == CohortPolicy::TwoUnit && schedule.marked(1, s))
            os << (schedule.suspected_phase(s) ? " suspected phase" : " infected phase");
        os << '\n';
    }

    const ScheduleCost c = score_schedule(schedule, policy, weights);
    int unserved = 0;
    for (int u : schedule.unserved) unserved += u;
    os << "overlaps 12x3=" << c.overlap_12x3 << " 12x4=" << c.overlap_12x4 << " 3x4=" << c.overlap_3x4
       << "  unserved=" << unserved << "  marked sessions=" << c.sessions_used << '\n';
    os << "Daily penalty = " << format_thousands(c.total) << '\n';
    return os.str();
}

std::string render_week(std::span<const DayResult> days, const Allocation& alloc, CohortPolicy policy,
                        const ClinicConfig& config, const PenaltyWeights& weights) {
    std::ostringstream os;
    ScheduleCost week;
    for (std::size_t d = 0; d < days.size(); ++d) {
        os << "Day " << d + 1;
        if (d < kDayNames.size()) os << " (" << kDayNames[d] << ')';
        os << "  allocation " << alloc.str() << '\n';
        os << render_day(days[d].schedule, alloc, policy, config, weights) << '\n';
        week += score_schedule(days[d].schedule, policy, weights);
    }
    os << "Weekly penalty = " << format_thousands(week.total) << '\n';
    return os.str();
}

std::string schedule_cells_csv(std::span<const DayResult> days, const Allocation& alloc, CohortPolicy policy) {
    std::ostringstream os;
    os << "day,session,unit,machine_slot,patient_type\n";
    for (std::size_t d = 0; d < days.size(); ++d) {
        const DaySchedule& sch = days[d].schedule;
        check_shape(sch, alloc, policy);
        for (int s = 0; s < sch.sessions; ++s)
            for (int j = 0; j < alloc.units(); ++j) {
                if (!sch.marked(j, s)) continue;
                const auto who = occupants(sch, policy, j, s);
                for (int m = 0; m < alloc[j]; ++m) {
                    os << d + 1 << ',' << s + 1 << ',' << j + 1 << ',' << m + 1 << ',';
                    if (static_cast<std::size_t>(m) < who.size()) os << who[static_cast<std::size_t>(m)];
                    os << '\n';
                }
            }
    }
    return os.str();
}

} // namespace dialcap
