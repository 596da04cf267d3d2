#include "support.hpp"

#include <dialcap/capacity_opt.hpp>
#include <dialcap/render.hpp>

#include <doctest.h>

#include <random>
#include <sstream>

using namespace dialcap;

namespace {

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

// [session][unit] -> counts per type code read back from the grid.
std::vector<std::vector<std::array<int, 5>>> read_grid(const std::string& text, int sessions, int units) {
    const auto ls = lines(text);
    std::vector<std::vector<std::array<int, 5>>> out(static_cast<std::size_t>(sessions),
                                                     std::vector<std::array<int, 5>>(static_cast<std::size_t>(units)));
    for (int s = 0; s < sessions; ++s) {
        std::istringstream row(ls[static_cast<std::size_t>(s + 1)]);
        std::string cell;
        std::getline(row, cell, '|');
        for (int j = 0; j < units; ++j) {
            std::getline(row, cell, '|');
            for (char ch : cell)
                if (ch >= '1' && ch <= '4') out[static_cast<std::size_t>(s)][static_cast<std::size_t>(j)][ch - '0'] += 1;
        }
    }
    return out;
}

std::string footer(const std::string& text) { return lines(text).back(); }

} // namespace

TEST_CASE("week-5 Monday daily penalties") {
    const DayDemand monday = complete_week(test::clinic(), 5)[0];
    const ClinicConfig c3 = ClinicConfig::defaults(CohortPolicy::ThreeUnit);
    const auto r3 = solve_day(CohortPolicy::ThreeUnit, test::alloc3(8, 4, 2), monday, {}, c3);
    CHECK(footer(render_day(r3.schedule, test::alloc3(8, 4, 2), CohortPolicy::ThreeUnit, c3)) ==
          "Daily penalty = 14,612");
    const ClinicConfig c2 = ClinicConfig::defaults(CohortPolicy::TwoUnit);
    const auto r2 = solve_day(CohortPolicy::TwoUnit, test::alloc2(10, 4), monday, {}, c2);
    CHECK(footer(render_day(r2.schedule, test::alloc2(10, 4), CohortPolicy::TwoUnit, c2)) ==
          "Daily penalty = 10,010");
}

TEST_CASE("empty schedule") {
    const ClinicConfig c = ClinicConfig::defaults(CohortPolicy::ThreeUnit);
    const std::string text =
        render_day(DaySchedule::empty(CohortPolicy::ThreeUnit, 4), test::alloc3(2, 1, 1), CohortPolicy::ThreeUnit, c);
    CHECK(footer(text) == "Daily penalty = 0");
    const auto ls = lines(text);
    for (int s = 1; s <= 4; ++s) {
        const std::string& row = ls[static_cast<std::size_t>(s)];
        CHECK(row.find_first_of("1234.*", 2) == std::string::npos);
    }
}

TEST_CASE("grid counts equal the schedule and flags mark overlap sessions") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 100; ++i) {
        const auto t = test::random_tiny(rng, i % 2 ? CohortPolicy::TwoUnit : CohortPolicy::ThreeUnit);
        const auto r = solve_day(t.policy, t.alloc, t.demand, t.weights, t.config);
        const std::string text = render_day(r.schedule, t.alloc, t.policy, t.config, t.weights);
        const auto grid = read_grid(text, r.schedule.sessions, t.alloc.units());
        const auto flagged = overlap_sessions(r.schedule, t.policy);
        const auto ls = lines(text);
        for (int s = 0; s < r.schedule.sessions; ++s) {
            for (PatientType type : kPatientTypes)
                CHECK(grid[static_cast<std::size_t>(s)][static_cast<std::size_t>(unit_of(t.policy, type))]
                          [static_cast<int>(type)] == r.schedule.x(type, s));
            CHECK((ls[static_cast<std::size_t>(s + 1)][2] == '*') == flagged[static_cast<std::size_t>(s)]);
        }
        OverlapTally without;
        DaySchedule masked = r.schedule;
        for (int s = 0; s < masked.sessions; ++s)
            if (flagged[static_cast<std::size_t>(s)])
                for (auto&& m : masked.marks) m[static_cast<std::size_t>(s)] = false;
        CHECK(count_overlaps(masked, t.policy) == without);
    }
}

TEST_CASE("cell dump") {
    const ClinicConfig c = ClinicConfig::defaults(CohortPolicy::ThreeUnit);
    const DaySolver solver(CohortPolicy::ThreeUnit, {}, c);
    const auto days = schedule_week(solver, test::alloc3(7, 5, 2), complete_week(test::clinic(), 1));
    const std::string csv = schedule_cells_csv(days, test::alloc3(7, 5, 2), CohortPolicy::ThreeUnit);
    const auto ls = lines(csv);
    CHECK(ls.front() == "day,session,unit,machine_slot,patient_type");
    int patients = 0;
    for (std::size_t i = 1; i < ls.size(); ++i)
        if (ls[i].back() != ',') ++patients;
    int served = 0;
    for (const auto& d : days)
        for (PatientType t : kPatientTypes)
            for (int s = 0; s < d.schedule.sessions; ++s) served += d.schedule.x(t, s);
    CHECK(patients == served);
}

TEST_CASE("week rendering") {
    const ClinicConfig c = ClinicConfig::defaults(CohortPolicy::TwoUnit);
    const DaySolver solver(CohortPolicy::TwoUnit, {}, c);
    const auto days = schedule_week(solver, test::alloc2(9, 4), complete_week(test::clinic(), 7));
    const std::string text = render_week(days, test::alloc2(9, 4), CohortPolicy::TwoUnit, c);
    CHECK(text.find("Day 6 (Sat)") != std::string::npos);
    CHECK(footer(text) == "Weekly penalty = 36");
}
