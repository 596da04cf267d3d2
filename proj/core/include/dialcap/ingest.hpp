#pragma once

#include "dialcap/domain.hpp"

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace dialcap {

struct DemandRecord {
    int week = 0;
    int weekday = 0; // 1 = Monday ... 7 = Sunday
    DayDemand demand;

    bool operator==(const DemandRecord&) const = default;
};

struct DemandHistory {
    std::vector<DemandRecord> records;

    bool empty() const { return records.empty(); }
    std::size_t size() const { return records.size(); }
    // Distinct weeks in first-appearance order.
    std::vector<int> weeks() const;
    // Records of one week in stored order.
    std::vector<DemandRecord> week(int week) const;
    bool operator==(const DemandHistory&) const = default;
};

inline constexpr std::string_view kDemandCsvHeader = "week,weekday,type1,type2,type3,type4";

// Header line optional; blank lines skipped. Throws ParseError on malformed
// rows, ValidationError on negative counts, bad weekdays or duplicate days.
DemandHistory parse_demand_csv(std::istream& in);
DemandHistory parse_demand_csv(std::string_view text);
DemandHistory load_demand_csv(const std::filesystem::path& path);
std::string write_demand_csv(const DemandHistory& history);

// Drops Sunday records.
DemandHistory working_days(const DemandHistory& history);

// Chronological daily counts of one patient type.
std::vector<int> series_for_type(const DemandHistory& history, PatientType type);

// Sunday-free records of weeks [first, last], every week required complete.
DemandHistory weeks_range(const DemandHistory& history, int first, int last, int days_per_week = 6);

// Working days of one week, Monday first. Throws ValidationError if the
// week is missing or has fewer than days_per_week working days.
std::vector<DayDemand> complete_week(const DemandHistory& history, int week, int days_per_week = 6);

} // namespace dialcap
