#include "dialcap/ingest.hpp"

#include "dialcap/error.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace dialcap {

namespace {

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

int to_int(std::string_view field, int line) {
    int value = 0;
    const auto* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (field.empty() || ec != std::errc{} || ptr != end)
        throw ParseError("expected an integer, got '" + std::string(field) + "'", line);
    return value;
}

} // namespace

std::vector<int> DemandHistory::weeks() const {
    std::vector<int> out;
    for (const auto& r : records)
        if (std::find(out.begin(), out.end(), r.week) == out.end()) out.push_back(r.week);
    return out;
}

std::vector<DemandRecord> DemandHistory::week(int w) const {
    std::vector<DemandRecord> out;
    std::copy_if(records.begin(), records.end(), std::back_inserter(out),
                 [w](const DemandRecord& r) { return r.week == w; });
    return out;
}

DemandHistory parse_demand_csv(std::istream& in) {
    DemandHistory history;
    std::set<std::pair<int, int>> seen;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = trim(raw);
        if (line.empty()) continue;
        if (line_no == 1 && line.rfind("week", 0) == 0) {
            if (line != kDemandCsvHeader) throw ParseError("unexpected header '" + std::string(line) + "'", line_no);
            continue;
        }
        const auto fields = split(line);
        if (fields.size() != 6)
            throw ParseError("expected 6 fields, got " + std::to_string(fields.size()), line_no);
        DemandRecord rec;
        rec.week = to_int(fields[0], line_no);
        rec.weekday = to_int(fields[1], line_no);
        for (std::size_t i = 0; i < kNumPatientTypes; ++i) rec.demand.counts[i] = to_int(fields[2 + i], line_no);
        if (rec.weekday < 1 || rec.weekday > 7)
            throw ValidationError("line " + std::to_string(line_no) + ": weekday must be in 1..7");
        for (int c : rec.demand.counts)
            if (c < 0) throw ValidationError("line " + std::to_string(line_no) + ": negative patient count");
        if (!seen.emplace(rec.week, rec.weekday).second)
            throw ValidationError("line " + std::to_string(line_no) + ": duplicate (week, weekday)");
        history.records.push_back(rec);
    }
    return history;
}

DemandHistory parse_demand_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_demand_csv(in);
}

DemandHistory load_demand_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open demand file '" + path.string() + "'");
    return parse_demand_csv(in);
}

std::string write_demand_csv(const DemandHistory& history) {
    std::ostringstream os;
    os << kDemandCsvHeader << '\n';
    for (const auto& r : history.records) {
        os << r.week << ',' << r.weekday;
        for (int c : r.demand.counts) os << ',' << c;
        os << '\n';
    }
    return os.str();
}

DemandHistory working_days(const DemandHistory& history) {
    DemandHistory out;
    std::copy_if(history.records.begin(), history.records.end(), std::back_inserter(out.records),
                 [](const DemandRecord& r) { return r.weekday != 7; });
    return out;
}

std::vector<int> series_for_type(const DemandHistory& history, PatientType type) {
    std::vector<int> out;
    out.reserve(history.size());
    for (const auto& r : history.records) out.push_back(r.demand[type]);
    return out;
}

std::vector<DayDemand> complete_week(const DemandHistory& history, int week, int days_per_week) {
    auto recs = working_days(DemandHistory{history.week(week)}).records;
    if (recs.empty()) throw ValidationError("week " + std::to_string(week) + " is not in the history");
    if (static_cast<int>(recs.size()) < days_per_week)
        throw ValidationError("week " + std::to_string(week) + " is incomplete (" + std::to_string(recs.size()) +
                              " of " + std::to_string(days_per_week) + " working days)");
    std::stable_sort(recs.begin(), recs.end(),
                     [](const DemandRecord& a, const DemandRecord& b) { return a.weekday < b.weekday; });
    std::vector<DayDemand> days;
    for (int i = 0; i < days_per_week; ++i) days.push_back(recs[static_cast<std::size_t>(i)].demand);
    return days;
}

DemandHistory weeks_range(const DemandHistory& history, int first, int last, int days_per_week) {
    DemandHistory out;
    for (int w = first; w <= last; ++w) {
        complete_week(history, w, days_per_week);
        auto recs = working_days(DemandHistory{history.week(w)}).records;
        std::stable_sort(recs.begin(), recs.end(),
                         [](const DemandRecord& a, const DemandRecord& b) { return a.weekday < b.weekday; });
        out.records.insert(out.records.end(), recs.begin(), recs.end());
    }
    return out;
}

} // namespace dialcap
