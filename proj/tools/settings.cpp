#include "settings.hpp"

#include <dialcap/error.hpp>

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

#ifndef DIALCAP_DEFAULT_DATA
#define DIALCAP_DEFAULT_DATA "data/clinic_demand.csv"
#endif

namespace dialcap::cli {

namespace {

using nlohmann::json;

template <class T>
void read(const json& obj, const char* key, T& out) {
    if (!obj.contains(key)) return;
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ValidationError(std::string("config key '") + key + "': " + e.what());
    }
}

void apply_caps(const json& caps, Settings& s) {
    if (caps.is_array()) {
        std::vector<int> v;
        try {
            v = caps.get<std::vector<int>>();
        } catch (const json::exception& e) {
            throw ValidationError(std::string("config key 'unit_caps': ") + e.what());
        }
        (v.size() == 3 ? s.three : s.two).unit_caps = v;
        return;
    }
    if (!caps.is_object()) throw ValidationError("config key 'unit_caps' must be an array or an object");
    read(caps, "three-unit", s.three.unit_caps);
    read(caps, "two-unit", s.two.unit_caps);
}

void apply_file(const std::filesystem::path& path, Settings& s) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config '" + path.string() + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError("config '" + path.string() + "': " + e.what());
    }
    if (!doc.is_object()) throw ValidationError("config root must be an object");

    if (doc.contains("clinic")) {
        const json& c = doc["clinic"];
        for (ClinicConfig* cfg : {&s.three, &s.two}) {
            read(c, "total_machines", cfg->total_machines);
            read(c, "sessions_per_day", cfg->sessions_per_day);
            read(c, "days_per_week", cfg->days_per_week);
        }
        if (c.contains("unit_caps")) apply_caps(c["unit_caps"], s);
    }
    if (doc.contains("weights")) {
        const json& w = doc["weights"];
        read(w, "alpha1", s.weights.alpha1);
        read(w, "alpha2", s.weights.alpha2);
        read(w, "alpha3", s.weights.alpha3);
        read(w, "epsilon", s.weights.epsilon);
        if (w.contains("pi")) {
            if (w["pi"].is_number()) s.weights.pi.fill(w["pi"].get<double>());
            else read(w, "pi", s.weights.pi);
        }
    }
    if (doc.contains("chronic")) {
        read(doc["chronic"], "mwf", s.chronic.mwf);
        read(doc["chronic"], "tts", s.chronic.tts);
    }
}

} // namespace

Settings load_settings(const std::optional<std::filesystem::path>& file, const Overrides& f) {
    Settings s;
    if (file) apply_file(*file, s);

    for (ClinicConfig* cfg : {&s.three, &s.two}) {
        if (f.machines) cfg->total_machines = *f.machines;
        if (f.sessions) cfg->sessions_per_day = *f.sessions;
        if (f.days) cfg->days_per_week = *f.days;
    }
    if (!f.caps.empty()) (f.caps.size() == 3 ? s.three : s.two).unit_caps = f.caps;
    if (f.alpha1) s.weights.alpha1 = *f.alpha1;
    if (f.alpha2) s.weights.alpha2 = *f.alpha2;
    if (f.alpha3) s.weights.alpha3 = *f.alpha3;
    if (f.epsilon) s.weights.epsilon = *f.epsilon;
    if (f.penalty) s.weights.pi.fill(*f.penalty);
    if (f.chronic_mwf) s.chronic.mwf = *f.chronic_mwf;
    if (f.chronic_tts) s.chronic.tts = *f.chronic_tts;

    s.three.validate(CohortPolicy::ThreeUnit);
    s.two.validate(CohortPolicy::TwoUnit);
    s.weights.validate();
    if (s.chronic.mwf < 0 || s.chronic.tts < 0) throw ValidationError("chronic demand must be non-negative");
    if (s.three.days_per_week > 6) throw ValidationError("at most 6 working days per week");
    return s;
}

std::filesystem::path resolve_data_path(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("DIALCAP_DATA"); env && *env) return env;
    return DIALCAP_DEFAULT_DATA;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::string cell;
    std::istringstream in(text);
    while (std::getline(in, cell, ',')) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(cell, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != cell.size()) throw ValidationError("bad integer list '" + text + "'");
        out.push_back(v);
    }
    if (out.empty()) throw ValidationError("empty integer list");
    return out;
}

} // namespace dialcap::cli
