#pragma once

#include <dialcap/domain.hpp>
#include <dialcap/forecast.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace dialcap::cli {

struct Overrides {
    std::optional<int> machines;
    std::vector<int> caps;
    std::optional<int> sessions;
    std::optional<int> days;
    std::optional<double> alpha1, alpha2, alpha3, penalty, epsilon;
    std::optional<int> chronic_mwf, chronic_tts;
};

struct Settings {
    ClinicConfig three = ClinicConfig::defaults(CohortPolicy::ThreeUnit);
    ClinicConfig two = ClinicConfig::defaults(CohortPolicy::TwoUnit);
    PenaltyWeights weights;
    ChronicRegime chronic;

    const ClinicConfig& clinic(CohortPolicy p) const { return p == CohortPolicy::ThreeUnit ? three : two; }
};

// Built-in defaults, then the JSON file (if any), then flag overrides.
// Throws ValidationError for unreadable or ill-typed config and for values
// the model rejects.
Settings load_settings(const std::optional<std::filesystem::path>& file, const Overrides& flags);

std::filesystem::path resolve_data_path(const std::string& flag);

std::vector<int> parse_int_list(const std::string& text);

} // namespace dialcap::cli
