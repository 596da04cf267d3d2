#pragma once

#include "dialcap/domain.hpp"

#include <span>
#include <string_view>

namespace dialcap {

struct SesFit {
    double smoothing = 0.0;
    double point_forecast = 0.0;
    double rmse = 0.0;
};

enum class PiLevel { PI80, PI90 };

constexpr double pi_multiplier(PiLevel level) noexcept { return level == PiLevel::PI80 ? 1.28 : 1.64; }
std::string_view to_string(PiLevel level); // "80" / "90"
PiLevel parse_pi_level(std::string_view text);

struct PredictionInterval {
    double lower = 0.0;
    double upper = 0.0;
    PiLevel level = PiLevel::PI80;

    bool degenerate() const { return !(lower < upper); }
    double center() const { return 0.5 * (lower + upper); }
};

// Simple exponential smoothing with the first forecast equal to the first
// observation. Errors are the one-step-ahead misses for t = 2..n.
SesFit ses_with_smoothing(std::span<const double> series, double smoothing);

// Smoothing picked on the grid {0, 0.001, ..., 1} minimizing RMSE; the
// smallest minimizer wins ties. Throws ValidationError for < 2 points.
SesFit fit_ses(std::span<const double> series);
SesFit fit_ses(std::span<const int> series);

PredictionInterval prediction_interval(const SesFit& fit, PiLevel level);

// Uniform mass on (lower, upper) binned to integers by rounding; everything
// below 0.5 goes to 0. Degenerate intervals give a point mass at
// round(max(0, lower)).
IntDist discretize_uniform(const PredictionInterval& interval);

struct ChronicRegime {
    int mwf = 12; // Monday/Wednesday/Friday patients
    int tts = 8;  // Tuesday/Thursday/Saturday patients
};

// weekday 1..6 (Mon..Sat); Sunday or out of range throws ValidationError.
int chronic_demand(int weekday, const ChronicRegime& regime = {});

} // namespace dialcap
