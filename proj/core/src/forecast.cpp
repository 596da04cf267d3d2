#include "dialcap/forecast.hpp"

#include "dialcap/error.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace dialcap {

std::string_view to_string(PiLevel level) { return level == PiLevel::PI80 ? "80" : "90"; }

PiLevel parse_pi_level(std::string_view text) {
    if (text == "80" || text == "PI80" || text == "pi80") return PiLevel::PI80;
    if (text == "90" || text == "PI90" || text == "pi90") return PiLevel::PI90;
    throw ValidationError("prediction interval level must be 80 or 90, got '" + std::string(text) + "'");
}

SesFit ses_with_smoothing(std::span<const double> series, double smoothing) {
    if (series.size() < 2) throw ValidationError("exponential smoothing needs at least 2 observations");
    if (!(smoothing >= 0.0 && smoothing <= 1.0)) throw ValidationError("smoothing must lie in [0,1]");
    double level = series[0];
    double sse = 0.0;
    for (std::size_t t = 1; t < series.size(); ++t) {
        const double err = series[t] - level;
        sse += err * err;
        level = smoothing * series[t] + (1.0 - smoothing) * level;
    }
    return SesFit{smoothing, level, std::sqrt(sse / static_cast<double>(series.size() - 1))};
}

SesFit fit_ses(std::span<const double> series) {
    constexpr int kGrid = 1000;
    SesFit best = ses_with_smoothing(series, 0.0);
    for (int i = 1; i <= kGrid; ++i) {
        const SesFit cand = ses_with_smoothing(series, static_cast<double>(i) / kGrid);
        if (cand.rmse < best.rmse - 1e-12 * std::max(1.0, best.rmse)) best = cand;
    }
    return best;
}

SesFit fit_ses(std::span<const int> series) {
    std::vector<double> values(series.begin(), series.end());
    return fit_ses(std::span<const double>(values));
}

PredictionInterval prediction_interval(const SesFit& fit, PiLevel level) {
    if (!(fit.rmse >= 0.0)) throw ValidationError("fit has negative rmse");
    const double half = pi_multiplier(level) * fit.rmse;
    return PredictionInterval{fit.point_forecast - half, fit.point_forecast + half, level};
}

IntDist discretize_uniform(const PredictionInterval& interval) {
    const double lo = interval.lower;
    const double hi = interval.upper;
    if (lo > hi) throw ValidationError("prediction interval lower bound exceeds upper bound");
    if (interval.degenerate()) return IntDist::point(static_cast<int>(std::lround(std::max(0.0, lo))));

    const double width = hi - lo;
    auto overlap = [&](double a, double b) { return std::max(0.0, std::min(b, hi) - std::max(a, lo)); };

    IntDist dist;
    const double zero_mass = std::max(0.0, std::min(0.5, hi) - lo) / width;
    if (zero_mass > 0.0) dist.support.emplace_back(0, zero_mass);
    const int top = static_cast<int>(std::floor(hi + 0.5));
    for (int n = 1; n <= top; ++n) {
        const double m = overlap(n - 0.5, n + 0.5) / width;
        if (m > 0.0) dist.support.emplace_back(n, m);
    }
    return dist;
}

int chronic_demand(int weekday, const ChronicRegime& regime) {
    if (weekday < 1 || weekday > 6)
        throw ValidationError("chronic demand is defined for Monday..Saturday (1..6), got " + std::to_string(weekday));
    return weekday % 2 == 1 ? regime.mwf : regime.tts;
}

} // namespace dialcap
