#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "windar/ar_model.hpp"
#include "windar/errors.hpp"
#include "windar/estimators.hpp"
#include "windar/time_series.hpp"

namespace windar {

// Akaike information criterion: n * ln(sigma_hat) + 2 * M, where sigma_hat
// is the residual variance estimate and M the number of fitted parameters.
inline double aic(double sigma_hat, std::size_t n, std::size_t num_parameters) {
    if (!(sigma_hat > 0.0)) throw NonPositiveVariance(sigma_hat);
    if (n < 1) throw InvalidLength("aic needs at least one observation");
    return static_cast<double>(n) * std::log(sigma_hat) + 2.0 * static_cast<double>(num_parameters);
}

struct AicPoint {
    std::size_t order = 0;
    double aic = 0.0;
};

struct AicCurve {
    std::vector<AicPoint> entries;  // orders 1..max_order
    std::size_t chosen_order = 0;   // argmin; ties broken toward the smaller order
    // AIC of the degenerate order-0 model (residual variance = sample
    // variance), kept as a reference value, never a candidate.
    double order0_reference = 0.0;
};

// Sweeps the lag order 1..max_order with the given estimator, scoring each
// fit by AIC of its one-step residual variance RSS/(n - order) with
// M = order parameters. Every candidate is scored on the common span
// t = max_order+1..n so the orders compete on identical samples; per-order
// spans systematically reward overfitting.
inline AicCurve select_order(const TimeSeries& series, std::size_t max_order, EstimatorKind kind) {
    if (max_order < 1) throw ConfigError("max_order must be at least 1");
    if (series.size() <= 2 * max_order) throw SeriesTooShort(series.size(), 2 * max_order);

    const std::size_t n = series.size();
    const std::span<const double> common_actual = evaluation_span(series, max_order);
    AicCurve curve;
    curve.entries.reserve(max_order);

    const double rss0 = ar_fit_rss(series, {}, PredictionMode::OneStepAhead);
    curve.order0_reference = aic(rss0 / static_cast<double>(n), n, 0);

    for (std::size_t order = 1; order <= max_order; ++order) {
        const ArModel model = fit_ar(series, order, kind);
        const std::vector<double> predictions =
            predict(model, series, PredictionMode::OneStepAhead);
        const std::span<const double> common_estimated =
            std::span<const double>(predictions).subspan(max_order - order);
        const double rss = residual_sum_of_squares(common_actual, common_estimated);
        const double sigma_hat = rss / static_cast<double>(n - order);
        curve.entries.push_back({order, aic(sigma_hat, n, order)});
    }

    curve.chosen_order = curve.entries.front().order;
    double best = curve.entries.front().aic;
    for (const AicPoint& point : curve.entries) {
        if (point.aic < best) {
            best = point.aic;
            curve.chosen_order = point.order;
        }
    }
    return curve;
}

}  // namespace windar
