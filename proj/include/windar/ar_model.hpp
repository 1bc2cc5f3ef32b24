#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "windar/errors.hpp"
#include "windar/rng.hpp"
#include "windar/time_series.hpp"

namespace windar {

// How predictions are generated from a fitted model.
//   OneStepAhead: every prediction conditions on the actual past samples.
//   FreeRun:      after the initial warm-up window of actual samples,
//                 predictions are fed back into the recursion.
enum class PredictionMode { OneStepAhead, FreeRun };

// Autoregressive model
//   x_t = intercept + sum_i coefficients[i-1] * x_{t-i} + e_t
// with e_t zero-mean white noise of variance innovation_variance.
struct ArModel {
    std::vector<double> coefficients;
    double intercept = 0.0;
    double innovation_variance = 0.0;

    std::size_t order() const noexcept { return coefficients.size(); }
};

// Intercept that makes a coefficient vector consistent with the series
// mean: C = mean * (1 - sum of coefficients).
inline double recover_intercept(double mean, std::span<const double> coefficients) {
    double sum = 0.0;
    for (double c : coefficients) sum += c;
    return mean * (1.0 - sum);
}

// Predictions for samples x_{order+1}..x_n (0-based indices order..n-1),
// one value per remaining sample. The leading `order` samples condition
// the recursion and are never predicted.
inline std::vector<double> predict(const ArModel& model, const TimeSeries& series,
                                   PredictionMode mode) {
    const std::size_t order = model.order();
    const std::size_t n = series.size();
    if (n <= order) throw SeriesTooShort(n, order);

    std::vector<double> out;
    out.reserve(n - order);
    if (mode == PredictionMode::OneStepAhead) {
        for (std::size_t t = order; t < n; ++t) {
            double p = model.intercept;
            for (std::size_t i = 0; i < order; ++i) p += model.coefficients[i] * series[t - 1 - i];
            out.push_back(p);
        }
    } else {
        std::vector<double> history(series.values().begin(), series.values().begin() + order);
        history.reserve(n);
        for (std::size_t t = order; t < n; ++t) {
            double p = model.intercept;
            for (std::size_t i = 0; i < order; ++i) p += model.coefficients[i] * history[t - 1 - i];
            history.push_back(p);
            out.push_back(p);
        }
    }
    return out;
}

inline double residual_sum_of_squares(std::span<const double> actual,
                                      std::span<const double> estimated) {
    if (actual.size() != estimated.size()) throw LengthMismatch(actual.size(), estimated.size());
    if (actual.empty()) throw EmptyInput("residual sum of squares");
    double sum = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double d = actual[i] - estimated[i];
        sum += d * d;
    }
    return sum;
}

// The evaluation span shared by all estimators: the actual samples from
// index order onward, which predict() lines up against.
inline std::span<const double> evaluation_span(const TimeSeries& series, std::size_t order) {
    if (series.size() <= order) throw SeriesTooShort(series.size(), order);
    return std::span<const double>(series.values()).subspan(order);
}

// Residual sum of squares of a candidate coefficient vector against the
// series, with the intercept tied to the series mean. This is the single
// objective shared by the swarm optimizer, the comparison report and the
// tests, so RSS values are directly comparable across methods.
inline double ar_fit_rss(const TimeSeries& series, std::span<const double> coefficients,
                         PredictionMode mode) {
    ArModel model{std::vector<double>(coefficients.begin(), coefficients.end()),
                  recover_intercept(series.mean(), coefficients), 0.0};
    const std::vector<double> estimated = predict(model, series, mode);
    return residual_sum_of_squares(evaluation_span(series, model.order()), estimated);
}

// Free-run extension of the series beyond its last sample: `horizon`
// future values produced by feeding predictions back into the recursion.
inline std::vector<double> forecast(const ArModel& model, const TimeSeries& series,
                                    std::size_t horizon) {
    if (horizon < 1) throw ConfigError("forecast horizon must be at least 1");
    const std::size_t order = model.order();
    if (series.size() < order) throw SeriesTooShort(series.size(), order);

    std::vector<double> history(series.values().end() - static_cast<std::ptrdiff_t>(order),
                                series.values().end());
    std::vector<double> out;
    out.reserve(horizon);
    for (std::size_t step = 0; step < horizon; ++step) {
        double p = model.intercept;
        const std::size_t last = history.size();
        for (std::size_t i = 0; i < order; ++i) p += model.coefficients[i] * history[last - 1 - i];
        history.push_back(p);
        out.push_back(p);
    }
    return out;
}

// Draws a realization of the model. The recursion starts from `initial`
// (zeros when empty), the first `warmup` generated samples are discarded,
// and the noise is i.i.d. Gaussian(0, noise_std^2) from the seeded
// generator, so output is reproducible from the seed.
inline TimeSeries simulate_ar(const ArModel& model, std::size_t n, double noise_std,
                              std::uint64_t seed, std::size_t warmup = 0,
                              std::span<const double> initial = {}) {
    if (n < 1) throw InvalidLength("simulation length must be at least 1");
    if (noise_std < 0.0) throw InvalidModelSpec("noise standard deviation must be nonnegative");
    const std::size_t order = model.order();
    if (!initial.empty() && initial.size() != order)
        throw InvalidModelSpec("initial history must contain exactly one value per lag");

    Rng rng(seed);
    std::vector<double> history(initial.begin(), initial.end());
    if (history.empty()) history.assign(order, 0.0);
    history.reserve(order + warmup + n);

    std::vector<double> out;
    out.reserve(n);
    for (std::size_t t = 0; t < warmup + n; ++t) {
        double x = model.intercept;
        const std::size_t last = history.size();
        for (std::size_t i = 0; i < order; ++i) x += model.coefficients[i] * history[last - 1 - i];
        if (noise_std > 0.0) x += noise_std * rng.gaussian();
        history.push_back(x);
        if (t >= warmup) out.push_back(x);
    }
    return TimeSeries(std::move(out));
}

}  // namespace windar
