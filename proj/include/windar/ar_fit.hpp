#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "windar/ar_model.hpp"
#include "windar/errors.hpp"
#include "windar/pso.hpp"
#include "windar/time_series.hpp"

namespace windar {

struct FitResult {
    ArModel model;
    double objective_value = 0.0;  // final RSS; equals trace.back()
    std::vector<double> trace;
    std::size_t iterations_used = 0;
    Termination termination = Termination::MaxIterations;
};

// Swarm configuration for fitting an AR(order) model: one dimension per
// coefficient, search box [-2, 2] per coefficient (wide enough to contain
// the stationarity region for low orders), everything else defaulted.
inline PsoConfig default_ar_pso_config(std::size_t order) {
    PsoConfig config;
    config.dimension = order;
    config.lower_bounds.assign(order, -2.0);
    config.upper_bounds.assign(order, 2.0);
    return config;
}

// Fits AR coefficients by minimizing the residual sum of squares of the
// candidate model's predictions with the swarm optimizer. The swarm
// dimension is the lag order; the intercept is restored from the series
// mean and the innovation variance from the final RSS.
inline FitResult fit_ar_cfpso(const TimeSeries& series, std::size_t order, const PsoConfig& config,
                              PredictionMode mode = PredictionMode::OneStepAhead) {
    if (config.dimension != order)
        throw ConfigError("swarm dimension must equal the lag order");
    if (series.size() <= 2 * order) throw SeriesTooShort(series.size(), 2 * order);

    // Unstable candidates make the free-run recursion overflow; score them
    // as worst-possible instead of aborting so the swarm searches on.
    const auto objective = [&](std::span<const double> position) {
        const double rss = ar_fit_rss(series, position, mode);
        return std::isfinite(rss) ? rss : std::numeric_limits<double>::max();
    };
    OptimizeResult result = optimize(config, objective);

    ArModel model{std::move(result.best_position), 0.0,
                  result.best_value / static_cast<double>(series.size() - order)};
    model.intercept = recover_intercept(series.mean(), model.coefficients);
    return {std::move(model), result.best_value, std::move(result.trace), result.iterations_used,
            result.termination};
}

}  // namespace windar
