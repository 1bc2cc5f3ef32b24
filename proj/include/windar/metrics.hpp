#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "windar/ar_fit.hpp"
#include "windar/ar_model.hpp"
#include "windar/errors.hpp"
#include "windar/estimators.hpp"
#include "windar/time_series.hpp"

namespace windar {

inline double mse(std::span<const double> actual, std::span<const double> estimated) {
    return residual_sum_of_squares(actual, estimated) / static_cast<double>(actual.size());
}

// Akaike's final prediction error: loss * (1 + h/H) / (1 - h/H) for h
// fitted parameters over H values.
inline double fpe(double loss, std::size_t h, std::size_t H) {
    if (loss < 0.0) throw ConfigError("loss must be nonnegative");
    if (h >= H) throw DegenerateRatio(h, H);
    const double ratio = static_cast<double>(h) / static_cast<double>(H);
    return loss * (1.0 + ratio) / (1.0 - ratio);
}

// Mean squared error normalized by the sample variance of the actual
// data: 0 for a perfect fit, growing without bound as the fit degrades.
inline double nmse_raw(std::span<const double> actual, std::span<const double> estimated) {
    if (actual.size() != estimated.size()) throw LengthMismatch(actual.size(), estimated.size());
    if (actual.size() < 2) throw EmptyInput("nmse needs at least two samples");

    const double n = static_cast<double>(actual.size());
    double mean = 0.0;
    for (double y : actual) mean += y;
    mean /= n;
    double variance = 0.0;
    for (double y : actual) variance += (y - mean) * (y - mean);
    variance /= n - 1.0;
    if (!(variance > 0.0)) throw ConstantActual();

    return residual_sum_of_squares(actual, estimated) / (variance * n);
}

// Goodness-of-fit orientation of the normalized mean squared error:
// 1 is a perfect fit, arbitrarily poor fits go to -inf.
inline double nmse(std::span<const double> actual, std::span<const double> estimated) {
    return 1.0 - nmse_raw(actual, estimated);
}

// Error minimization performance relative to the least-squares baseline,
// in percent. Positive means better than the baseline.
inline double emp(double error_ls, double error_i) {
    if (!(error_ls > 0.0)) throw NonPositiveBaseline(error_ls);
    return (error_ls - error_i) / error_ls * 100.0;
}

// One row of the comparison table. `runs` and `std_mse` are populated for
// the swarm-optimized method only; `error` is set when a method failed.
struct MetricsRow {
    std::string method;
    double mse = 0.0;
    double fpe = 0.0;
    double nmse = 0.0;
    double nmse_raw = 0.0;
    std::optional<double> emp_mse_pct;
    std::optional<double> emp_fpe_pct;
    std::optional<std::size_t> runs;
    std::optional<double> std_mse;
    std::optional<std::string> error;
};

struct ComparisonConfig {
    PredictionMode mode = PredictionMode::OneStepAhead;
    std::size_t cfpso_runs = 30;
    PsoConfig pso;  // dimension and bounds must match the lag order
    bool ls_seeding = false;
};

struct ComparisonReport {
    std::size_t order = 0;
    PredictionMode mode = PredictionMode::OneStepAhead;
    std::vector<MetricsRow> rows;                // LS, FB, YW, GL, CF-PSO
    std::vector<double> actual;                  // common evaluation span
    std::vector<std::vector<double>> estimated;  // per row; empty when the row failed
    std::vector<double> cfpso_best_trace;        // RSS trace of the best run
    std::size_t cfpso_best_run = 0;
};

namespace detail {

inline MetricsRow metrics_for(const std::string& method, std::span<const double> actual,
                              std::span<const double> estimated, std::size_t order) {
    MetricsRow row;
    row.method = method;
    const double rss = residual_sum_of_squares(actual, estimated);
    const std::size_t span = actual.size();
    row.mse = rss / static_cast<double>(span);
    row.fpe = fpe(rss / static_cast<double>(span), order, span);
    row.nmse_raw = nmse_raw(actual, estimated);
    row.nmse = 1.0 - row.nmse_raw;
    return row;
}

inline MetricsRow failed_row(const std::string& method, const std::string& reason) {
    MetricsRow row;
    row.method = method;
    row.mse = row.fpe = row.nmse = row.nmse_raw = std::numeric_limits<double>::quiet_NaN();
    row.error = reason;
    return row;
}

}  // namespace detail

// Fits every classical estimator once and the swarm optimizer for
// `cfpso_runs` independent restarts (run r uses rng_seed + r), then
// assembles the comparison table on the shared evaluation span. The
// swarm row reports metrics averaged over runs plus the spread of the
// per-run MSE; EMP columns compare each row against the least-squares
// baseline. A failing method yields a row with `error` set instead of
// aborting the remaining methods.
inline ComparisonReport build_comparison(const TimeSeries& series, std::size_t order,
                                         const ComparisonConfig& config) {
    if (config.pso.dimension != order)
        throw ConfigError("swarm dimension must equal the lag order");
    if (config.cfpso_runs < 1) throw ConfigError("cfpso runs must be at least 1");
    config.pso.validate();  // a misconfigured swarm is the caller's error, not a failed row

    ComparisonReport report;
    report.order = order;
    report.mode = config.mode;
    const std::span<const double> actual = evaluation_span(series, order);
    report.actual.assign(actual.begin(), actual.end());

    const EstimatorKind classical[] = {EstimatorKind::LeastSquares, EstimatorKind::ForwardBackward,
                                       EstimatorKind::YuleWalker, EstimatorKind::GeometricLattice};
    std::optional<double> ls_mse;
    std::optional<double> ls_fpe;
    std::optional<std::vector<double>> ls_coefficients;

    for (EstimatorKind kind : classical) {
        const std::string name = to_string(kind);
        try {
            const ArModel model = fit_ar(series, order, kind);
            const std::vector<double> estimated = predict(model, series, config.mode);
            report.rows.push_back(detail::metrics_for(name, actual, estimated, order));
            report.estimated.push_back(estimated);
            if (kind == EstimatorKind::LeastSquares) {
                ls_mse = report.rows.back().mse;
                ls_fpe = report.rows.back().fpe;
                ls_coefficients = model.coefficients;
            }
        } catch (const NumericError& e) {
            report.rows.push_back(detail::failed_row(name, e.what()));
            report.estimated.push_back({});
        } catch (const DataError& e) {
            report.rows.push_back(detail::failed_row(name, e.what()));
            report.estimated.push_back({});
        }
    }

    try {
        PsoConfig pso = config.pso;
        if (config.ls_seeding && ls_coefficients) {
            // clamp into the box; the seeded no-worse-than-LS guarantee
            // only holds when the LS solution is inside the bounds
            std::vector<double> seed = *ls_coefficients;
            for (std::size_t d = 0; d < seed.size(); ++d)
                seed[d] = std::clamp(seed[d], pso.lower_bounds[d], pso.upper_bounds[d]);
            pso.seed_positions.insert(pso.seed_positions.begin(), std::move(seed));
        }

        std::vector<FitResult> fits;
        fits.reserve(config.cfpso_runs);
        for (std::size_t run = 0; run < config.cfpso_runs; ++run) {
            PsoConfig run_config = pso;
            run_config.rng_seed = pso.rng_seed + run;
            fits.push_back(fit_ar_cfpso(series, order, run_config, config.mode));
        }

        std::size_t best_run = 0;
        for (std::size_t run = 1; run < fits.size(); ++run)
            if (fits[run].objective_value < fits[best_run].objective_value) best_run = run;

        MetricsRow row;
        row.method = "CF-PSO";
        // long double keeps the mean of identical per-run values exact, so
        // a seeded row can never drift above the LS row by rounding alone
        long double sum_mse = 0.0L, sum_fpe = 0.0L, sum_nmse_raw = 0.0L, sum_sq_mse = 0.0L;
        for (const FitResult& fit : fits) {
            const std::vector<double> estimated = predict(fit.model, series, config.mode);
            const MetricsRow one = detail::metrics_for("CF-PSO", actual, estimated, order);
            sum_mse += one.mse;
            sum_fpe += one.fpe;
            sum_nmse_raw += one.nmse_raw;
            sum_sq_mse += static_cast<long double>(one.mse) * one.mse;
        }
        const long double runs = static_cast<long double>(fits.size());
        row.mse = static_cast<double>(sum_mse / runs);
        row.fpe = static_cast<double>(sum_fpe / runs);
        row.nmse_raw = static_cast<double>(sum_nmse_raw / runs);
        row.nmse = 1.0 - row.nmse_raw;
        row.runs = fits.size();
        row.std_mse = static_cast<double>(
            std::sqrt(std::max(sum_sq_mse / runs - (sum_mse / runs) * (sum_mse / runs), 0.0L)));
        report.rows.push_back(std::move(row));
        report.estimated.push_back(predict(fits[best_run].model, series, config.mode));
        report.cfpso_best_trace = fits[best_run].trace;
        report.cfpso_best_run = best_run;
    } catch (const NumericError& e) {
        report.rows.push_back(detail::failed_row("CF-PSO", e.what()));
        report.estimated.push_back({});
    } catch (const DataError& e) {
        report.rows.push_back(detail::failed_row("CF-PSO", e.what()));
        report.estimated.push_back({});
    }

    if (ls_mse) {
        for (MetricsRow& row : report.rows) {
            if (row.error) continue;
            row.emp_mse_pct = emp(*ls_mse, row.mse);
            row.emp_fpe_pct = emp(*ls_fpe, row.fpe);
        }
    }
    return report;
}

}  // namespace windar
