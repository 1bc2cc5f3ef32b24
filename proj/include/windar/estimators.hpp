#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "windar/ar_model.hpp"
#include "windar/errors.hpp"
#include "windar/time_series.hpp"

namespace windar {

enum class EstimatorKind { LeastSquares, ForwardBackward, YuleWalker, GeometricLattice };

inline std::string to_string(EstimatorKind kind) {
    switch (kind) {
        case EstimatorKind::LeastSquares: return "LS";
        case EstimatorKind::ForwardBackward: return "FB";
        case EstimatorKind::YuleWalker: return "YW";
        case EstimatorKind::GeometricLattice: return "GL";
    }
    return "?";
}

inline EstimatorKind parse_estimator(std::string name) {
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (name == "ls") return EstimatorKind::LeastSquares;
    if (name == "fb") return EstimatorKind::ForwardBackward;
    if (name == "yw") return EstimatorKind::YuleWalker;
    if (name == "gl") return EstimatorKind::GeometricLattice;
    throw ConfigError("unknown estimator: " + name + " (expected ls, fb, yw or gl)");
}

// Biased sample autocovariances of an already-centered series:
// lags[k] = (1/n) * sum_t x_t x_{t+k}. The 1/n normalization keeps the
// Toeplitz system positive definite.
struct AutocovarianceSequence {
    std::vector<double> lags;
};

inline AutocovarianceSequence autocovariance(const TimeSeries& series, std::size_t max_lag) {
    const auto& x = series.values();
    const std::size_t n = x.size();
    if (max_lag >= n) throw LagTooLarge(max_lag, n);

    AutocovarianceSequence acov;
    acov.lags.resize(max_lag + 1);
    for (std::size_t k = 0; k <= max_lag; ++k) {
        double sum = 0.0;
        for (std::size_t t = 0; t + k < n; ++t) sum += x[t] * x[t + k];
        acov.lags[k] = sum / static_cast<double>(n);
    }
    if (acov.lags[0] <= 0.0) throw ConstantSeries();
    return acov;
}

struct LevinsonResult {
    std::vector<double> coefficients;
    std::vector<double> reflection;
    double error_power = 0.0;  // one-step prediction error power after the final stage
};

// Levinson-Durbin recursion for the order-p Toeplitz system built from
// autocovariances. Exposed separately so callers and tests can inject
// exact sequences.
inline LevinsonResult levinson_durbin(const AutocovarianceSequence& acov, std::size_t order) {
    if (acov.lags.size() < order + 1) throw LagTooLarge(order, acov.lags.size());
    const auto& r = acov.lags;
    if (r[0] <= 0.0) throw ConstantSeries();

    LevinsonResult result;
    result.coefficients.assign(order, 0.0);
    result.reflection.reserve(order);
    auto& a = result.coefficients;
    double e = r[0];
    for (std::size_t m = 1; m <= order; ++m) {
        if (e <= 0.0)
            throw NumericallySingular("prediction-error power vanished at stage "
                                      + std::to_string(m));
        double acc = r[m];
        for (std::size_t j = 1; j < m; ++j) acc -= a[j - 1] * r[m - j];
        const double kappa = acc / e;
        result.reflection.push_back(kappa);

        const std::vector<double> prev(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(m - 1));
        for (std::size_t j = 1; j < m; ++j) a[j - 1] = prev[j - 1] - kappa * prev[m - 1 - j];
        a[m - 1] = kappa;
        e *= 1.0 - kappa * kappa;
    }
    result.error_power = std::max(e, 0.0);
    return result;
}

namespace detail {

inline void require_non_constant(const TimeSeries& series) {
    const auto [lo, hi] = std::minmax_element(series.values().begin(), series.values().end());
    if (*lo == *hi) throw ConstantSeries();
}

// Rank-revealing QR solve; pivots below 1e-12 of the largest one raise
// SingularDesign.
inline Eigen::VectorXd solve_full_rank(const Eigen::MatrixXd& design,
                                       const Eigen::VectorXd& target) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    qr.setThreshold(1e-12);
    if (qr.rank() < design.cols())
        throw SingularDesign("lag regressors are collinear (rank " + std::to_string(qr.rank())
                             + " of " + std::to_string(design.cols()) + ")");
    return qr.solve(target);
}

inline ArModel finish_model(const TimeSeries& series, std::vector<double> coefficients,
                            double mean) {
    ArModel model{std::move(coefficients), 0.0, 0.0};
    model.intercept = recover_intercept(mean, model.coefficients);
    const double rss = ar_fit_rss(series, model.coefficients, PredictionMode::OneStepAhead);
    model.innovation_variance = rss / static_cast<double>(series.size() - model.order());
    return model;
}

}  // namespace detail

// Yule-Walker estimate: solves the Toeplitz system of biased sample
// autocovariances via Levinson-Durbin. The biased estimator guarantees all
// characteristic roots end up strictly inside the unit circle.
inline ArModel fit_yule_walker(const TimeSeries& series, std::size_t order) {
    if (series.size() <= order + 1) throw SeriesTooShort(series.size(), order + 1);
    detail::require_non_constant(series);
    auto [centered, mean] = demean(series);
    const AutocovarianceSequence acov = autocovariance(centered, order);
    LevinsonResult lev = levinson_durbin(acov, order);
    ArModel model{std::move(lev.coefficients), 0.0, lev.error_power};
    model.intercept = recover_intercept(mean, model.coefficients);
    return model;
}

// Ordinary least squares: the exact minimizer of the forward one-step
// residual sum of squares over t = order+1..n on the centered series.
inline ArModel fit_least_squares(const TimeSeries& series, std::size_t order) {
    if (series.size() <= 2 * order) throw SeriesTooShort(series.size(), 2 * order);
    auto [centered, mean] = demean(series);
    if (order == 0) return detail::finish_model(series, {}, mean);

    const auto& z = centered.values();
    const std::size_t rows = z.size() - order;
    Eigen::MatrixXd design(rows, order);
    Eigen::VectorXd target(rows);
    for (std::size_t t = order; t < z.size(); ++t) {
        target(static_cast<Eigen::Index>(t - order)) = z[t];
        for (std::size_t i = 0; i < order; ++i)
            design(static_cast<Eigen::Index>(t - order), static_cast<Eigen::Index>(i)) =
                z[t - 1 - i];
    }
    const Eigen::VectorXd phi = detail::solve_full_rank(design, target);
    return detail::finish_model(series, {phi.data(), phi.data() + phi.size()}, mean);
}

// Forward-backward estimate: one stacked least-squares problem whose rows
// are the forward one-step regressions plus the same regressions on the
// time-reversed series, sharing a single coefficient vector.
inline ArModel fit_forward_backward(const TimeSeries& series, std::size_t order) {
    if (series.size() <= 2 * order) throw SeriesTooShort(series.size(), 2 * order);
    auto [centered, mean] = demean(series);
    if (order == 0) return detail::finish_model(series, {}, mean);

    const auto& z = centered.values();
    const std::size_t half = z.size() - order;
    Eigen::MatrixXd design(2 * half, order);
    Eigen::VectorXd target(2 * half);
    for (std::size_t t = order; t < z.size(); ++t) {
        const auto row = static_cast<Eigen::Index>(t - order);
        target(row) = z[t];
        for (std::size_t i = 0; i < order; ++i)
            design(row, static_cast<Eigen::Index>(i)) = z[t - 1 - i];
    }
    for (std::size_t u = 0; u + order < z.size(); ++u) {
        const auto row = static_cast<Eigen::Index>(half + u);
        target(row) = z[u];
        for (std::size_t i = 0; i < order; ++i)
            design(row, static_cast<Eigen::Index>(i)) = z[u + 1 + i];
    }
    const Eigen::VectorXd phi = detail::solve_full_rank(design, target);
    return detail::finish_model(series, {phi.data(), phi.data() + phi.size()}, mean);
}

// Geometric-lattice estimate: stagewise reflection coefficients
//   kappa_m = sum f_t b_{t-1} / sqrt(sum f_t^2 * sum b_{t-1}^2),
// the geometric mean of the forward and backward error powers in the
// denominator, assembled into AR coefficients by the Levinson step-up.
// Cauchy-Schwarz bounds every |kappa_m| by 1. If either error energy is
// exhausted mid-way (exactly predictable series), the model fitted so far
// is returned padded with zero coefficients.
inline ArModel fit_geometric_lattice(const TimeSeries& series, std::size_t order) {
    if (series.size() <= order + 1) throw SeriesTooShort(series.size(), order + 1);
    detail::require_non_constant(series);
    auto [centered, mean] = demean(series);

    const auto& z = centered.values();
    const std::size_t n = z.size();
    std::vector<double> fwd(z.begin(), z.end());
    std::vector<double> bwd(z.begin(), z.end());
    std::vector<double> coeffs;
    coeffs.reserve(order);

    for (std::size_t m = 1; m <= order; ++m) {
        double cross = 0.0, fwd_energy = 0.0, bwd_energy = 0.0;
        for (std::size_t t = m; t < n; ++t) {
            cross += fwd[t] * bwd[t - 1];
            fwd_energy += fwd[t] * fwd[t];
            bwd_energy += bwd[t - 1] * bwd[t - 1];
        }
        if (fwd_energy <= 0.0 || bwd_energy <= 0.0) break;

        const double kappa = cross / std::sqrt(fwd_energy * bwd_energy);
        const std::vector<double> prev = coeffs;
        coeffs.resize(m);
        for (std::size_t j = 1; j < m; ++j) coeffs[j - 1] = prev[j - 1] - kappa * prev[m - 1 - j];
        coeffs[m - 1] = kappa;

        // update error sequences in place, descending t so stage m-1
        // values are still live where needed
        for (std::size_t t = n; t-- > m;) {
            const double f_old = fwd[t];
            const double b_old = bwd[t - 1];
            fwd[t] = f_old - kappa * b_old;
            bwd[t] = b_old - kappa * f_old;
        }
    }
    coeffs.resize(order, 0.0);
    return detail::finish_model(series, std::move(coeffs), mean);
}

inline ArModel fit_ar(const TimeSeries& series, std::size_t order, EstimatorKind kind) {
    switch (kind) {
        case EstimatorKind::LeastSquares: return fit_least_squares(series, order);
        case EstimatorKind::ForwardBackward: return fit_forward_backward(series, order);
        case EstimatorKind::YuleWalker: return fit_yule_walker(series, order);
        case EstimatorKind::GeometricLattice: return fit_geometric_lattice(series, order);
    }
    throw ConfigError("unknown estimator kind");
}

}  // namespace windar
