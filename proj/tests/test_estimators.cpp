#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "windar/estimators.hpp"

using namespace windar;

namespace {

// Largest characteristic-root magnitude of z^p - phi_1 z^{p-1} - ... - phi_p
// via companion-matrix eigenvalues.
double max_root_magnitude(const std::vector<double>& coefficients) {
    const auto p = static_cast<Eigen::Index>(coefficients.size());
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(p, p);
    for (Eigen::Index i = 0; i < p; ++i)
        companion(0, i) = coefficients[static_cast<std::size_t>(i)];
    for (Eigen::Index i = 1; i < p; ++i) companion(i, i - 1) = 1.0;
    const Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    double max_magnitude = 0.0;
    for (Eigen::Index i = 0; i < p; ++i)
        max_magnitude = std::max(max_magnitude, std::abs(solver.eigenvalues()(i)));
    return max_magnitude;
}

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

// Median coefficient estimates over 50 seeds of the AR(2) fixture.
std::vector<double> median_ar2_estimate(EstimatorKind kind, std::size_t n) {
    std::vector<double> first, second;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const ArModel model = fit_ar(testutil::ar2_fixture(n, seed), 2, kind);
        first.push_back(model.coefficients[0]);
        second.push_back(model.coefficients[1]);
    }
    return {median(first), median(second)};
}

const std::vector<double> kNoiselessAr1 = [] {
    std::vector<double> x(50);
    x[0] = 1.0;
    for (std::size_t t = 1; t < x.size(); ++t) x[t] = 0.7 * x[t - 1];
    return x;
}();

}  // namespace

TEST_CASE("autocovariance of the alternating series, hand arithmetic") {
    const auto acov = autocovariance(validate_series({1.0, -1.0, 1.0, -1.0}), 1);
    CHECK(acov.lags[0] == 1.0);
    CHECK(acov.lags[1] == -0.75);
}

TEST_CASE("autocovariance rejects lags beyond the series") {
    CHECK_THROWS_AS(autocovariance(validate_series({1.0, 2.0}), 2), LagTooLarge);
}

TEST_CASE("autocovariance of a demeaned constant series vanishes") {
    const auto [centered, mean] = demean(validate_series({2.0, 2.0, 2.0, 2.0}));
    CHECK_THROWS_AS(autocovariance(centered, 1), ConstantSeries);
}

TEST_CASE("white-noise autocovariance at lag one is near zero") {
    // Monte Carlo oracle, 3/sqrt(n) bound
    const auto [centered, mean] = demean(testutil::white_noise(100000, 13));
    const auto acov = autocovariance(centered, 1);
    CHECK(std::abs(acov.lags[1]) < 0.01);
}

TEST_CASE("autocovariance zero lag dominates all lags") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto [centered, mean] = demean(testutil::ar2_fixture(256, seed));
        const auto acov = autocovariance(centered, 8);
        CHECK(acov.lags[0] > 0.0);
        for (double lag : acov.lags) CHECK(std::abs(lag) <= acov.lags[0]);
    }
}

TEST_CASE("levinson_durbin recovers phi from an exact geometric autocovariance") {
    AutocovarianceSequence acov;
    acov.lags = {1.0, 0.5};
    const auto result = levinson_durbin(acov, 1);
    CHECK(result.coefficients == std::vector<double>{0.5});
    CHECK(result.error_power == Catch::Approx(0.75).margin(1e-15));
}

TEST_CASE("levinson_durbin reports a vanishing prediction-error power") {
    // unit-magnitude reflection at stage one kills the error power
    AutocovarianceSequence acov;
    acov.lags = {1.0, 1.0, 1.0};
    CHECK_THROWS_AS(levinson_durbin(acov, 2), NumericallySingular);
}

TEST_CASE("yule-walker recovers the AR(2) coefficients") {
    const auto estimate = median_ar2_estimate(EstimatorKind::YuleWalker, 4096);
    CHECK(estimate[0] == Catch::Approx(0.6).margin(0.05));
    CHECK(estimate[1] == Catch::Approx(-0.3).margin(0.05));
}

TEST_CASE("yule-walker on white noise estimates near-zero coefficients") {
    const ArModel model = fit_ar(testutil::white_noise(100000, 5), 2, EstimatorKind::YuleWalker);
    CHECK(std::abs(model.coefficients[0]) < 0.02);
    CHECK(std::abs(model.coefficients[1]) < 0.02);
}

TEST_CASE("yule-walker models are stable") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const std::size_t order = 1 + seed % 6;
        const ArModel model = fit_ar(testutil::ar2_fixture(512, seed), order,
                                     EstimatorKind::YuleWalker);
        CHECK(max_root_magnitude(model.coefficients) < 1.0);
    }
}

TEST_CASE("yule-walker rejects constant series") {
    CHECK_THROWS_AS(fit_yule_walker(validate_series(std::vector<double>(16, 3.0)), 2),
                    ConstantSeries);
}

TEST_CASE("least squares matches an independent regression oracle on a ramp") {
    std::vector<double> ramp(100);
    for (std::size_t i = 0; i < ramp.size(); ++i) ramp[i] = static_cast<double>(i + 1);
    const TimeSeries series = validate_series(ramp);

    // brute-force normal equation in extended precision
    const long double mean = 50.5L;
    long double sxy = 0.0L, sxx = 0.0L;
    for (std::size_t t = 1; t < ramp.size(); ++t) {
        const long double zt = static_cast<long double>(ramp[t]) - mean;
        const long double zp = static_cast<long double>(ramp[t - 1]) - mean;
        sxy += zt * zp;
        sxx += zp * zp;
    }
    const double oracle = static_cast<double>(sxy / sxx);

    const ArModel model = fit_least_squares(series, 1);
    CHECK(model.coefficients[0] == Catch::Approx(oracle).margin(0.01));
    CHECK(model.coefficients[0] == Catch::Approx(oracle).margin(1e-10));
}

TEST_CASE("least squares equals the exact minimizer on the noiseless decaying series") {
    // The centered series obeys z_t = 0.7 z_{t-1} - 0.3 * mean, so the
    // no-intercept least-squares minimizer is not 0.7 itself; the contract
    // is agreement with the exact normal-equation solution.
    const TimeSeries series = validate_series(kNoiselessAr1);
    long double mean = 0.0L;
    for (double v : kNoiselessAr1) mean += v;
    mean /= static_cast<long double>(kNoiselessAr1.size());
    long double sxy = 0.0L, sxx = 0.0L;
    for (std::size_t t = 1; t < kNoiselessAr1.size(); ++t) {
        const long double zt = kNoiselessAr1[t] - mean;
        const long double zp = kNoiselessAr1[t - 1] - mean;
        sxy += zt * zp;
        sxx += zp * zp;
    }
    const double oracle = static_cast<double>(sxy / sxx);
    const ArModel model = fit_least_squares(series, 1);
    CHECK(model.coefficients[0] == Catch::Approx(oracle).margin(1e-10));
}

TEST_CASE("least squares rejects a constant series as singular") {
    CHECK_THROWS_AS(fit_least_squares(validate_series(std::vector<double>(32, 1.5)), 1),
                    SingularDesign);
}

TEST_CASE("least squares recovers the AR(2) coefficients") {
    const auto estimate = median_ar2_estimate(EstimatorKind::LeastSquares, 4096);
    CHECK(estimate[0] == Catch::Approx(0.6).margin(0.05));
    CHECK(estimate[1] == Catch::Approx(-0.3).margin(0.05));
}

TEST_CASE("least squares is the one-step RSS optimum against random perturbations") {
    const TimeSeries series = testutil::ar2_fixture(1024, 31);
    const ArModel model = fit_least_squares(series, 2);
    const double best = ar_fit_rss(series, model.coefficients, PredictionMode::OneStepAhead);

    Rng rng(99);
    for (int trial = 0; trial < 1000; ++trial) {
        const double scale = std::pow(10.0, rng.uniform(-6.0, 0.0));
        std::vector<double> candidate = model.coefficients;
        for (auto& c : candidate) c += scale * rng.uniform(-1.0, 1.0);
        const double rss = ar_fit_rss(series, candidate, PredictionMode::OneStepAhead);
        CHECK(best <= rss + 1e-9 * best);
    }
}

TEST_CASE("forward-backward is invariant under time reversal") {
    const TimeSeries series = testutil::ar2_fixture(512, 17);
    std::vector<double> reversed(series.values().rbegin(), series.values().rend());
    const ArModel forward = fit_forward_backward(series, 2);
    const ArModel backward = fit_forward_backward(validate_series(reversed), 2);
    CHECK(forward.coefficients[0] == Catch::Approx(backward.coefficients[0]).margin(1e-10));
    CHECK(forward.coefficients[1] == Catch::Approx(backward.coefficients[1]).margin(1e-10));
}

TEST_CASE("forward-backward recovers the AR(2) coefficients") {
    const auto estimate = median_ar2_estimate(EstimatorKind::ForwardBackward, 4096);
    CHECK(estimate[0] == Catch::Approx(0.6).margin(0.05));
    CHECK(estimate[1] == Catch::Approx(-0.3).margin(0.05));
}

TEST_CASE("forward-backward equals the stacked normal-equation oracle") {
    const TimeSeries series = validate_series(kNoiselessAr1);
    long double mean = 0.0L;
    for (double v : kNoiselessAr1) mean += v;
    mean /= static_cast<long double>(kNoiselessAr1.size());

    long double sxy = 0.0L, sxx = 0.0L;
    const std::size_t n = kNoiselessAr1.size();
    for (std::size_t t = 1; t < n; ++t) {  // forward rows
        const long double zt = kNoiselessAr1[t] - mean;
        const long double zp = kNoiselessAr1[t - 1] - mean;
        sxy += zt * zp;
        sxx += zp * zp;
    }
    for (std::size_t u = 0; u + 1 < n; ++u) {  // time-reversed rows
        const long double zu = kNoiselessAr1[u] - mean;
        const long double zn = kNoiselessAr1[u + 1] - mean;
        sxy += zu * zn;
        sxx += zn * zn;
    }
    const double oracle = static_cast<double>(sxy / sxx);
    const ArModel model = fit_forward_backward(series, 1);
    CHECK(model.coefficients[0] == Catch::Approx(oracle).margin(1e-6));
}

TEST_CASE("geometric lattice reflection coefficients are bounded by one") {
    // the stage-m reflection coefficient is the last coefficient of the
    // order-m fit
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const TimeSeries series = testutil::ar2_fixture(128, 100 + seed);
        for (std::size_t order = 1; order <= 5; ++order) {
            const ArModel model = fit_geometric_lattice(series, order);
            CHECK(std::abs(model.coefficients.back()) <= 1.0);
        }
    }
}

TEST_CASE("geometric lattice stage one equals the lag-1 normalized correlation") {
    // hand algebra on a zero-mean 5-sample series: kappa_1 = -17 / sqrt(26 * 30)
    const TimeSeries series = validate_series({2.0, -1.0, 3.0, -4.0, 0.0});
    const ArModel model = fit_geometric_lattice(series, 1);
    CHECK(model.coefficients[0] == Catch::Approx(-17.0 / std::sqrt(26.0 * 30.0)).margin(1e-12));
}

TEST_CASE("geometric lattice recovers the AR(2) coefficients") {
    const auto estimate = median_ar2_estimate(EstimatorKind::GeometricLattice, 4096);
    CHECK(estimate[0] == Catch::Approx(0.6).margin(0.05));
    CHECK(estimate[1] == Catch::Approx(-0.3).margin(0.05));
}

TEST_CASE("geometric lattice pads with zeros once the error energy is exhausted") {
    // the alternating series is predicted exactly at stage one
    const TimeSeries series = validate_series({1.0, -1.0, 1.0, -1.0, 1.0, -1.0});
    const ArModel model = fit_geometric_lattice(series, 3);
    CHECK(model.coefficients == std::vector<double>{-1.0, 0.0, 0.0});
    CHECK(model.innovation_variance == 0.0);
}

TEST_CASE("geometric lattice rejects constant series") {
    CHECK_THROWS_AS(fit_geometric_lattice(validate_series(std::vector<double>(16, -2.0)), 2),
                    ConstantSeries);
}

TEST_CASE("all four estimators agree on a long well-conditioned realization") {
    const TimeSeries series = testutil::ar2_fixture(16384, 71);
    const ArModel ls = fit_least_squares(series, 2);
    for (EstimatorKind kind : {EstimatorKind::ForwardBackward, EstimatorKind::YuleWalker,
                               EstimatorKind::GeometricLattice}) {
        const ArModel other = fit_ar(series, 2, kind);
        CHECK(other.coefficients[0] == Catch::Approx(ls.coefficients[0]).margin(0.02));
        CHECK(other.coefficients[1] == Catch::Approx(ls.coefficients[1]).margin(0.02));
    }
}

TEST_CASE("estimators are scale equivariant") {
    const TimeSeries series = testutil::ar2_fixture(512, 23);
    const double factor = 3.5;
    std::vector<double> scaled(series.values());
    for (auto& v : scaled) v *= factor;
    const TimeSeries scaled_series = validate_series(scaled);

    for (EstimatorKind kind : {EstimatorKind::LeastSquares, EstimatorKind::ForwardBackward,
                               EstimatorKind::YuleWalker, EstimatorKind::GeometricLattice}) {
        const ArModel base = fit_ar(series, 2, kind);
        const ArModel rescaled = fit_ar(scaled_series, 2, kind);
        for (std::size_t i = 0; i < 2; ++i)
            CHECK(rescaled.coefficients[i]
                  == Catch::Approx(base.coefficients[i]).epsilon(1e-9).margin(1e-12));
        CHECK(rescaled.innovation_variance
              == Catch::Approx(base.innovation_variance * factor * factor).epsilon(1e-9));
    }
}

TEST_CASE("fits demand enough samples") {
    const TimeSeries tiny = validate_series({1.0, 2.0, 3.0, 4.0});
    CHECK_THROWS_AS(fit_least_squares(tiny, 2), SeriesTooShort);
    CHECK_THROWS_AS(fit_forward_backward(tiny, 2), SeriesTooShort);
    CHECK_THROWS_AS(fit_yule_walker(tiny, 3), SeriesTooShort);
    CHECK_THROWS_AS(fit_geometric_lattice(tiny, 3), SeriesTooShort);
}

TEST_CASE("estimator names round-trip") {
    CHECK(parse_estimator("ls") == EstimatorKind::LeastSquares);
    CHECK(parse_estimator("FB") == EstimatorKind::ForwardBackward);
    CHECK(parse_estimator("yw") == EstimatorKind::YuleWalker);
    CHECK(parse_estimator("gl") == EstimatorKind::GeometricLattice);
    CHECK(to_string(EstimatorKind::GeometricLattice) == "GL");
    CHECK_THROWS_AS(parse_estimator("burg"), ConfigError);
}
