// Minimal library walkthrough: simulate an AR(2) series, pick the lag
// order by AIC, then run the five-method comparison and print the table.

#include <iostream>

#include "windar/windar.hpp"

int main() {
    using namespace windar;

    const ArModel truth{{0.6, -0.3}, 12.0, 1.0};
    const TimeSeries series = simulate_ar(truth, 2048, 1.0, /*seed=*/7, /*warmup=*/500);

    const AicCurve curve = select_order(series, 10, EstimatorKind::YuleWalker);
    std::cout << "AIC sweep chose order " << curve.chosen_order << "\n";

    ComparisonConfig config;
    config.pso = default_ar_pso_config(curve.chosen_order);
    config.cfpso_runs = 10;
    const ComparisonReport report = build_comparison(series, curve.chosen_order, config);

    std::cout << format_report_table(report);

    const FitResult fit = [&] {
        PsoConfig pso = default_ar_pso_config(curve.chosen_order);
        pso.rng_seed = 1;
        return fit_ar_cfpso(series, curve.chosen_order, pso);
    }();
    std::cout << "\nswarm fit converged after " << fit.iterations_used << " iterations, "
              << "coefficients [";
    for (std::size_t i = 0; i < fit.model.coefficients.size(); ++i)
        std::cout << (i ? ", " : "") << fit.model.coefficients[i];
    std::cout << "], forecast next 3: ";
    for (double v : forecast(fit.model, series, 3)) std::cout << v << ' ';
    std::cout << "\n";
    return 0;
}
