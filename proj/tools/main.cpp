// windar - AR model identification for sampled power/sensor series.
//
// Subcommands:
//   simulate      draw a synthetic AR realization into a CSV file
//   select-order  sweep the lag order and score each fit by AIC
//   compare       five-method comparison table (LS, FB, YW, GL, CF-PSO)
//   forecast      extend a series by free-running a fitted model
//
// Exit codes: 0 success, 1 configuration error, 2 data error, 3 numerical
// failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "windar/windar.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::vector<double> parse_double_list(const std::string& text, const std::string& what) {
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        if (comma == std::string::npos) comma = text.size();
        const std::string field = text.substr(start, comma - start);
        double value = 0.0;
        const char* first = field.data();
        const char* last = field.data() + field.size();
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last)
            throw windar::InvalidModelSpec(what + ": cannot parse '" + field + "' as a number");
        values.push_back(value);
        start = comma + 1;
    }
    return values;
}

windar::VelocityRule parse_velocity_rule(const std::string& name) {
    if (name == "cf" || name == "constriction") return windar::VelocityRule::ConstrictionFactor;
    if (name == "inertia" || name == "iw") return windar::VelocityRule::InertiaWeight;
    throw windar::ConfigError("unknown velocity rule: " + name + " (expected cf or inertia)");
}

std::string velocity_rule_name(windar::VelocityRule rule) {
    return rule == windar::VelocityRule::ConstrictionFactor ? "cf" : "inertia";
}

// ---------------------------------------------------------------- simulate

struct SimulateOptions {
    std::string coefficients;
    double intercept = 0.0;
    double noise_std = 1.0;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::size_t warmup = 0;
    std::string initial;
    std::string output = "simulated.csv";
};

int run_simulate(const SimulateOptions& opt) {
    std::vector<double> coefficients;
    if (!opt.coefficients.empty())
        coefficients = parse_double_list(opt.coefficients, "--coefficients");
    std::vector<double> initial;
    if (!opt.initial.empty()) initial = parse_double_list(opt.initial, "--initial");

    const windar::ArModel model{coefficients, opt.intercept, opt.noise_std * opt.noise_std};
    const windar::TimeSeries series =
        windar::simulate_ar(model, opt.n, opt.noise_std, opt.seed, opt.warmup, initial);
    windar::write_series_csv(opt.output, series.values());
    std::cout << "wrote " << series.size() << " samples to " << opt.output << "\n";
    return 0;
}

// ------------------------------------------------------------ select-order

struct SelectOrderOptions {
    std::string input;
    std::string column = "0";
    std::size_t max_order = 10;
    std::string estimator = "yw";
    std::string output_dir = ".";
};

int run_select_order(const SelectOrderOptions& opt) {
    if (opt.max_order < 1) throw windar::ConfigError("--max-order must be at least 1");
    const windar::TimeSeries series =
        windar::load_csv(opt.input, windar::parse_column_selector(opt.column));
    fs::create_directories(opt.output_dir);

    std::vector<windar::EstimatorKind> kinds;
    if (opt.estimator == "all") {
        kinds = {windar::EstimatorKind::LeastSquares, windar::EstimatorKind::ForwardBackward,
                 windar::EstimatorKind::YuleWalker, windar::EstimatorKind::GeometricLattice};
    } else {
        kinds = {windar::parse_estimator(opt.estimator)};
    }

    for (windar::EstimatorKind kind : kinds) {
        const windar::AicCurve curve = windar::select_order(series, opt.max_order, kind);
        const std::string name = kinds.size() == 1
                                     ? std::string("aic_curve.csv")
                                     : "aic_curve_" + windar::to_string(kind) + ".csv";
        windar::write_aic_csv(fs::path(opt.output_dir) / name, curve);
        std::cout << windar::to_string(kind) << ": chosen order " << curve.chosen_order
                  << " (order-0 reference AIC " << curve.order0_reference << ")\n";
    }
    return 0;
}

// ----------------------------------------------------------------- compare

struct CompareOptions {
    std::string input;
    std::string column = "0";
    std::string order = "auto";
    std::size_t max_order = 10;
    std::string aic_estimator = "yw";
    std::string mode = "onestep";
    std::size_t swarm_size = 30;
    double c1 = 2.05;
    double c2 = 2.05;
    std::string velocity_rule = "cf";
    double inertia_weight = 0.7298;
    std::size_t max_iterations = 100;
    double epsilon = 1e-3;
    std::size_t stall_window = 20;
    std::vector<double> bounds{-2.0, 2.0};
    std::size_t runs = 30;
    std::uint64_t seed = 0;
    bool ls_seeding = false;
    std::string output_dir = ".";
    std::vector<std::string> formats{"json", "csv"};
};

// Fields absent from the file keep their current values; flags the user
// passed explicitly are not touched (the caller re-applies them).
void overlay_config_file(CompareOptions& opt, const std::string& path,
                         const CLI::App* cmd) {
    std::ifstream in(path);
    if (!in) throw windar::FileNotFound(path);
    ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw windar::ConfigError("cannot parse config file " + path + ": " + e.what());
    }

    const auto passed = [&](const std::string& flag) {
        const CLI::Option* option = cmd->get_option_no_throw(flag);
        return option != nullptr && option->count() > 0;
    };
    const auto load = [&](const char* key, const std::string& flag, auto& field) {
        if (j.contains(key) && !passed(flag)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };

    load("input", "--input", opt.input);
    load("column", "--column", opt.column);
    if (j.contains("order") && !passed("--order")) {
        if (j.at("order").is_number_integer())
            opt.order = std::to_string(j.at("order").get<long long>());
        else
            opt.order = j.at("order").get<std::string>();
    }
    load("max_order", "--max-order", opt.max_order);
    load("aic_estimator", "--aic-estimator", opt.aic_estimator);
    load("mode", "--mode", opt.mode);
    load("swarm_size", "--swarm-size", opt.swarm_size);
    load("c1", "--c1", opt.c1);
    load("c2", "--c2", opt.c2);
    load("velocity_rule", "--velocity-rule", opt.velocity_rule);
    load("inertia_weight", "--inertia-weight", opt.inertia_weight);
    load("max_iterations", "--max-iterations", opt.max_iterations);
    load("epsilon", "--epsilon", opt.epsilon);
    load("stall_window", "--stall-window", opt.stall_window);
    load("bounds", "--bounds", opt.bounds);
    load("runs", "--runs", opt.runs);
    load("seed", "--seed", opt.seed);
    load("ls_seeding", "--ls-seeding", opt.ls_seeding);
    load("output_dir", "--output-dir", opt.output_dir);
    load("formats", "--formats", opt.formats);
}

windar::PsoConfig pso_config_from(const CompareOptions& opt, std::size_t order) {
    if (opt.bounds.size() != 2)
        throw windar::ConfigError("--bounds expects exactly two values: LO HI");
    windar::PsoConfig pso;
    pso.dimension = order;
    pso.swarm_size = opt.swarm_size;
    pso.c1 = opt.c1;
    pso.c2 = opt.c2;
    pso.velocity_rule = parse_velocity_rule(opt.velocity_rule);
    pso.inertia_weight = opt.inertia_weight;
    pso.max_iterations = opt.max_iterations;
    pso.stall_tolerance = opt.epsilon;
    pso.stall_window = opt.stall_window;
    pso.lower_bounds.assign(order, opt.bounds[0]);
    pso.upper_bounds.assign(order, opt.bounds[1]);
    pso.rng_seed = opt.seed;
    return pso;
}

std::size_t resolve_order(const std::string& order_text, const windar::TimeSeries& series,
                          std::size_t max_order, const std::string& estimator,
                          std::optional<windar::AicCurve>& curve_out) {
    if (order_text == "auto") {
        const windar::AicCurve curve =
            windar::select_order(series, max_order, windar::parse_estimator(estimator));
        curve_out = curve;
        return curve.chosen_order;
    }
    std::size_t order = 0;
    const auto [ptr, ec] =
        std::from_chars(order_text.data(), order_text.data() + order_text.size(), order);
    if (ec != std::errc() || ptr != order_text.data() + order_text.size() || order < 1)
        throw windar::ConfigError("--order must be a positive integer or 'auto'");
    return order;
}

int run_compare(const CompareOptions& opt) {
    const auto started = std::chrono::steady_clock::now();
    if (opt.input.empty()) throw windar::ConfigError("--input is required");

    const windar::TimeSeries series =
        windar::load_csv(opt.input, windar::parse_column_selector(opt.column));

    std::optional<windar::AicCurve> aic_curve;
    const std::size_t order =
        resolve_order(opt.order, series, opt.max_order, opt.aic_estimator, aic_curve);

    windar::ComparisonConfig config;
    config.mode = windar::parse_prediction_mode(opt.mode);
    config.cfpso_runs = opt.runs;
    config.ls_seeding = opt.ls_seeding;
    config.pso = pso_config_from(opt, order);

    const windar::ComparisonReport report = windar::build_comparison(series, order, config);

    fs::create_directories(opt.output_dir);
    const fs::path dir(opt.output_dir);
    bool wrote_json = false, wrote_csv = false;
    for (const std::string& format : opt.formats) {
        if (format == "json" && !wrote_json) {
            windar::write_report_json(dir / "report.json", report);
            wrote_json = true;
        } else if (format == "csv" && !wrote_csv) {
            windar::write_report_csv(dir / "report.csv", report);
            wrote_csv = true;
        } else if (format != "json" && format != "csv") {
            throw windar::ConfigError("unknown report format: " + format);
        }
    }
    if (aic_curve) windar::write_aic_csv(dir / "aic_curve.csv", *aic_curve);
    if (!report.cfpso_best_trace.empty())
        windar::write_trace_csv(dir / "convergence_trace.csv", report.cfpso_best_trace);
    windar::write_estimates_csv(dir / "estimated_vs_actual.csv", report);

    ordered_json manifest;
    manifest["command"] = "compare";
    manifest["version"] = windar::version;
    manifest["input"] = opt.input;
    manifest["column"] = opt.column;
    manifest["order"] = opt.order;
    manifest["max_order"] = opt.max_order;
    manifest["aic_estimator"] = opt.aic_estimator;
    manifest["mode"] = opt.mode;
    manifest["swarm_size"] = opt.swarm_size;
    manifest["c1"] = opt.c1;
    manifest["c2"] = opt.c2;
    manifest["velocity_rule"] = opt.velocity_rule;
    manifest["inertia_weight"] = opt.inertia_weight;
    manifest["max_iterations"] = opt.max_iterations;
    manifest["epsilon"] = opt.epsilon;
    manifest["stall_window"] = opt.stall_window;
    manifest["bounds"] = opt.bounds;
    manifest["runs"] = opt.runs;
    manifest["seed"] = opt.seed;
    manifest["ls_seeding"] = opt.ls_seeding;
    manifest["output_dir"] = opt.output_dir;
    manifest["formats"] = opt.formats;
    ordered_json resolved;
    resolved["order"] = order;
    resolved["chosen_by_aic"] = aic_curve.has_value();
    ordered_json run_seeds = ordered_json::array();
    for (std::size_t run = 0; run < opt.runs; ++run) run_seeds.push_back(opt.seed + run);
    resolved["run_seeds"] = run_seeds;
    resolved["cfpso_best_run"] = report.cfpso_best_run;
    manifest["resolved"] = resolved;
    manifest["wall_clock_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    windar::write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");

    std::cout << "order " << order << (aic_curve ? " (chosen by AIC)" : "") << ", mode "
              << windar::to_string(config.mode) << ", evaluation span " << report.actual.size()
              << "\n\n";
    std::cout << windar::format_report_table(report);
    std::cout << "\nartifacts in " << fs::absolute(dir).string() << "\n";
    return 0;
}

// ---------------------------------------------------------------- forecast

struct ForecastOptions {
    std::string input;
    std::string column = "0";
    std::string method = "cfpso";
    std::string order = "auto";
    std::size_t max_order = 10;
    std::string aic_estimator = "yw";
    std::size_t horizon = 0;
    std::uint64_t seed = 0;
    std::string output = "forecast.csv";
};

int run_forecast(const ForecastOptions& opt) {
    if (opt.horizon < 1) throw windar::ConfigError("--horizon must be at least 1");
    const windar::TimeSeries series =
        windar::load_csv(opt.input, windar::parse_column_selector(opt.column));

    std::optional<windar::AicCurve> curve;
    const std::size_t order =
        resolve_order(opt.order, series, opt.max_order, opt.aic_estimator, curve);

    windar::ArModel model;
    if (opt.method == "cfpso") {
        windar::PsoConfig pso = windar::default_ar_pso_config(order);
        pso.rng_seed = opt.seed;
        model = windar::fit_ar_cfpso(series, order, pso).model;
    } else {
        model = windar::fit_ar(series, order, windar::parse_estimator(opt.method));
    }

    const std::vector<double> values = windar::forecast(model, series, opt.horizon);
    windar::write_series_csv(opt.output, values);

    std::cout << "method " << opt.method << ", order " << order << ", coefficients [";
    for (std::size_t i = 0; i < model.coefficients.size(); ++i)
        std::cout << (i ? ", " : "") << model.coefficients[i];
    std::cout << "], intercept " << model.intercept << "\n";
    std::cout << "wrote " << values.size() << " forecast steps to " << opt.output << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"AR model identification with a constriction-factor particle swarm"};
    app.set_version_flag("--version", windar::version);
    app.require_subcommand(1);

    SimulateOptions sim;
    CLI::App* simulate = app.add_subcommand("simulate", "draw a synthetic AR realization");
    simulate->add_option("--coefficients", sim.coefficients,
                         "comma-separated lag coefficients, e.g. '0.6,-0.3'");
    simulate->add_option("--intercept", sim.intercept, "constant term");
    simulate->add_option("--noise-std", sim.noise_std, "innovation standard deviation");
    simulate->add_option("--n", sim.n, "number of samples")->required();
    simulate->add_option("--seed", sim.seed, "random seed");
    simulate->add_option("--warmup", sim.warmup, "samples to discard before recording");
    simulate->add_option("--initial", sim.initial, "comma-separated initial history");
    simulate->add_option("--output", sim.output, "output CSV path");

    SelectOrderOptions sel;
    CLI::App* select = app.add_subcommand("select-order", "AIC sweep over lag orders");
    select->add_option("--input", sel.input, "input CSV path")->required();
    select->add_option("--column", sel.column, "column index (0-based) or header name");
    select->add_option("--max-order", sel.max_order, "largest candidate order");
    select->add_option("--estimator", sel.estimator, "ls, fb, yw, gl or all");
    select->add_option("--output-dir", sel.output_dir, "directory for aic_curve csv files");

    CompareOptions cmp;
    std::string config_path;
    CLI::App* compare = app.add_subcommand("compare", "five-method comparison table");
    compare->add_option("--config", config_path, "JSON config/manifest to start from");
    compare->add_option("--input", cmp.input, "input CSV path");
    compare->add_option("--column", cmp.column, "column index (0-based) or header name");
    compare->add_option("--order", cmp.order, "lag order or 'auto'");
    compare->add_option("--max-order", cmp.max_order, "largest candidate order for 'auto'");
    compare->add_option("--aic-estimator", cmp.aic_estimator, "estimator for the AIC sweep");
    compare->add_option("--mode", cmp.mode, "onestep or freerun");
    compare->add_option("--swarm-size", cmp.swarm_size, "particles per swarm");
    compare->add_option("--c1", cmp.c1, "cognitive coefficient");
    compare->add_option("--c2", cmp.c2, "social coefficient");
    compare->add_option("--velocity-rule", cmp.velocity_rule, "cf or inertia");
    compare->add_option("--inertia-weight", cmp.inertia_weight, "w for the inertia rule");
    compare->add_option("--max-iterations", cmp.max_iterations, "iteration cap per run");
    compare->add_option("--epsilon", cmp.epsilon, "relative-improvement stall tolerance");
    compare->add_option("--stall-window", cmp.stall_window, "consecutive stalled iterations");
    compare->add_option("--bounds", cmp.bounds, "search box LO HI per coefficient")
        ->expected(2);
    compare->add_option("--runs", cmp.runs, "independent CF-PSO restarts");
    compare->add_option("--seed", cmp.seed, "base random seed (run r uses seed + r)");
    compare->add_flag("--ls-seeding", cmp.ls_seeding, "inject the LS solution as a particle");
    compare->add_option("--output-dir", cmp.output_dir, "directory for artifacts");
    compare->add_option("--formats", cmp.formats, "report formats: json csv")->expected(1, 2);

    ForecastOptions fc;
    CLI::App* forecast_cmd = app.add_subcommand("forecast", "free-run future predictions");
    forecast_cmd->add_option("--input", fc.input, "input CSV path")->required();
    forecast_cmd->add_option("--column", fc.column, "column index (0-based) or header name");
    forecast_cmd->add_option("--method", fc.method, "ls, fb, yw, gl or cfpso");
    forecast_cmd->add_option("--order", fc.order, "lag order or 'auto'");
    forecast_cmd->add_option("--max-order", fc.max_order, "largest candidate order for 'auto'");
    forecast_cmd->add_option("--aic-estimator", fc.aic_estimator, "estimator for the AIC sweep");
    forecast_cmd->add_option("--horizon", fc.horizon, "steps to forecast")->required();
    forecast_cmd->add_option("--seed", fc.seed, "random seed for cfpso");
    forecast_cmd->add_option("--output", fc.output, "output CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (simulate->parsed()) return run_simulate(sim);
        if (select->parsed()) return run_select_order(sel);
        if (compare->parsed()) {
            if (!config_path.empty()) overlay_config_file(cmp, config_path, compare);
            return run_compare(cmp);
        }
        if (forecast_cmd->parsed()) return run_forecast(fc);
    } catch (const windar::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 1;
    } catch (const windar::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const windar::NumericError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
