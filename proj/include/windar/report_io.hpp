#pragma once

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "windar/csv.hpp"
#include "windar/errors.hpp"
#include "windar/metrics.hpp"
#include "windar/model_selection.hpp"

namespace windar {

inline std::string to_string(PredictionMode mode) {
    return mode == PredictionMode::OneStepAhead ? "one-step-ahead" : "free-run";
}

inline PredictionMode parse_prediction_mode(const std::string& name) {
    if (name == "one-step-ahead" || name == "onestep") return PredictionMode::OneStepAhead;
    if (name == "free-run" || name == "freerun") return PredictionMode::FreeRun;
    throw ConfigError("unknown prediction mode: " + name + " (expected onestep or freerun)");
}

namespace detail {

inline nlohmann::ordered_json json_number_or_null(double value) {
    if (std::isfinite(value)) return value;
    return nullptr;
}

}  // namespace detail

// JSON form of the comparison table; field names are a stable contract.
inline nlohmann::ordered_json report_to_json(const ComparisonReport& report) {
    nlohmann::ordered_json j;
    j["order"] = report.order;
    j["mode"] = to_string(report.mode);
    j["evaluation_span"] = report.actual.size();
    j["rows"] = nlohmann::ordered_json::array();
    for (const MetricsRow& row : report.rows) {
        nlohmann::ordered_json r;
        r["method"] = row.method;
        r["mse"] = detail::json_number_or_null(row.mse);
        r["emp_mse_pct"] = row.emp_mse_pct ? nlohmann::ordered_json(*row.emp_mse_pct) : nullptr;
        r["fpe"] = detail::json_number_or_null(row.fpe);
        r["emp_fpe_pct"] = row.emp_fpe_pct ? nlohmann::ordered_json(*row.emp_fpe_pct) : nullptr;
        r["nmse"] = detail::json_number_or_null(row.nmse);
        r["nmse_raw"] = detail::json_number_or_null(row.nmse_raw);
        if (row.runs) r["runs"] = *row.runs;
        if (row.std_mse) r["std_mse"] = *row.std_mse;
        if (row.error) r["error"] = *row.error;
        j["rows"].push_back(std::move(r));
    }
    return j;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FileNotFound(path.string());
    out << text;
}

inline void write_report_json(const std::filesystem::path& path, const ComparisonReport& report) {
    write_text_file(path, report_to_json(report).dump(2) + "\n");
}

// CSV table with the column order Method, MSE, EMP_MSE, FPE, EMP_FPE,
// NMSE; full round-trip precision.
inline void write_report_csv(const std::filesystem::path& path, const ComparisonReport& report) {
    std::ostringstream out;
    out << "method,mse,emp_mse_pct,fpe,emp_fpe_pct,nmse\n";
    for (const MetricsRow& row : report.rows) {
        out << row.method << ',';
        if (!row.error) {
            out << detail::format_double(row.mse) << ',';
            out << (row.emp_mse_pct ? detail::format_double(*row.emp_mse_pct) : "") << ',';
            out << detail::format_double(row.fpe) << ',';
            out << (row.emp_fpe_pct ? detail::format_double(*row.emp_fpe_pct) : "") << ',';
            out << detail::format_double(row.nmse) << '\n';
        } else {
            out << ",,,,\n";
        }
    }
    write_text_file(path, out.str());
}

// Human-readable table rounded to four decimals, like the report tables
// this mirrors.
inline std::string format_report_table(const ComparisonReport& report) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(4);
    out << std::left << std::setw(8) << "Method" << std::right << std::setw(12) << "MSE"
        << std::setw(12) << "EMP_MSE%" << std::setw(12) << "FPE" << std::setw(12) << "EMP_FPE%"
        << std::setw(10) << "NMSE" << '\n';
    for (const MetricsRow& row : report.rows) {
        out << std::left << std::setw(8) << row.method << std::right;
        if (row.error) {
            out << "  failed: " << *row.error << '\n';
            continue;
        }
        out << std::setw(12) << row.mse;
        if (row.emp_mse_pct)
            out << std::setw(12) << *row.emp_mse_pct;
        else
            out << std::setw(12) << "-";
        out << std::setw(12) << row.fpe;
        if (row.emp_fpe_pct)
            out << std::setw(12) << *row.emp_fpe_pct;
        else
            out << std::setw(12) << "-";
        out << std::setw(10) << row.nmse << '\n';
    }
    return out.str();
}

inline void write_aic_csv(const std::filesystem::path& path, const AicCurve& curve) {
    std::ostringstream out;
    out << "order,aic\n";
    for (const AicPoint& point : curve.entries)
        out << point.order << ',' << detail::format_double(point.aic) << '\n';
    write_text_file(path, out.str());
}

inline void write_trace_csv(const std::filesystem::path& path, std::span<const double> trace) {
    std::ostringstream out;
    out << "iteration,rss\n";
    for (std::size_t i = 0; i < trace.size(); ++i)
        out << i << ',' << detail::format_double(trace[i]) << '\n';
    write_text_file(path, out.str());
}

// Evaluation-span samples next to each method's predictions; t is the
// 1-based index into the original series.
inline void write_estimates_csv(const std::filesystem::path& path,
                                const ComparisonReport& report) {
    std::ostringstream out;
    out << "t,actual";
    for (const MetricsRow& row : report.rows)
        if (!row.error) out << ",est_" << row.method;
    out << '\n';
    for (std::size_t i = 0; i < report.actual.size(); ++i) {
        out << report.order + i + 1 << ',' << detail::format_double(report.actual[i]);
        for (std::size_t r = 0; r < report.rows.size(); ++r) {
            if (report.rows[r].error) continue;
            out << ',' << detail::format_double(report.estimated[r][i]);
        }
        out << '\n';
    }
    write_text_file(path, out.str());
}

}  // namespace windar
