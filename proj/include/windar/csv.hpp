#pragma once

#include <charconv>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <string_view>
#include <system_error>
#include <variant>
#include <vector>

#include "windar/errors.hpp"
#include "windar/time_series.hpp"

namespace windar {

// Either a 0-based column index or a header name.
using ColumnSelector = std::variant<std::size_t, std::string>;

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(trim(line.substr(start)));
            break;
        }
        fields.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return fields;
}

// Locale-independent full-field parse; "1.5x" or "" fail.
inline bool parse_double(std::string_view field, double& out) {
    if (field.empty()) return false;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

// Shortest decimal form that parses back to the identical double.
inline std::string format_double(double value) {
    char buffer[32];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, ptr);
}

}  // namespace detail

// Reads one real value per row from the chosen column. A header row is
// auto-detected (first non-blank row whose chosen column is non-numeric);
// blank lines are skipped. Line numbers in errors refer to file lines.
inline TimeSeries load_csv(const std::filesystem::path& path, const ColumnSelector& column) {
    std::ifstream in(path);
    if (!in) throw FileNotFound(path.string());

    std::vector<double> values;
    std::optional<std::string> label;
    std::optional<std::size_t> column_index;
    std::string line;
    std::size_t line_number = 0;

    while (std::getline(in, line)) {
        ++line_number;
        if (detail::trim(line).empty()) continue;
        const auto fields = detail::split_fields(line);

        if (!column_index) {
            // first non-blank row: resolve the column and detect a header
            if (const auto* name = std::get_if<std::string>(&column)) {
                for (std::size_t i = 0; i < fields.size(); ++i) {
                    if (fields[i] == *name) {
                        column_index = i;
                        label = *name;
                        break;
                    }
                }
                if (!column_index) throw ColumnNotFound(*name);
                continue;  // header row consumed
            }
            const std::size_t index = std::get<std::size_t>(column);
            if (index >= fields.size()) throw ColumnNotFound("index " + std::to_string(index));
            column_index = index;
            double value = 0.0;
            if (detail::parse_double(fields[index], value)) {
                values.push_back(value);
            } else {
                label = std::string(fields[index]);  // header row
            }
            continue;
        }

        if (*column_index >= fields.size())
            throw ParseError(line_number, "row has only " + std::to_string(fields.size())
                                              + " columns");
        double value = 0.0;
        if (!detail::parse_double(fields[*column_index], value))
            throw ParseError(line_number, "not a number: '" + std::string(fields[*column_index])
                                              + "'");
        values.push_back(value);
    }

    if (values.empty()) throw EmptySeries();
    return TimeSeries(std::move(values), {}, label);
}

// Parses a CLI column argument: an unsigned integer is a 0-based index,
// anything else a header name.
inline ColumnSelector parse_column_selector(const std::string& text) {
    std::size_t index = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), index);
    if (ec == std::errc() && ptr == text.data() + text.size()) return index;
    return text;
}

// Single-column CSV, one value per line, round-trip exact.
inline void write_series_csv(const std::filesystem::path& path, std::span<const double> values) {
    std::ofstream out(path);
    if (!out) throw FileNotFound(path.string());
    for (double v : values) out << detail::format_double(v) << '\n';
}

}  // namespace windar
