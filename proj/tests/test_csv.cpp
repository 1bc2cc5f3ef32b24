#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "windar/csv.hpp"

using namespace windar;

namespace {

std::filesystem::path write_file(const std::filesystem::path& dir, const std::string& name,
                                 const std::string& content) {
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("load_csv reads a bare single column") {
    const auto dir = testutil::scratch_dir("csv_single");
    const auto path = write_file(dir, "plain.csv", "7.5\n8.1\n6.9\n");
    const TimeSeries series = load_csv(path, std::size_t{0});
    CHECK(series.values() == std::vector<double>{7.5, 8.1, 6.9});
}

TEST_CASE("load_csv selects a column by header name") {
    const auto dir = testutil::scratch_dir("csv_named");
    const auto path =
        write_file(dir, "named.csv", "time,mw\n2026-03-01T00:00,7.5\n2026-03-01T00:05,8.1\n");
    const TimeSeries series = load_csv(path, std::string("mw"));
    CHECK(series.values() == std::vector<double>{7.5, 8.1});
    REQUIRE(series.label().has_value());
    CHECK(*series.label() == "mw");
}

TEST_CASE("load_csv detects a header when selecting by index") {
    const auto dir = testutil::scratch_dir("csv_index_header");
    const auto path = write_file(dir, "hdr.csv", "mw\n1.5\n2.5\n");
    const TimeSeries series = load_csv(path, std::size_t{0});
    CHECK(series.values() == std::vector<double>{1.5, 2.5});
}

TEST_CASE("load_csv skips blank lines but keeps file line numbers in errors") {
    const auto dir = testutil::scratch_dir("csv_blank");
    const auto path = write_file(dir, "blank.csv", "1.0\n\n2.0\n");
    CHECK(load_csv(path, std::size_t{0}).size() == 2);

    const auto bad = write_file(dir, "bad.csv", "1.0\n2.0\nabc\n");
    try {
        load_csv(bad, std::size_t{0});
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("load_csv error paths") {
    const auto dir = testutil::scratch_dir("csv_errors");
    CHECK_THROWS_AS(load_csv(dir / "missing.csv", std::size_t{0}), FileNotFound);

    const auto no_col = write_file(dir, "nocol.csv", "a,b\n1,2\n");
    CHECK_THROWS_AS(load_csv(no_col, std::string("c")), ColumnNotFound);
    CHECK_THROWS_AS(load_csv(no_col, std::size_t{5}), ColumnNotFound);

    const auto only_header = write_file(dir, "onlyheader.csv", "mw\n");
    CHECK_THROWS_AS(load_csv(only_header, std::string("mw")), EmptySeries);

    const auto blank = write_file(dir, "blankonly.csv", "\n  \n");
    CHECK_THROWS_AS(load_csv(blank, std::size_t{0}), EmptySeries);

    const auto short_row = write_file(dir, "short.csv", "a,b\n1,2\n3\n");
    CHECK_THROWS_AS(load_csv(short_row, std::string("b")), ParseError);
}

TEST_CASE("series round-trip through CSV is exact") {
    const auto dir = testutil::scratch_dir("csv_roundtrip");
    Rng rng(55);
    std::vector<double> values;
    for (int i = 0; i < 200; ++i) values.push_back(rng.uniform(-1e6, 1e6));
    values.push_back(0.1);
    values.push_back(-1.0 / 3.0);
    values.push_back(1e-300);
    values.push_back(123456789.123456789);

    const auto path = dir / "roundtrip.csv";
    write_series_csv(path, values);
    const TimeSeries series = load_csv(path, std::size_t{0});
    REQUIRE(series.size() == values.size());
    for (std::size_t i = 0; i < values.size(); ++i) CHECK(series[i] == values[i]);
}

TEST_CASE("column selector parsing") {
    CHECK(std::holds_alternative<std::size_t>(parse_column_selector("3")));
    CHECK(std::get<std::size_t>(parse_column_selector("3")) == 3);
    CHECK(std::holds_alternative<std::string>(parse_column_selector("mw")));
    CHECK(std::holds_alternative<std::string>(parse_column_selector("-1")));
}
