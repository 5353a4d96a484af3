#include <sstream>

#include "doctest.h"
#include "sievelab/report.hpp"
#include "sievelab/rng.hpp"

using namespace sievelab;

TEST_SUITE_BEGIN("report");

TEST_CASE("single row emission") {
    const std::vector<ReportRow> rows = {
        {"density", "cube_ratio", 18.9231, 2.0, 1.6436, false, "Q=100000"}};
    std::ostringstream out;
    emit(rows, ReportFormat::csv, out);
    CHECK(out.str() ==
          "suite,instance,lhs,rhs,ratio,pass,witness\n"
          "density,cube_ratio,18.9231,2,1.6436,false,Q=100000\n");
}

TEST_CASE("emission is deterministic") {
    std::vector<ReportRow> rows;
    Rng rng(1);
    for (int i = 0; i < 50; ++i)
        rows.push_back({"suite", "inst" + std::to_string(i), rng.uniform(),
                        rng.uniform() * 1e9, rng.uniform(), rng.chance(0.5),
                        "w" + std::to_string(i)});
    std::ostringstream first, second;
    emit(rows, ReportFormat::csv, first);
    emit(rows, ReportFormat::csv, second);
    CHECK(first.str() == second.str());
    std::ostringstream j1, j2;
    emit(rows, ReportFormat::json, j1);
    emit(rows, ReportFormat::json, j2);
    CHECK(j1.str() == j2.str());
}

TEST_CASE("csv round-trip is a fixed point") {
    std::vector<ReportRow> rows;
    Rng rng(2);
    for (int i = 0; i < 10000; ++i)
        rows.push_back({"s" + std::to_string(i % 7), "i" + std::to_string(i),
                        rng.uniform(-1e6, 1e6), rng.uniform(0.0, 1e12),
                        rng.uniform(), rng.chance(0.5), ""});
    std::ostringstream first;
    emit(rows, ReportFormat::csv, first);
    std::istringstream in(first.str());
    const std::vector<ReportRow> parsed = parse_csv(in);
    REQUIRE(parsed.size() == rows.size());
    std::ostringstream second;
    emit(parsed, ReportFormat::csv, second);
    CHECK(first.str() == second.str());
}

TEST_CASE("witness commas are sanitized so the row stays parseable") {
    const std::vector<ReportRow> rows = {
        {"s", "i", 1.0, 2.0, 0.5, true, "a,b\nc"}};
    std::ostringstream out;
    emit(rows, ReportFormat::csv, out);
    std::istringstream in(out.str());
    const auto parsed = parse_csv(in);
    REQUIRE(parsed.size() == 1);
    CHECK(parsed[0].witness == "a;b;c");
}

TEST_CASE("json emission has one object per row") {
    const std::vector<ReportRow> rows = {{"s", "i", 1.5, 2.0, 0.75, true, "w"}};
    std::ostringstream out;
    emit(rows, ReportFormat::json, out);
    const std::string text = out.str();
    CHECK(text.find("\"suite\": \"s\"") != std::string::npos);
    CHECK(text.find("\"lhs\": 1.5") != std::string::npos);
    CHECK(text.find("\"pass\": true") != std::string::npos);
    CHECK(text.front() == '[');
}

TEST_CASE("format parsing and unwritable paths") {
    CHECK(parse_report_format("csv") == ReportFormat::csv);
    CHECK(parse_report_format("json") == ReportFormat::json);
    CHECK_THROWS_AS(parse_report_format("xml"), std::invalid_argument);
    CHECK_THROWS_AS(emit_file({}, ReportFormat::csv, "/nonexistent-dir/report.csv"),
                    std::runtime_error);
}

TEST_SUITE_END();
