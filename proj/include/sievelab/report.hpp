#pragma once
// Report rows and byte-stable CSV/JSON emission. Floating values are
// printed with 12 significant digits; identical rows always produce
// identical bytes.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace sievelab {

struct ReportRow {
    std::string suite;
    std::string instance;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    bool pass = false;
    std::string witness;
};

enum class ReportFormat { csv, json };

ReportFormat parse_report_format(const std::string& name);

// %.12g formatting shared by both emitters.
std::string format_value(double v);

void emit(const std::vector<ReportRow>& rows, ReportFormat format, std::ostream& out);

// Writes to a file; throws std::runtime_error when the path is unwritable.
void emit_file(const std::vector<ReportRow>& rows, ReportFormat format,
               const std::string& path);

// Reads back a CSV report produced by emit (used for round-trip checks).
std::vector<ReportRow> parse_csv(std::istream& in);

}  // namespace sievelab
