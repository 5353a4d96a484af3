#include "sievelab/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sievelab {

ReportFormat parse_report_format(const std::string& name) {
    if (name == "csv") return ReportFormat::csv;
    if (name == "json") return ReportFormat::json;
    throw std::invalid_argument("unknown report format: " + name);
}

std::string format_value(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.12g", v);
    return buffer;
}

// Commas would break the CSV field split; witness payloads swap them out.
static std::string sanitize_field(const std::string& s) {
    std::string out = s;
    for (char& c : out)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return out;
}

static void emit_csv(const std::vector<ReportRow>& rows, std::ostream& out) {
    out << "suite,instance,lhs,rhs,ratio,pass,witness\n";
    for (const ReportRow& row : rows) {
        out << sanitize_field(row.suite) << ',' << sanitize_field(row.instance) << ','
            << format_value(row.lhs) << ',' << format_value(row.rhs) << ','
            << format_value(row.ratio) << ',' << (row.pass ? "true" : "false") << ','
            << sanitize_field(row.witness) << '\n';
    }
}

static std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

static void emit_json(const std::vector<ReportRow>& rows, std::ostream& out) {
    out << "[\n";
    for (size_t i = 0; i < rows.size(); ++i) {
        const ReportRow& row = rows[i];
        out << "  {\"suite\": \"" << json_escape(row.suite) << "\", "
            << "\"instance\": \"" << json_escape(row.instance) << "\", "
            << "\"lhs\": " << format_value(row.lhs) << ", "
            << "\"rhs\": " << format_value(row.rhs) << ", "
            << "\"ratio\": " << format_value(row.ratio) << ", "
            << "\"pass\": " << (row.pass ? "true" : "false") << ", "
            << "\"witness\": \"" << json_escape(row.witness) << "\"}"
            << (i + 1 < rows.size() ? "," : "") << "\n";
    }
    out << "]\n";
}

void emit(const std::vector<ReportRow>& rows, ReportFormat format, std::ostream& out) {
    if (format == ReportFormat::csv)
        emit_csv(rows, out);
    else
        emit_json(rows, out);
}

void emit_file(const std::vector<ReportRow>& rows, ReportFormat format,
               const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open report path: " + path);
    emit(rows, format, out);
    out.flush();
    if (!out) throw std::runtime_error("failed writing report: " + path);
}

std::vector<ReportRow> parse_csv(std::istream& in) {
    std::vector<ReportRow> rows;
    std::string line;
    if (!std::getline(in, line)) return rows;  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        size_t start = 0;
        for (int i = 0; i < 6; ++i) {
            const size_t comma = line.find(',', start);
            if (comma == std::string::npos)
                throw std::runtime_error("malformed report row: " + line);
            fields.push_back(line.substr(start, comma - start));
            start = comma + 1;
        }
        fields.push_back(line.substr(start));  // witness holds the remainder
        ReportRow row;
        row.suite = fields[0];
        row.instance = fields[1];
        row.lhs = std::stod(fields[2]);
        row.rhs = std::stod(fields[3]);
        row.ratio = std::stod(fields[4]);
        row.pass = fields[5] == "true";
        row.witness = fields[6];
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace sievelab
